#include <fstream>

#include "dietbot/errors.hpp"
#include "dietbot/eval.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

json ranges_of(const ParsedQuery& q) {
  if (!q.time) return nullptr;
  json ranges = json::array({json::array({q.time->first.start().iso(), q.time->first.end().iso()})});
  if (q.time->second) {
    ranges.push_back(json::array({q.time->second->start().iso(), q.time->second->end().iso()}));
  }
  return ranges;
}

json metrics_of(const ParsedQuery& q) {
  json out = json::array();
  for (Metric m : q.metrics) out.push_back(metric_id(m));
  return out;
}

json kinds_of(const ParsedQuery& q) {
  json out = json::array();
  for (InsightKind k : q.insight_kinds) out.push_back(insight_kind_id(k));
  return out;
}

}  // namespace

Corpus corpus_from_json(const json& j) {
  Corpus c;
  try {
    if (j.contains("diary_start")) {
      c.diary_start = Date::parse_iso(j["diary_start"].get<std::string>());
      if (!c.diary_start) throw ParseError("corpus: malformed diary_start");
    }
    const json& items = j.at("items");
    for (std::size_t i = 0; i < items.size(); ++i) {
      const json& item = items[i];
      const std::string where = "corpus item " + std::to_string(i);
      CorpusItem out;
      out.text = item.at("text").get<std::string>();
      auto ref = Date::parse_iso(item.at("reference_date").get<std::string>());
      if (!ref) throw ParseError(where + ": malformed reference_date");
      out.reference_date = *ref;
      try {
        out.expected = query_from_json(item.at("expected"));
        out.kinds_given = item.at("expected").contains("insight_kinds");
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
      c.items.push_back(std::move(out));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed corpus: ") + e.what());
  }
  if (c.items.empty()) throw ValidationError("corpus is empty");
  return c;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus " + path.string());
  try {
    return corpus_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

CorpusReport run_nlu_corpus(const Corpus& corpus, const NluRules& rules) {
  if (corpus.items.empty()) throw ValidationError("corpus is empty");
  CorpusReport r;
  for (std::size_t i = 0; i < corpus.items.size(); ++i) {
    const CorpusItem& item = corpus.items[i];
    const ParsedQuery got =
        parse_query(Utterance{item.text, item.reference_date, corpus.diary_start}, rules);
    ++r.total;

    const bool kinds_ok = !item.kinds_given || got.insight_kinds == item.expected.insight_kinds;
    if (got.intent.kind == item.expected.intent.kind && kinds_ok) {
      ++r.intent_ok;
    } else if (!kinds_ok) {
      r.failures.push_back({i, item.text, "intent", {intent_id(item.expected.intent.kind), kinds_of(item.expected)},
                            {intent_id(got.intent.kind), kinds_of(got)}});
    } else {
      r.failures.push_back({i, item.text, "intent", intent_id(item.expected.intent.kind),
                            intent_id(got.intent.kind)});
    }
    if (got.metrics == item.expected.metrics) {
      ++r.metrics_ok;
    } else {
      r.failures.push_back({i, item.text, "metrics", metrics_of(item.expected), metrics_of(got)});
    }
    const json want = {{"ranges", ranges_of(item.expected)},
                       {"clarification", item.expected.needs_clarification}};
    const json have = {{"ranges", ranges_of(got)}, {"clarification", got.needs_clarification}};
    if (want == have) {
      ++r.time_ok;
    } else {
      r.failures.push_back({i, item.text, "time", want, have});
    }
  }
  return r;
}

json corpus_report_to_json(const CorpusReport& r) {
  auto pct = [&](std::size_t n) { return r.total ? 100.0 * static_cast<double>(n) / static_cast<double>(r.total) : 0.0; };
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"index", f.index}, {"text", f.text}, {"field", f.field},
                        {"expected", f.expected}, {"got", f.got}});
  }
  return {{"total", r.total},
          {"accuracy", {{"intent", pct(r.intent_ok)}, {"metrics", pct(r.metrics_ok)}, {"time", pct(r.time_ok)}}},
          {"failures", std::move(failures)}};
}

}  // namespace dietbot
