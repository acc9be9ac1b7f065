#include "dietbot/errors.hpp"
#include "dietbot/nlu.hpp"

namespace dietbot {

using nlohmann::json;

ParsedQuery parse_query(const Utterance& u, const NluRules& rules) {
  ParsedQuery q;
  q.intent = classify_intent(u, rules);
  q.metrics = extract_metrics(u, rules);
  q.insight_kinds = extract_insight_kinds(u, rules);

  TimeParse t = parse_time(u);
  q.time = std::move(t.expression);
  q.needs_clarification = t.needs_clarification;
  q.clarification = std::move(t.diagnostic);

  const bool analytic = q.intent.kind == IntentKind::basic_report ||
                        q.intent.kind == IntentKind::advanced_insight;
  if (analytic && q.time && q.time->is_pair()) q.intent = {IntentKind::compare, 1.0};

  // A comparison against a single period uses the equally long period right before it.
  if (q.intent.kind == IntentKind::compare && q.time && !q.time->is_pair()) {
    const DateRange& r = q.time->first;
    q.time->second = DateRange{r.start().plus_days(-r.day_count()), r.start().plus_days(-1)};
  }
  return q;
}

namespace {

json range_to_json(const DateRange& r) { return json::array({r.start().iso(), r.end().iso()}); }

DateRange range_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("date range must be [start, end]");
  auto s = Date::parse_iso(j[0].get<std::string>());
  auto e = Date::parse_iso(j[1].get<std::string>());
  if (!s || !e) throw ParseError("date range has a malformed date");
  return DateRange{*s, *e};
}

}  // namespace

json query_to_json(const ParsedQuery& q) {
  json metrics = json::array();
  for (Metric m : q.metrics) metrics.push_back(metric_id(m));
  json kinds = json::array();
  for (InsightKind k : q.insight_kinds) kinds.push_back(insight_kind_id(k));
  json time = nullptr;
  if (q.time) {
    json ranges = json::array({range_to_json(q.time->first)});
    if (q.time->second) ranges.push_back(range_to_json(*q.time->second));
    time = {{"raw", q.time->raw}, {"ranges", std::move(ranges)}};
  }
  json j = {{"intent", intent_id(q.intent.kind)},
            {"confidence", q.intent.confidence},
            {"metrics", std::move(metrics)},
            {"insight_kinds", std::move(kinds)},
            {"time", std::move(time)}};
  if (q.needs_clarification) j["clarification"] = q.clarification;
  return j;
}

ParsedQuery query_from_json(const json& j) {
  try {
    ParsedQuery q;
    auto kind = intent_from_id(j.at("intent").get<std::string>());
    if (!kind) throw ParseError("unknown intent " + j.at("intent").dump());
    q.intent = {*kind, j.value("confidence", *kind == IntentKind::out_of_scope ? 0.0 : 1.0)};
    for (const auto& m : j.value("metrics", json::array())) {
      auto metric = metric_from_id(m.get<std::string>());
      if (!metric) throw ParseError("unknown metric " + m.dump());
      q.metrics.insert(*metric);
    }
    for (const auto& k : j.value("insight_kinds", json::array())) {
      auto kind_id = insight_kind_from_id(k.get<std::string>());
      if (!kind_id) throw ParseError("unknown insight kind " + k.dump());
      q.insight_kinds.insert(*kind_id);
    }
    if (auto t = j.find("time"); t != j.end() && !t->is_null()) {
      const json& ranges = t->at("ranges");
      if (ranges.empty() || ranges.size() > 2) throw ParseError("time must hold one or two ranges");
      q.time = TemporalExpression{t->value("raw", ""), range_from_json(ranges[0]), std::nullopt};
      if (ranges.size() == 2) q.time->second = range_from_json(ranges[1]);
    }
    if (auto c = j.find("clarification"); c != j.end()) {
      q.needs_clarification = true;
      q.clarification = c->get<std::string>();
    }
    return q;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed query: ") + e.what());
  }
}

}  // namespace dietbot
