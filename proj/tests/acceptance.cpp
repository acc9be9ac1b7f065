// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include "dietbot/answer_key.hpp"
#include "dietbot/eval.hpp"
#include "golden.hpp"
#include "hygiene.hpp"
#include "oracle.hpp"
#include "trend_check.hpp"

using namespace dietbot;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
  }
  std::printf("%s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
  std::fflush(stdout);
  failures += o.pass ? 0 : 1;
}

std::string join(const std::vector<std::string>& xs, std::size_t limit = 5) {
  std::string out;
  for (std::size_t i = 0; i < xs.size() && i < limit; ++i) out += (i ? "; " : "") + xs[i];
  if (xs.size() > limit) out += "; ...";
  return out;
}

Outcome quiz_ceiling() {
  ChatService svc;
  InProcessTransport t(svc);
  int perfect = 0, points = 0;
  std::vector<std::string> misses;
  constexpr int kSeeds = 20;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const ScoreReport r = run_quiz(t, seed);
    points += r.total;
    if (r.full_marks()) {
      ++perfect;
    } else {
      for (const auto& q : r.questions) {
        if (!q.correct) misses.push_back("seed " + std::to_string(seed) + " " + q.id + ": " + q.diagnostic);
      }
    }
  }
  return {perfect == kSeeds, std::to_string(perfect) + "/" + std::to_string(kSeeds) + " seeds at 10/10, " +
                                 std::to_string(points) + " points" + (misses.empty() ? "" : "; " + join(misses))};
}

Outcome nlu_corpus() {
  const Corpus c = load_corpus(testing::source_path("data/nlu_corpus.json"));
  std::set<std::string> texts;
  for (const auto& item : c.items) texts.insert(item.text);
  std::vector<std::string> missing;
  for (const char* t : {"tell me more about this", "anything else?"}) {
    if (!texts.count(t)) missing.push_back(std::string("missing trigger \"") + t + "\"");
  }
  bool food = false, intake = false;
  for (const auto& item : c.items) {
    if (!item.kinds_given) continue;
    food |= item.expected.insight_kinds.count(InsightKind::food) > 0;
    intake |= item.expected.insight_kinds.count(InsightKind::intake) > 0;
  }
  if (!food) missing.push_back("no food insight query");
  if (!intake) missing.push_back("no intake insight query");
  if (c.items.size() < 60) missing.push_back("fewer than 60 utterances");

  const CorpusReport r = run_nlu_corpus(c);
  std::vector<std::string> failed;
  for (const auto& f : r.failures) failed.push_back("\"" + f.text + "\" " + f.field);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu utterances; intent %zu, metrics %zu, time %zu correct", r.total,
                r.intent_ok, r.metrics_ok, r.time_ok);
  std::string detail = buf;
  if (!missing.empty()) detail += "; " + join(missing);
  if (!failed.empty()) detail += "; " + join(failed);
  return {r.perfect() && missing.empty(), detail};
}

Outcome oracle_equivalence() {
  const auto run = testing::run_oracle(1000, 20210607);
  return {run.mismatches.empty() && run.diaries >= 1000,
          std::to_string(run.diaries) + " diaries, " + std::to_string(run.comparisons) + " comparisons" +
              (run.mismatches.empty() ? "" : "; " + join(run.mismatches))};
}

Outcome determinism() {
  const auto first = testing::golden_outputs();
  const auto second = testing::golden_outputs();
  const auto bad = testing::golden_mismatches(first);
  std::size_t svgs = 0;
  for (const auto& [name, body] : first) svgs += name.ends_with(".svg");
  std::string detail = std::to_string(first.size() - svgs) + " transcripts and " + std::to_string(svgs) +
                       " SVGs; two runs " + (first == second ? "identical" : "differ");
  if (!bad.empty()) detail += "; golden mismatch: " + join(bad);
  return {first == second && bad.empty(), detail};
}

Outcome totality() {
  std::vector<InboundEvent> events;
  for (const char* t : {"hello", "help", "How were my calories this week?", "tell me more about this",
                        "anything else?", "Compare my sugar between week 1 and week 2",
                        "Which food gave me the most fat yesterday?", "what's the weather like?",
                        "How was my fat on February 30?", ""}) {
    events.push_back(InboundEvent::user_text(t));
  }
  for (InsightKind k : kAllInsightKinds) events.push_back(InboundEvent::toggle(k));
  events.push_back(InboundEvent::submit());

  // idle, awaiting with nothing checked, awaiting with a selection
  int pairs = 0;
  std::vector<std::string> bad;
  for (int start = 0; start < 3; ++start) {
    for (const InboundEvent& e : events) {
      ChatService svc;
      const auto id = svc.create_session(DiarySource::from_seed(3)).session_id;
      if (start > 0) svc.handle_event(id, InboundEvent::user_text("tell me more about this"));
      if (start > 1) svc.handle_event(id, InboundEvent::toggle(InsightKind::intake));
      const Mode before = svc.state(id).mode;
      const bool empty = svc.state(id).pending.selected().empty();
      const auto out = svc.handle_event(id, e);
      const Mode after = svc.state(id).mode;
      Mode expected = before;
      if (e.type == InboundEvent::Type::user_text) {
        expected = e.text == "tell me more about this" || e.text == "anything else?" ? Mode::awaiting_button_submit
                                                                                      : Mode::idle;
      } else if (e.type == InboundEvent::Type::button_submit && !(before == Mode::awaiting_button_submit && empty)) {
        expected = Mode::idle;
      }
      ++pairs;
      if (out.empty() || after != expected) {
        bad.push_back(std::string(mode_id(before)) + " x " + event_to_json(e).dump() +
                      (out.empty() ? " gave no message" : " went to " + std::string(mode_id(after))));
      }
    }
  }
  return {bad.empty(), std::to_string(pairs) + " (mode, event) pairs" + (bad.empty() ? "" : "; " + join(bad))};
}

Outcome hygiene() {
  const auto r = testing::check_catalog(TemplateCatalog::bundled());
  std::vector<std::string> problems = r.problems;
  for (const auto& key : testing::expected_assessment_keys()) {
    if (!r.covered.count(key)) problems.push_back("variant " + key.first + "/" + key.second + " not exercised");
  }
  return {problems.empty(), std::to_string(r.realized) + " realizations over " +
                                std::to_string(TemplateCatalog::bundled().all().size()) + " templates" +
                                (problems.empty() ? "" : "; " + join(problems))};
}

Outcome trend_check() {
  const auto run = testing::run_trend_check(500, 17);
  return {run.mismatches.empty(),
          std::to_string(run.series) + " series" + (run.mismatches.empty() ? "" : "; " + join(run.mismatches))};
}

}  // namespace

int main() {
  criterion("quiz_ceiling", 30, quiz_ceiling);
  criterion("nlu_corpus", 5, nlu_corpus);
  criterion("oracle_equivalence", 60, oracle_equivalence);
  criterion("determinism", 0, determinism);
  criterion("state_machine_totality", 0, totality);
  criterion("realization_hygiene", 0, hygiene);
  criterion("trend_check", 0, trend_check);
  return failures;
}
