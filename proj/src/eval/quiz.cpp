#include <cmath>
#include <cstdio>

#include "dietbot/errors.hpp"
#include "dietbot/eval.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

std::string metric_word(Metric m) {
  return m == Metric::carbohydrates ? "carbs" : std::string(metric_id(m));
}

json range_json(const DateRange& r) { return json::array({r.start().iso(), r.end().iso()}); }

std::string payload_type(AnswerKind k) {
  switch (k) {
    case AnswerKind::status: return "intake";
    case AnswerKind::top_food:
    case AnswerKind::food_amount: return "food_impact";
    case AnswerKind::verdict: return "comparison";
  }
  return "intake";
}

bool matches(const QuizQuestion& q, const json& item) {
  if (!item.is_object() || item.value("type", "") != payload_type(q.kind)) return false;
  if (item.value("metric", "") != metric_id(q.metric)) return false;
  if (q.kind == AnswerKind::verdict) {
    return item.value("period_a", json()) == range_json(q.period) &&
           item.value("period_b", json()) == range_json(*q.period_b);
  }
  return item.value("period", json()) == range_json(q.period);
}

std::string format_amount(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

int ScoreReport::points(QuizTask task) const {
  int n = 0;
  for (const auto& q : questions) n += (q.task == task && q.correct) ? 1 : 0;
  return n;
}

std::string quiz_utterance(const QuizQuestion& q) {
  const std::string day = q.period.start().month_day();
  switch (q.kind) {
    case AnswerKind::status:
      if (q.task == QuizTask::week_analysis) return "How were my " + metric_word(q.metric) + " in week 1?";
      return "How were my " + metric_word(q.metric) + " on " + day + "?";
    case AnswerKind::top_food:
      return "Which food gave me the most " + metric_word(q.metric) + " on " + day + "?";
    case AnswerKind::food_amount:
      return "Show me the food analysis of my " + metric_word(q.metric) + " on " + day + ".";
    case AnswerKind::verdict:
      return "Compare my " + metric_word(q.metric) + " between week 1 and week 2.";
  }
  return {};
}

QuestionResult score_question(const QuizQuestion& q, const std::string& utterance,
                              const std::vector<json>& messages) {
  QuestionResult r;
  r.id = q.id;
  r.task = q.task;
  r.utterance = utterance;
  r.expected = q.kind == AnswerKind::food_amount ? format_amount(q.expected_amount) : q.expected;

  const json* found = nullptr;
  for (const json& m : messages) {
    if (!m.contains("machine_payload") || !m["machine_payload"].is_array()) continue;
    for (const json& item : m["machine_payload"]) {
      if (matches(q, item)) {
        found = &item;
        break;
      }
    }
    if (found) break;
  }
  if (!found) {
    r.diagnostic = "no " + payload_type(q.kind) + " payload for " + std::string(metric_id(q.metric)) +
                   " over " + q.period.iso() + " in the reply to \"" + utterance + "\"";
    return r;
  }

  try {
    switch (q.kind) {
      case AnswerKind::status:
        r.got = found->at("status").get<std::string>();
        r.correct = r.got == q.expected;
        break;
      case AnswerKind::verdict:
        r.got = found->at("verdict").get<std::string>();
        r.correct = r.got == q.expected;
        break;
      case AnswerKind::top_food:
      case AnswerKind::food_amount: {
        const json& ranked = found->at("ranked");
        if (ranked.empty()) break;
        if (q.kind == AnswerKind::top_food) {
          r.got = ranked[0].at("food").get<std::string>();
          r.correct = r.got == q.expected;
        } else {
          const double amount = ranked[0].at("amount").get<double>();
          r.got = format_amount(amount);
          r.correct = std::abs(amount - q.expected_amount) <= 0.01 * std::abs(q.expected_amount);
        }
        break;
      }
    }
  } catch (const json::exception& e) {
    r.diagnostic = std::string("malformed payload: ") + e.what() + " in the reply to \"" + utterance + "\"";
    return r;
  }
  if (!r.correct && r.diagnostic.empty()) {
    r.diagnostic = "expected " + r.expected + ", got " + (r.got.empty() ? "nothing" : r.got) +
                   " in the reply to \"" + utterance + "\"";
  }
  return r;
}

ScoreReport run_quiz(Transport& transport, std::uint64_t seed, const Thresholds& th) {
  const AnswerKey key = compute_answer_key(generate_sample_diary(seed), th);
  ScoreReport report;
  report.seed = seed;
  report.session_id = transport.create_session(seed);
  for (const QuizQuestion& q : key.questions) {
    const std::string utterance = quiz_utterance(q);
    auto messages = transport.send(report.session_id, {{"type", "user_text"}, {"text", utterance}});
    report.questions.push_back(score_question(q, utterance, messages));
    if (report.questions.back().correct) ++report.total;
  }
  return report;
}

json score_report_to_json(const ScoreReport& r) {
  json tasks = json::object();
  for (QuizTask t : {QuizTask::day_analysis, QuizTask::food_analysis, QuizTask::week_analysis,
                     QuizTask::weeks_comparison}) {
    int max = 0;
    for (const auto& q : r.questions) max += q.task == t ? 1 : 0;
    tasks[std::string(quiz_task_id(t))] = {{"points", r.points(t)}, {"max", max}};
  }
  json questions = json::array();
  for (const auto& q : r.questions) {
    json j = {{"id", q.id},       {"task", quiz_task_id(q.task)}, {"utterance", q.utterance},
              {"expected", q.expected}, {"got", q.got},           {"correct", q.correct}};
    if (!q.diagnostic.empty()) j["diagnostic"] = q.diagnostic;
    questions.push_back(std::move(j));
  }
  return {{"seed", r.seed},
          {"session_id", r.session_id},
          {"total", r.total},
          {"max", 10},
          {"tasks", std::move(tasks)},
          {"questions", std::move(questions)}};
}

}  // namespace dietbot
