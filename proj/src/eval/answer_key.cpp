#include <algorithm>
#include <cmath>
#include <map>

#include "dietbot/answer_key.hpp"
#include "dietbot/errors.hpp"

namespace dietbot {

using nlohmann::json;

std::string_view quiz_task_id(QuizTask t) {
  switch (t) {
    case QuizTask::day_analysis: return "day_analysis";
    case QuizTask::food_analysis: return "food_analysis";
    case QuizTask::week_analysis: return "week_analysis";
    case QuizTask::weeks_comparison: return "weeks_comparison";
  }
  return "day_analysis";
}

std::string_view answer_kind_id(AnswerKind k) {
  switch (k) {
    case AnswerKind::status: return "status";
    case AnswerKind::top_food: return "top_food";
    case AnswerKind::food_amount: return "food_amount";
    case AnswerKind::verdict: return "verdict";
  }
  return "status";
}

namespace {

const FoodItem& food_named(const FoodDiary& d, const std::string& name) {
  for (const FoodItem& f : d.catalog()) {
    if (to_lower(f.name) == to_lower(name)) return f;
  }
  throw ReferentialError("unknown food '" + name + "'");
}

double amount_of(const FoodDiary& d, const MealEntry& e, Metric m) {
  return food_named(d, e.food).per100g[m] * e.grams / 100.0;
}

/// Plain sum over every entry in [start, end] divided by the calendar day count.
double mean_daily(const FoodDiary& d, Metric m, Date start, Date end) {
  double sum = 0.0;
  for (const MealEntry& e : d.entries()) {
    if (start <= e.date && e.date <= end) sum += amount_of(d, e, m);
  }
  return sum / static_cast<double>(start.days_until(end) + 1);
}

std::string status_of(const FoodDiary& d, Metric m, double mean, const Thresholds& th) {
  const double target = d.goals().daily_target[m];
  const double pct = (mean - target) / target * 100.0;
  if (pct > th.balance_band_pct) return "excess";
  const bool limit_only = m == Metric::sugar || m == Metric::sodium;
  if (!limit_only && pct < -th.balance_band_pct) return "deficient";
  return "balanced";
}

}  // namespace

AnswerKey compute_answer_key(const FoodDiary& diary, const Thresholds& th) {
  if (diary.entries().empty()) throw ValidationError("degenerate diary: no entries");

  // Busiest day: most entries, earliest date on ties.
  std::map<Date, int> per_day;
  for (const MealEntry& e : diary.entries()) ++per_day[e.date];
  Date day = per_day.begin()->first;
  int best = 0;
  for (const auto& [d, n] : per_day) {
    if (n > best) {
      best = n;
      day = d;
    }
  }

  Date first = per_day.begin()->first;
  AnswerKey key;
  key.quiz_day = day;
  key.week1 = DateRange{first, first.plus_days(6)};
  key.week2 = DateRange{first.plus_days(7), first.plus_days(13)};
  const DateRange today = DateRange::single(day);

  for (Metric m : {Metric::calories, Metric::carbohydrates}) {
    QuizQuestion q;
    q.id = "day_" + std::string(metric_id(m)) + "_status";
    q.task = QuizTask::day_analysis;
    q.kind = AnswerKind::status;
    q.metric = m;
    q.period = today;
    q.expected = status_of(diary, m, mean_daily(diary, m, day, day), th);
    key.questions.push_back(q);
  }

  for (Metric m : {Metric::calories, Metric::fat}) {
    std::map<std::string, double> per_food;
    for (const MealEntry& e : diary.entries()) {
      if (e.date == day) per_food[food_named(diary, e.food).name] += amount_of(diary, e, m);
    }
    std::vector<std::pair<std::string, double>> rows(per_food.begin(), per_food.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (rows.size() > 1 && std::abs(rows[0].second - rows[1].second) <= 1e-9 * rows[0].second) {
      throw ValidationError("degenerate diary: '" + rows[0].first + "' and '" + rows[1].first +
                            "' tie for most " + std::string(metric_id(m)) + " on " + day.iso());
    }
    QuizQuestion food;
    food.id = "top_" + std::string(metric_id(m)) + "_food";
    food.task = QuizTask::food_analysis;
    food.kind = AnswerKind::top_food;
    food.metric = m;
    food.period = today;
    food.expected = rows[0].first;
    food.expected_amount = rows[0].second;
    key.questions.push_back(food);

    QuizQuestion amount = food;
    amount.id = "top_" + std::string(metric_id(m)) + "_amount";
    amount.kind = AnswerKind::food_amount;
    key.questions.push_back(amount);
  }

  for (Metric m : {Metric::calories, Metric::carbohydrates}) {
    QuizQuestion q;
    q.id = "week1_" + std::string(metric_id(m)) + "_status";
    q.task = QuizTask::week_analysis;
    q.kind = AnswerKind::status;
    q.metric = m;
    q.period = key.week1;
    q.expected = status_of(diary, m, mean_daily(diary, m, key.week1.start(), key.week1.end()), th);
    key.questions.push_back(q);
  }

  for (Metric m : {Metric::calories, Metric::carbohydrates}) {
    const double target = diary.goals().daily_target[m];
    const double dev_a =
        std::abs(mean_daily(diary, m, key.week1.start(), key.week1.end()) - target);
    const double dev_b =
        std::abs(mean_daily(diary, m, key.week2.start(), key.week2.end()) - target);
    const double delta = th.compare_delta_frac * target;
    std::string verdict = "unchanged";
    if (dev_b < dev_a - delta) verdict = "improved";
    if (dev_b > dev_a + delta) verdict = "worsened";
    if (verdict == "unchanged") {
      throw ValidationError("degenerate diary: " + std::string(metric_id(m)) +
                            " is unchanged from week 1 to week 2");
    }
    QuizQuestion q;
    q.id = "compare_" + std::string(metric_id(m)) + "_verdict";
    q.task = QuizTask::weeks_comparison;
    q.kind = AnswerKind::verdict;
    q.metric = m;
    q.period = key.week1;
    q.period_b = key.week2;
    q.expected = verdict;
    key.questions.push_back(q);
  }
  return key;
}

json answer_key_to_json(const AnswerKey& key) {
  json questions = json::array();
  for (const QuizQuestion& q : key.questions) {
    json j = {{"id", q.id},
              {"task", quiz_task_id(q.task)},
              {"kind", answer_kind_id(q.kind)},
              {"metric", metric_id(q.metric)},
              {"period", q.period.iso()},
              {"expected", q.expected}};
    if (q.period_b) j["period_b"] = q.period_b->iso();
    if (q.kind == AnswerKind::food_amount) j["expected_amount"] = q.expected_amount;
    questions.push_back(std::move(j));
  }
  return {{"quiz_day", key.quiz_day.iso()},
          {"week1", key.week1.iso()},
          {"week2", key.week2.iso()},
          {"questions", std::move(questions)}};
}

}  // namespace dietbot
