#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/date.hpp"
#include "dietbot/diary.hpp"
#include "dietbot/nutrients.hpp"
#include "dietbot/thresholds.hpp"

// Ground truth for the informativeness quiz. Deliberately built on diary-core
// alone: every number here is recomputed from raw entries.

namespace dietbot {

enum class QuizTask { day_analysis, food_analysis, week_analysis, weeks_comparison };
std::string_view quiz_task_id(QuizTask t);

/// What a question asks for, and therefore where its answer sits in a payload.
enum class AnswerKind { status, top_food, food_amount, verdict };
std::string_view answer_kind_id(AnswerKind k);

struct QuizQuestion {
  std::string id;  // e.g. "day_calories_status"
  QuizTask task = QuizTask::day_analysis;
  AnswerKind kind = AnswerKind::status;
  Metric metric = Metric::calories;
  DateRange period{Date{}, Date{}};
  std::optional<DateRange> period_b;  // comparisons only (later week)
  std::string expected;                // status / verdict id, or food name
  double expected_amount = 0.0;        // food_amount only, metric units
};

struct AnswerKey {
  Date quiz_day;
  DateRange week1{Date{}, Date{}};
  DateRange week2{Date{}, Date{}};
  std::vector<QuizQuestion> questions;  // 10, in task order
};

/// Throws ValidationError naming the degeneracy (empty diary, tied top foods,
/// an unchanged week-over-week verdict).
AnswerKey compute_answer_key(const FoodDiary& diary, const Thresholds& th = {});

nlohmann::json answer_key_to_json(const AnswerKey& key);

}  // namespace dietbot
