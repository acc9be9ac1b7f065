#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/date.hpp"
#include "dietbot/diary.hpp"
#include "dietbot/nlu.hpp"
#include "dietbot/nutrients.hpp"
#include "dietbot/thresholds.hpp"

namespace dietbot {

enum class IntakeStatus { deficient, balanced, excess };
enum class Direction { decrease, increase, hold };
enum class Verdict { improved, worsened, unchanged };

std::string_view status_id(IntakeStatus s);
std::string_view direction_id(Direction d);
std::string_view verdict_id(Verdict v);

struct IntakeAssessment {
  Metric metric = Metric::calories;
  DateRange period{Date{}, Date{}};
  double mean_daily = 0.0;
  double target = 0.0;
  double deviation_pct = 0.0;  // (mean - target) / target * 100
  IntakeStatus status = IntakeStatus::balanced;
  std::vector<double> daily;   // one total per calendar day of `period`
  bool empty = false;          // no diary entries inside `period`

  friend bool operator==(const IntakeAssessment&, const IntakeAssessment&) = default;
};

struct TrendAssessment {
  Metric metric = Metric::calories;
  DateRange period{Date{}, Date{}};
  double slope = 0.0;  // metric units per day, least squares
  double target = 0.0;
  IntakeStatus period_status = IntakeStatus::balanced;
  Direction recommended_direction = Direction::hold;
  bool matches_recommendation = false;
  std::vector<double> daily;

  friend bool operator==(const TrendAssessment&, const TrendAssessment&) = default;
};

struct ConsistencyAssessment {
  Metric metric = Metric::calories;
  DateRange period{Date{}, Date{}};
  double mean = 0.0;
  double cv = 0.0;  // population std / mean, 0 when mean is 0
  bool consistent = true;
  std::vector<double> daily;

  friend bool operator==(const ConsistencyAssessment&, const ConsistencyAssessment&) = default;
};

struct FoodImpactRow {
  std::string food;
  double amount = 0.0;     // metric units contributed over the period
  double share_pct = 0.0;  // of the period total
  double grams = 0.0;      // grams of the food eaten over the period

  friend bool operator==(const FoodImpactRow&, const FoodImpactRow&) = default;
};

struct FoodImpactRanking {
  Metric metric = Metric::calories;
  DateRange period{Date{}, Date{}};
  double total = 0.0;
  std::vector<FoodImpactRow> ranked;  // descending amount, ties by ascending name

  friend bool operator==(const FoodImpactRanking&, const FoodImpactRanking&) = default;
};

struct ComparisonResult {
  Metric metric = Metric::calories;
  DateRange period_a{Date{}, Date{}};  // earlier / baseline
  DateRange period_b{Date{}, Date{}};  // later / current
  double mean_a = 0.0;
  double mean_b = 0.0;
  double target = 0.0;
  double abs_dev_a = 0.0;
  double abs_dev_b = 0.0;
  Verdict verdict = Verdict::unchanged;

  friend bool operator==(const ComparisonResult&, const ComparisonResult&) = default;
};

using Assessment = std::variant<IntakeAssessment, TrendAssessment, ConsistencyAssessment,
                                FoodImpactRanking, ComparisonResult>;

Metric assessment_metric(const Assessment& a);
/// "intake", "trend", "consistency", "food_impact" or "comparison".
std::string_view assessment_type(const Assessment& a);

/// An analysis that could not run, surfaced to the user as a clarification.
struct BundleNote {
  enum class Kind { period_too_short, no_data };
  Kind kind = Kind::no_data;
  std::optional<DateRange> period;

  friend bool operator==(const BundleNote&, const BundleNote&) = default;
};

struct InsightBundle {
  ParsedQuery query;  // defaulted
  std::vector<Assessment> assessments;
  std::vector<BundleNote> notes;

  bool empty() const { return assessments.empty(); }
};

// Analyses. All are pure; `period` may extend beyond the logged days (those count as zero).
IntakeStatus classify_intake(Metric metric, double deviation_pct, const Thresholds& th = {});
IntakeAssessment assess_intake(const FoodDiary& diary, Metric metric, const DateRange& period,
                               const Thresholds& th = {});
/// Throws InsightError when the period has fewer than 3 days.
TrendAssessment detect_trend(const FoodDiary& diary, Metric metric, const DateRange& period,
                             const Thresholds& th = {});
/// Throws InsightError when the period has fewer than 2 days.
ConsistencyAssessment assess_consistency(const FoodDiary& diary, Metric metric,
                                         const DateRange& period, const Thresholds& th = {});
FoodImpactRanking rank_food_impact(const FoodDiary& diary, Metric metric, const DateRange& period);
ComparisonResult compare_ranges(const FoodDiary& diary, Metric metric, const DateRange& a,
                                const DateRange& b, const Thresholds& th = {});

/// Ordinary least-squares slope of `values` against index 0..n-1.
double ols_slope(const std::vector<double>& values);
std::vector<double> daily_series(const FoodDiary& diary, Metric metric, const DateRange& period);

/// Fills an absent metric set with {calories} and an absent timeframe with
/// `carried` if given, else the diary default (last logged day; the first two
/// diary weeks for comparisons).
ParsedQuery apply_defaults(ParsedQuery q, const FoodDiary& diary,
                           const std::optional<TemporalExpression>& carried = std::nullopt);

/// Dispatches a defaulted query to the analyses implied by its intent and insight kinds.
InsightBundle build_bundle(const FoodDiary& diary, const ParsedQuery& query,
                           const Thresholds& th = {});

/// Advanced insights of the given kinds over the query's timeframe(s).
InsightBundle build_advanced_bundle(const FoodDiary& diary, const ParsedQuery& query,
                                    const InsightKindSet& kinds, const Thresholds& th = {});

nlohmann::json assessment_to_json(const Assessment& a);
Assessment assessment_from_json(const nlohmann::json& j);

}  // namespace dietbot
