#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "dietbot/errors.hpp"
#include "dietbot/insights.hpp"

namespace dietbot {

namespace {

constexpr std::array<std::string_view, 3> kStatusIds = {"deficient", "balanced", "excess"};
constexpr std::array<std::string_view, 3> kDirectionIds = {"decrease", "increase", "hold"};
constexpr std::array<std::string_view, 3> kVerdictIds = {"improved", "worsened", "unchanged"};

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

bool has_entries_in(const FoodDiary& diary, const DateRange& period) {
  return std::any_of(diary.entries().begin(), diary.entries().end(),
                     [&](const MealEntry& e) { return period.contains(e.date); });
}

}  // namespace

std::string_view status_id(IntakeStatus s) { return kStatusIds[static_cast<std::size_t>(s)]; }
std::string_view direction_id(Direction d) { return kDirectionIds[static_cast<std::size_t>(d)]; }
std::string_view verdict_id(Verdict v) { return kVerdictIds[static_cast<std::size_t>(v)]; }

std::vector<double> daily_series(const FoodDiary& diary, Metric metric, const DateRange& period) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(period.day_count()));
  for (const auto& [date, totals] : aggregate_range(diary, period)) out.push_back(totals[metric]);
  return out;
}

double ols_slope(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double x_mean = static_cast<double>(n - 1) / 2.0;
  const double y_mean = mean_of(values);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    sxy += dx * (values[i] - y_mean);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

IntakeStatus classify_intake(Metric metric, double deviation_pct, const Thresholds& th) {
  if (deviation_pct > th.balance_band_pct) return IntakeStatus::excess;
  if (NutrientGoals::bound_kind(metric) == BoundKind::band && deviation_pct < -th.balance_band_pct) {
    return IntakeStatus::deficient;
  }
  return IntakeStatus::balanced;
}

IntakeAssessment assess_intake(const FoodDiary& diary, Metric metric, const DateRange& period,
                               const Thresholds& th) {
  IntakeAssessment a;
  a.metric = metric;
  a.period = period;
  a.daily = daily_series(diary, metric, period);
  a.mean_daily = mean_of(a.daily);
  a.target = diary.goals().target(metric);
  a.deviation_pct = (a.mean_daily - a.target) / a.target * 100.0;
  a.status = classify_intake(metric, a.deviation_pct, th);
  a.empty = !has_entries_in(diary, period);
  return a;
}

TrendAssessment detect_trend(const FoodDiary& diary, Metric metric, const DateRange& period,
                             const Thresholds& th) {
  if (period.day_count() < 3) {
    throw InsightError("trend needs at least 3 days, got " + std::to_string(period.day_count()));
  }
  const IntakeAssessment intake = assess_intake(diary, metric, period, th);
  TrendAssessment t;
  t.metric = metric;
  t.period = period;
  t.daily = intake.daily;
  t.target = intake.target;
  t.slope = ols_slope(t.daily);
  t.period_status = intake.status;
  switch (intake.status) {
    case IntakeStatus::excess: t.recommended_direction = Direction::decrease; break;
    case IntakeStatus::deficient: t.recommended_direction = Direction::increase; break;
    case IntakeStatus::balanced: t.recommended_direction = Direction::hold; break;
  }
  const double eps = th.trend_epsilon_frac * t.target;
  switch (t.recommended_direction) {
    case Direction::decrease: t.matches_recommendation = t.slope < -eps; break;
    case Direction::increase: t.matches_recommendation = t.slope > eps; break;
    case Direction::hold: t.matches_recommendation = std::abs(t.slope) <= eps; break;
  }
  return t;
}

ConsistencyAssessment assess_consistency(const FoodDiary& diary, Metric metric,
                                         const DateRange& period, const Thresholds& th) {
  if (period.day_count() < 2) {
    throw InsightError("consistency needs at least 2 days, got " +
                       std::to_string(period.day_count()));
  }
  ConsistencyAssessment c;
  c.metric = metric;
  c.period = period;
  c.daily = daily_series(diary, metric, period);
  c.mean = mean_of(c.daily);
  double ss = 0.0;
  for (double v : c.daily) ss += (v - c.mean) * (v - c.mean);
  const double stddev = std::sqrt(ss / static_cast<double>(c.daily.size()));
  c.cv = c.mean == 0.0 ? 0.0 : stddev / c.mean;
  c.consistent = c.cv <= th.consistency_max_cv;
  return c;
}

FoodImpactRanking rank_food_impact(const FoodDiary& diary, Metric metric, const DateRange& period) {
  FoodImpactRanking r;
  r.metric = metric;
  r.period = period;
  for (const FoodTotal& f : foods_in_range(diary, period)) {
    r.ranked.push_back({f.food.name, f.total[metric], 0.0, f.total_grams});
    r.total += f.total[metric];
  }
  std::sort(r.ranked.begin(), r.ranked.end(), [](const FoodImpactRow& a, const FoodImpactRow& b) {
    if (a.amount != b.amount) return a.amount > b.amount;
    return a.food < b.food;
  });
  if (r.total > 0.0) {
    for (auto& row : r.ranked) row.share_pct = row.amount / r.total * 100.0;
  }
  return r;
}

ComparisonResult compare_ranges(const FoodDiary& diary, Metric metric, const DateRange& a,
                                const DateRange& b, const Thresholds& th) {
  ComparisonResult c;
  c.metric = metric;
  c.period_a = a;
  c.period_b = b;
  c.target = diary.goals().target(metric);
  c.mean_a = mean_of(daily_series(diary, metric, a));
  c.mean_b = mean_of(daily_series(diary, metric, b));
  c.abs_dev_a = std::abs(c.mean_a - c.target);
  c.abs_dev_b = std::abs(c.mean_b - c.target);
  const double delta = th.compare_delta_frac * c.target;
  if (c.abs_dev_b < c.abs_dev_a - delta) {
    c.verdict = Verdict::improved;
  } else if (c.abs_dev_b > c.abs_dev_a + delta) {
    c.verdict = Verdict::worsened;
  } else {
    c.verdict = Verdict::unchanged;
  }
  return c;
}

Metric assessment_metric(const Assessment& a) {
  return std::visit([](const auto& x) { return x.metric; }, a);
}

std::string_view assessment_type(const Assessment& a) {
  static constexpr std::array<std::string_view, 5> kTypes = {"intake", "trend", "consistency",
                                                             "food_impact", "comparison"};
  return kTypes[a.index()];
}

}  // namespace dietbot
