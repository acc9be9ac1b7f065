#pragma once

// Test-side helpers: a random diary generator and a naive re-implementation of
// every analysis over flattened entries. Nothing here calls the insight engine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dietbot/diary.hpp"
#include "dietbot/thresholds.hpp"

namespace testing {

using namespace dietbot;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string source_path(const std::string& rel) {
  return std::string(DIETBOT_SOURCE_DIR) + "/" + rel;
}

inline bool rel_close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Uniform double in [lo, hi) from raw engine output.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Up to `max_days` days from 2021-06-07 and up to `max_foods` foods; some days are empty.
inline FoodDiary random_diary(std::mt19937_64& rng, int max_days = 14, int max_foods = 10) {
  const int n_foods = uniform_int(rng, 1, max_foods);
  std::vector<FoodItem> catalog;
  for (int i = 0; i < n_foods; ++i) {
    NutrientVector v;
    for (Metric m : kAllMetrics) {
      // Occasionally zero so empty metrics and zero totals get exercised.
      v[m] = uniform_int(rng, 0, 9) == 0 ? 0.0 : uniform(rng, 0.1, m == Metric::sodium ? 900.0 : 300.0);
    }
    catalog.push_back({"food " + std::to_string(i), v});
  }
  const Date start{2021, 6, 7};
  const int days = uniform_int(rng, 1, max_days);
  std::vector<MealEntry> entries;
  for (int d = 0; d < days; ++d) {
    const int n = uniform_int(rng, 0, 5);
    for (int k = 0; k < n; ++k) {
      MealEntry e;
      e.date = start.plus_days(d);
      e.slot = static_cast<MealSlot>(uniform_int(rng, 0, 3));
      e.food = catalog[static_cast<std::size_t>(uniform_int(rng, 0, n_foods - 1))].name;
      e.grams = std::round(uniform(rng, 5.0, 400.0) * 10.0) / 10.0;
      entries.push_back(e);
    }
  }
  NutrientGoals goals;
  if (uniform_int(rng, 0, 3) == 0) {
    for (Metric m : kAllMetrics) goals.daily_target[m] *= uniform(rng, 0.5, 1.5);
  }
  return FoodDiary(catalog, entries, goals);
}

namespace naive {

inline double per100(const FoodDiary& d, const std::string& food, Metric m) {
  for (const auto& f : d.catalog()) {
    if (f.name == food) return f.per100g[m];
  }
  return 0.0;
}

inline std::vector<double> daily(const FoodDiary& d, Metric m, Date start, Date end) {
  std::vector<double> out;
  for (Date day = start; day <= end; day = day.plus_days(1)) {
    double sum = 0.0;
    for (const auto& e : d.entries()) {
      if (e.date == day) sum += per100(d, e.food, m) * e.grams / 100.0;
    }
    out.push_back(sum);
  }
  return out;
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline std::string status(const FoodDiary& d, Metric m, double mean_value, const Thresholds& th = {}) {
  const double target = d.goals().daily_target[m];
  const double pct = (mean_value - target) / target * 100.0;
  if (pct > th.balance_band_pct) return "excess";
  if (m != Metric::sugar && m != Metric::sodium && pct < -th.balance_band_pct) return "deficient";
  return "balanced";
}

/// Textbook closed form: (n*Sxy - Sx*Sy) / (n*Sxx - Sx^2).
inline double slope(const std::vector<double>& ys) {
  const double n = static_cast<double>(ys.size());
  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += ys[i];
    sxy += x * ys[i];
    sxx += x * x;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double cv(const std::vector<double>& ys) {
  const double mu = mean(ys);
  if (mu == 0.0) return 0.0;
  double ss = 0.0;
  for (double y : ys) ss += (y - mu) * (y - mu);
  return std::sqrt(ss / static_cast<double>(ys.size())) / mu;
}

struct Row {
  std::string food;
  double amount;
  double grams;
};

inline std::vector<Row> ranking(const FoodDiary& d, Metric m, Date start, Date end) {
  std::map<std::string, Row> by_food;
  for (const auto& e : d.entries()) {
    if (e.date < start || end < e.date) continue;
    Row& r = by_food.try_emplace(e.food, Row{e.food, 0.0, 0.0}).first->second;
    r.amount += per100(d, e.food, m) * e.grams / 100.0;
    r.grams += e.grams;
  }
  std::vector<Row> rows;
  for (auto& [name, r] : by_food) rows.push_back(r);
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.amount != b.amount) return a.amount > b.amount;
    return a.food < b.food;
  });
  return rows;
}

inline std::string verdict(double dev_a, double dev_b, double target, const Thresholds& th = {}) {
  const double delta = th.compare_delta_frac * target;
  if (dev_b < dev_a - delta) return "improved";
  if (dev_b > dev_a + delta) return "worsened";
  return "unchanged";
}

inline std::string direction(const std::string& status) {
  if (status == "excess") return "decrease";
  if (status == "deficient") return "increase";
  return "hold";
}

inline bool matches(const std::string& dir, double slope_value, double target,
                    const Thresholds& th = {}) {
  const double eps = th.trend_epsilon_frac * target;
  if (dir == "decrease") return slope_value < -eps;
  if (dir == "increase") return slope_value > eps;
  return std::abs(slope_value) <= eps;
}

}  // namespace naive

}  // namespace testing
