#pragma once

#include <nlohmann/json.hpp>

namespace dietbot {

/// Every classification constant used by the insight engine. The quiz
/// answer-key oracle reads the same record and nothing else from the engine.
struct Thresholds {
  double balance_band_pct = 10.0;      // |deviation| <= band  => balanced
  double trend_epsilon_frac = 0.01;    // dead zone, fraction of daily target per day
  double consistency_max_cv = 0.15;
  double compare_delta_frac = 0.02;    // hysteresis, fraction of daily target

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

inline void to_json(nlohmann::json& j, const Thresholds& t) {
  j = {{"balance_band_pct", t.balance_band_pct},
       {"trend_epsilon_frac", t.trend_epsilon_frac},
       {"consistency_max_cv", t.consistency_max_cv},
       {"compare_delta_frac", t.compare_delta_frac}};
}

inline void from_json(const nlohmann::json& j, Thresholds& t) {
  Thresholds d;
  t.balance_band_pct = j.value("balance_band_pct", d.balance_band_pct);
  t.trend_epsilon_frac = j.value("trend_epsilon_frac", d.trend_epsilon_frac);
  t.consistency_max_cv = j.value("consistency_max_cv", d.consistency_max_cv);
  t.compare_delta_frac = j.value("compare_delta_frac", d.compare_delta_frac);
}

}  // namespace dietbot
