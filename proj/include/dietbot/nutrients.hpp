#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace dietbot {

enum class Metric : std::size_t { calories = 0, carbohydrates, protein, fat, sugar, sodium };

inline constexpr std::size_t kMetricCount = 6;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::calories, Metric::carbohydrates, Metric::protein,
    Metric::fat,      Metric::sugar,         Metric::sodium};

std::string_view metric_id(Metric m);
std::optional<Metric> metric_from_id(std::string_view id);
/// "kcal", "g" or "mg".
std::string_view metric_unit(Metric m);

/// Calories plus the five tracked nutrients: kcal, g, g, g, g, mg.
class NutrientVector {
 public:
  constexpr NutrientVector() = default;
  constexpr NutrientVector(double calories, double carbohydrates, double protein, double fat,
                           double sugar, double sodium)
      : v_{calories, carbohydrates, protein, fat, sugar, sodium} {}

  constexpr double operator[](Metric m) const { return v_[static_cast<std::size_t>(m)]; }
  constexpr double& operator[](Metric m) { return v_[static_cast<std::size_t>(m)]; }

  constexpr NutrientVector& operator+=(const NutrientVector& o) {
    for (std::size_t i = 0; i < kMetricCount; ++i) v_[i] += o.v_[i];
    return *this;
  }
  friend constexpr NutrientVector operator+(NutrientVector a, const NutrientVector& b) {
    return a += b;
  }
  friend constexpr NutrientVector operator*(NutrientVector a, double k) {
    for (auto& x : a.v_) x *= k;
    return a;
  }

  bool all_non_negative() const;
  bool all_finite() const;

  friend bool operator==(const NutrientVector&, const NutrientVector&) = default;

 private:
  std::array<double, kMetricCount> v_{};
};

enum class BoundKind { band, upper_only };

struct NutrientGoals {
  NutrientVector daily_target{2000.0, 260.0, 50.0, 70.0, 90.0, 2300.0};

  /// Sugar and sodium are limits; everything else is a band around the target.
  static constexpr BoundKind bound_kind(Metric m) {
    return (m == Metric::sugar || m == Metric::sodium) ? BoundKind::upper_only : BoundKind::band;
  }
  double target(Metric m) const { return daily_target[m]; }

  friend bool operator==(const NutrientGoals&, const NutrientGoals&) = default;
};

}  // namespace dietbot
