#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/insights.hpp"

namespace dietbot {

enum class ChartKind { timeseries, bars, grouped_bars };

std::string_view chart_kind_id(ChartKind k);

struct ChartSeries {
  std::string label;
  std::vector<double> values;  // one per category

  friend bool operator==(const ChartSeries&, const ChartSeries&) = default;
};

/// Data needed to draw one chart. Categories label the x positions
/// (days, foods, or metrics); every series has one value per category.
struct ChartSpec {
  ChartKind kind = ChartKind::timeseries;
  std::string title;
  std::string units;
  std::vector<std::string> categories;
  std::vector<ChartSeries> series;
  std::optional<double> goal_line;

  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

/// Throws ValidationError: no series, duplicate labels, non-finite values,
/// or a series whose length differs from the category count.
void validate(const ChartSpec& spec);

/// SVG 1.1 document on a fixed 640x360 viewBox. Byte-deterministic.
/// A spec without any values renders a "no data" placeholder.
std::string render(const ChartSpec& spec);

/// Number of food bars shown before the remainder collapses into "Other".
inline constexpr std::size_t kMaxFoodBars = 8;

/// Chart for one assessment; nullopt for kinds that are text-only (single-day intake).
std::optional<ChartSpec> spec_from_assessment(const Assessment& a);
/// One grouped chart for several comparisons over the same two periods:
/// a group per metric, a series per period, values as % of the daily goal.
ChartSpec spec_from_comparisons(const std::vector<ComparisonResult>& comparisons);

nlohmann::json chart_spec_to_json(const ChartSpec& spec);
/// Content address: 16 hex digits of FNV-1a over the canonical spec JSON.
std::string chart_id(const ChartSpec& spec);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace dietbot
