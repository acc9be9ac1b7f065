#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "dietbot/chart.hpp"
#include "dietbot/errors.hpp"

namespace dietbot {

namespace {

std::string short_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u/%u", d.month(), d.day());
  return buf;
}

std::vector<std::string> day_labels(const DateRange& period) {
  std::vector<std::string> out;
  for (Date d = period.start(); d <= period.end(); d = d.plus_days(1)) out.push_back(short_date(d));
  return out;
}

std::string title_for(std::string_view what, Metric m, const DateRange& period) {
  std::string metric(metric_id(m));
  metric[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(metric[0])));
  return metric + " " + std::string(what) + ", " + period.describe();
}

ChartSpec daily_chart(std::string_view what, Metric m, const DateRange& period,
                      const std::vector<double>& daily, double target) {
  ChartSpec spec;
  spec.kind = ChartKind::timeseries;
  spec.title = title_for(what, m, period);
  spec.units = std::string(metric_unit(m));
  spec.categories = day_labels(period);
  spec.series.push_back({std::string(metric_id(m)), daily});
  spec.goal_line = target;
  return spec;
}

}  // namespace

std::string_view chart_kind_id(ChartKind k) {
  switch (k) {
    case ChartKind::timeseries: return "timeseries";
    case ChartKind::bars: return "bars";
    case ChartKind::grouped_bars: return "grouped_bars";
  }
  return "timeseries";
}

void validate(const ChartSpec& spec) {
  if (spec.series.empty()) throw ValidationError("chart needs at least one series");
  std::set<std::string> labels;
  for (const auto& s : spec.series) {
    if (!labels.insert(s.label).second) {
      throw ValidationError("duplicate series label '" + s.label + "'");
    }
    if (!s.values.empty() && s.values.size() != spec.categories.size()) {
      throw ValidationError("series '" + s.label + "' length does not match categories");
    }
    for (double v : s.values) {
      if (!std::isfinite(v)) throw ValidationError("series '" + s.label + "' has a non-finite value");
    }
  }
  if (spec.goal_line && !std::isfinite(*spec.goal_line)) {
    throw ValidationError("goal line is not finite");
  }
}

std::optional<ChartSpec> spec_from_assessment(const Assessment& a) {
  if (const auto* in = std::get_if<IntakeAssessment>(&a)) {
    if (in->period.day_count() < 2) return std::nullopt;
    return daily_chart("intake", in->metric, in->period, in->daily, in->target);
  }
  if (const auto* t = std::get_if<TrendAssessment>(&a)) {
    return daily_chart("trend", t->metric, t->period, t->daily, t->target);
  }
  if (const auto* c = std::get_if<ConsistencyAssessment>(&a)) {
    ChartSpec spec = daily_chart("consistency", c->metric, c->period, c->daily, 0.0);
    spec.goal_line.reset();  // the assessment carries no target
    return spec;
  }
  if (const auto* r = std::get_if<FoodImpactRanking>(&a)) {
    ChartSpec spec;
    spec.kind = ChartKind::bars;
    spec.title = title_for("by food", r->metric, r->period);
    spec.units = std::string(metric_unit(r->metric));
    ChartSeries s{std::string(metric_id(r->metric)), {}};
    double other = 0.0;
    for (std::size_t i = 0; i < r->ranked.size(); ++i) {
      if (i < kMaxFoodBars) {
        spec.categories.push_back(r->ranked[i].food);
        s.values.push_back(r->ranked[i].amount);
      } else {
        other += r->ranked[i].amount;
      }
    }
    if (r->ranked.size() > kMaxFoodBars) {
      spec.categories.push_back("Other");
      s.values.push_back(other);
    }
    spec.series.push_back(std::move(s));
    return spec;
  }
  return spec_from_comparisons({std::get<ComparisonResult>(a)});
}

ChartSpec spec_from_comparisons(const std::vector<ComparisonResult>& comparisons) {
  if (comparisons.empty()) throw ValidationError("no comparisons to chart");
  const ComparisonResult& first = comparisons.front();
  ChartSpec spec;
  spec.kind = ChartKind::grouped_bars;
  spec.title = first.period_a.describe() + " vs " + first.period_b.describe();
  spec.units = "% of daily goal";
  ChartSeries a{first.period_a.describe(), {}};
  ChartSeries b{first.period_b.describe(), {}};
  for (const auto& c : comparisons) {
    spec.categories.emplace_back(metric_id(c.metric));
    a.values.push_back(c.mean_a / c.target * 100.0);
    b.values.push_back(c.mean_b / c.target * 100.0);
  }
  spec.series.push_back(std::move(a));
  spec.series.push_back(std::move(b));
  spec.goal_line = 100.0;
  return spec;
}

nlohmann::json chart_spec_to_json(const ChartSpec& spec) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : spec.series) series.push_back({{"label", s.label}, {"values", s.values}});
  nlohmann::json j = {{"kind", chart_kind_id(spec.kind)},
                      {"title", spec.title},
                      {"units", spec.units},
                      {"categories", spec.categories},
                      {"series", std::move(series)}};
  j["goal_line"] = spec.goal_line ? nlohmann::json(*spec.goal_line) : nlohmann::json(nullptr);
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string chart_id(const ChartSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(chart_spec_to_json(spec).dump())));
  return buf;
}

}  // namespace dietbot
