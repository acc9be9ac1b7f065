#include "dietbot/diary.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

#include "dietbot/errors.hpp"

namespace dietbot {

namespace {

constexpr std::array<std::string_view, kMetricCount> kMetricIds = {
    "calories", "carbohydrates", "protein", "fat", "sugar", "sodium"};
constexpr std::array<std::string_view, kMetricCount> kMetricUnits = {"kcal", "g", "g",
                                                                     "g",    "g", "mg"};
constexpr std::array<std::string_view, 4> kSlotIds = {"breakfast", "lunch", "dinner", "snack"};

}  // namespace

std::string_view metric_id(Metric m) { return kMetricIds[static_cast<std::size_t>(m)]; }

std::optional<Metric> metric_from_id(std::string_view id) {
  for (std::size_t i = 0; i < kMetricCount; ++i) {
    if (kMetricIds[i] == id) return static_cast<Metric>(i);
  }
  return std::nullopt;
}

std::string_view metric_unit(Metric m) { return kMetricUnits[static_cast<std::size_t>(m)]; }

bool NutrientVector::all_non_negative() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x >= 0.0; });
}

bool NutrientVector::all_finite() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

std::string_view slot_id(MealSlot s) { return kSlotIds[static_cast<std::size_t>(s)]; }

std::optional<MealSlot> slot_from_id(std::string_view id) {
  for (std::size_t i = 0; i < kSlotIds.size(); ++i) {
    if (kSlotIds[i] == id) return static_cast<MealSlot>(i);
  }
  return std::nullopt;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

FoodDiary::FoodDiary(std::vector<FoodItem> catalog, std::vector<MealEntry> entries,
                     NutrientGoals goals)
    : catalog_(std::move(catalog)), entries_(std::move(entries)), goals_(goals) {
  for (Metric m : kAllMetrics) {
    if (!(goals_.daily_target[m] > 0.0) || !std::isfinite(goals_.daily_target[m])) {
      throw ValidationError("goal for " + std::string(metric_id(m)) + " must be positive");
    }
  }

  std::sort(catalog_.begin(), catalog_.end(), [](const FoodItem& a, const FoodItem& b) {
    return std::make_tuple(a.name, a.per100g[Metric::calories]) <
           std::make_tuple(b.name, b.per100g[Metric::calories]);
  });
  for (std::size_t i = 0; i < catalog_.size(); ++i) {
    const FoodItem& f = catalog_[i];
    if (f.name.empty()) throw ValidationError("catalog[" + std::to_string(i) + "]: empty name");
    if (!f.per100g.all_finite() || !f.per100g.all_non_negative()) {
      throw ValidationError("catalog food '" + f.name + "': nutrients must be non-negative");
    }
    if (!index_.emplace(to_lower(f.name), i).second) {
      throw ValidationError("catalog food '" + f.name + "' is listed twice");
    }
  }

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    MealEntry& e = entries_[i];
    const FoodItem* food = find_food(e.food);
    if (food == nullptr) {
      throw ReferentialError("entries[" + std::to_string(i) + "] (" + e.date.iso() + " " +
                             std::string(slot_id(e.slot)) + "): unknown food '" + e.food + "'");
    }
    if (!(e.grams > 0.0) || !std::isfinite(e.grams)) {
      throw ValidationError("entries[" + std::to_string(i) + "] (" + e.food +
                            "): grams must be positive");
    }
    e.food = food->name;
  }
  std::sort(entries_.begin(), entries_.end(), [](const MealEntry& a, const MealEntry& b) {
    return std::tie(a.date, a.slot, a.food, a.grams) < std::tie(b.date, b.slot, b.food, b.grams);
  });
}

const FoodItem* FoodDiary::find_food(std::string_view name) const {
  auto it = index_.find(to_lower(name));
  return it == index_.end() ? nullptr : &catalog_[it->second];
}

NutrientVector FoodDiary::contribution(const MealEntry& e) const {
  const FoodItem* food = find_food(e.food);
  if (food == nullptr) throw ReferentialError("unknown food '" + e.food + "'");
  return food->per100g * (e.grams / 100.0);
}

std::optional<Date> FoodDiary::first_date() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().date;
}

std::optional<Date> FoodDiary::last_date() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.back().date;
}

std::size_t FoodDiary::distinct_dates() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i == 0 || entries_[i].date != entries_[i - 1].date) ++n;
  }
  return n;
}

namespace {

// Entries are sorted by date first, so each day is a contiguous block.
auto day_block(const std::vector<MealEntry>& entries, Date day) {
  auto lo = std::lower_bound(entries.begin(), entries.end(), day,
                             [](const MealEntry& e, Date d) { return e.date < d; });
  auto hi = std::upper_bound(lo, entries.end(), day,
                             [](Date d, const MealEntry& e) { return d < e.date; });
  return std::pair{lo, hi};
}

}  // namespace

NutrientVector aggregate_day(const FoodDiary& diary, Date day) {
  NutrientVector sum;
  auto [lo, hi] = day_block(diary.entries(), day);
  for (auto it = lo; it != hi; ++it) sum += diary.contribution(*it);
  return sum;
}

std::vector<std::pair<Date, NutrientVector>> aggregate_range(const FoodDiary& diary,
                                                             const DateRange& range) {
  std::vector<std::pair<Date, NutrientVector>> out;
  out.reserve(static_cast<std::size_t>(range.day_count()));
  for (Date d = range.start(); d <= range.end(); d = d.plus_days(1)) {
    out.emplace_back(d, aggregate_day(diary, d));
  }
  return out;
}

std::vector<FoodTotal> foods_in_range(const FoodDiary& diary, const DateRange& range) {
  std::map<std::string, FoodTotal> groups;
  for (const MealEntry& e : diary.entries()) {
    if (!range.contains(e.date)) continue;
    auto [it, inserted] = groups.try_emplace(e.food);
    if (inserted) it->second.food = *diary.find_food(e.food);
    it->second.total_grams += e.grams;
    it->second.total += diary.contribution(e);
  }
  std::vector<FoodTotal> out;
  out.reserve(groups.size());
  for (auto& [name, total] : groups) out.push_back(std::move(total));
  return out;
}

}  // namespace dietbot
