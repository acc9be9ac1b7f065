#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/date.hpp"
#include "dietbot/nutrients.hpp"

namespace dietbot {

struct FoodItem {
  std::string name;
  NutrientVector per100g;

  friend bool operator==(const FoodItem&, const FoodItem&) = default;
};

/// Display-only; slots never influence analysis.
enum class MealSlot { breakfast = 0, lunch, dinner, snack };

std::string_view slot_id(MealSlot s);
std::optional<MealSlot> slot_from_id(std::string_view id);

struct MealEntry {
  Date date;
  MealSlot slot = MealSlot::breakfast;
  std::string food;  // catalog name, canonical casing
  double grams = 0.0;

  friend bool operator==(const MealEntry&, const MealEntry&) = default;
};

/// Validated, canonically ordered food log. Immutable after construction.
class FoodDiary {
 public:
  FoodDiary() = default;

  /// Validates and canonicalizes. Throws ValidationError / ReferentialError.
  FoodDiary(std::vector<FoodItem> catalog, std::vector<MealEntry> entries,
            NutrientGoals goals = {});

  const std::vector<FoodItem>& catalog() const { return catalog_; }
  const std::vector<MealEntry>& entries() const { return entries_; }
  const NutrientGoals& goals() const { return goals_; }

  /// Case-insensitive lookup; nullptr when absent.
  const FoodItem* find_food(std::string_view name) const;
  /// per100g x grams/100 for the entry's food.
  NutrientVector contribution(const MealEntry& e) const;

  bool empty() const { return entries_.empty(); }
  std::optional<Date> first_date() const;
  std::optional<Date> last_date() const;
  /// Number of distinct dates with at least one entry.
  std::size_t distinct_dates() const;

  friend bool operator==(const FoodDiary& a, const FoodDiary& b) {
    return a.catalog_ == b.catalog_ && a.entries_ == b.entries_ && a.goals_ == b.goals_;
  }

 private:
  std::vector<FoodItem> catalog_;
  std::vector<MealEntry> entries_;
  NutrientGoals goals_;
  std::unordered_map<std::string, std::size_t> index_;  // lower-cased name -> catalog slot
};

struct FoodTotal {
  FoodItem food;
  double total_grams = 0.0;
  NutrientVector total;
};

NutrientVector aggregate_day(const FoodDiary& diary, Date day);
std::vector<std::pair<Date, NutrientVector>> aggregate_range(const FoodDiary& diary,
                                                             const DateRange& range);
/// One row per distinct food eaten in range, ordered by name.
std::vector<FoodTotal> foods_in_range(const FoodDiary& diary, const DateRange& range);

/// Deterministic 14-day quiz-ready diary starting Monday 2021-06-07.
FoodDiary generate_sample_diary(std::uint64_t seed);

// Persistence. Schema: {"catalog": [...], "goals": {"daily_target": {...}}, "entries": [...]}.
nlohmann::json diary_to_json(const FoodDiary& diary);
FoodDiary diary_from_json(const nlohmann::json& doc);
std::string serialize_diary(const FoodDiary& diary);
/// Parses diary text; syntax errors report line and column.
FoodDiary parse_diary(std::string_view text);
FoodDiary load_diary(const std::filesystem::path& path);

nlohmann::json nutrients_to_json(const NutrientVector& v);
NutrientVector nutrients_from_json(const nlohmann::json& j, const std::string& where);

std::string to_lower(std::string_view s);

}  // namespace dietbot
