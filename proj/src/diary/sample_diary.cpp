#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "dietbot/diary.hpp"
#include "dietbot/errors.hpp"
#include "dietbot/thresholds.hpp"

namespace dietbot {

namespace {

enum Use : unsigned { kBreakfast = 1, kMain = 2, kSnack = 4 };

struct CatalogRow {
  const char* name;
  NutrientVector per100g;  // kcal, carbs g, protein g, fat g, sugar g, sodium mg
  double portion_g;
  unsigned use;
};

// Per-100 g values rounded from common food-label data.
const std::array<CatalogRow, 31> kCatalog = {{
    {"Almonds", {579, 22, 21, 50, 4.4, 1}, 30, kSnack},
    {"Apple", {52, 14, 0.3, 0.2, 10.4, 1}, 180, kSnack | kBreakfast},
    {"Banana", {89, 22.8, 1.1, 0.3, 12.2, 1}, 120, kBreakfast | kSnack},
    {"Beef lasagna", {135, 13, 8, 5.5, 2.9, 360}, 350, kMain},
    {"Boiled potatoes", {87, 20, 1.9, 0.1, 0.9, 5}, 250, kMain},
    {"Caesar salad", {190, 7, 5, 16, 2, 400}, 250, kMain},
    {"Cheeseburger", {303, 30, 15, 14, 6, 620}, 220, kMain},
    {"Chocolate chip cookie", {488, 64, 5, 24, 35, 350}, 40, kSnack},
    {"Cola", {42, 10.6, 0, 0, 10.6, 4}, 330, kSnack},
    {"Cornflakes", {357, 84, 7.5, 0.4, 10, 729}, 40, kBreakfast},
    {"Croissant", {406, 45.8, 8.2, 21, 11.3, 467}, 60, kBreakfast},
    {"French fries", {312, 41, 3.4, 15, 0.3, 210}, 150, kMain},
    {"Greek yogurt", {97, 3.6, 9, 5, 3.6, 35}, 170, kBreakfast | kSnack},
    {"Grilled chicken breast", {165, 0, 31, 3.6, 0, 74}, 180, kMain},
    {"Lentil soup", {56, 8.5, 3.6, 0.8, 1.7, 305}, 350, kMain},
    {"Margherita pizza", {266, 33, 11, 10, 3.6, 598}, 300, kMain},
    {"Milk chocolate", {535, 59, 7.7, 30, 52, 79}, 45, kSnack},
    {"Mixed vegetables", {65, 13, 2.6, 0.3, 3.5, 35}, 200, kMain},
    {"Oatmeal", {68, 12, 2.4, 1.4, 0.5, 49}, 250, kBreakfast},
    {"Orange juice", {45, 10.4, 0.7, 0.2, 8.4, 1}, 250, kBreakfast},
    {"Pasta with tomato sauce", {131, 25, 4.5, 1.5, 3.2, 230}, 350, kMain},
    {"Peanut butter", {588, 20, 25, 50, 9, 17}, 30, kBreakfast | kSnack},
    {"Potato chips", {536, 53, 7, 35, 0.3, 525}, 50, kSnack},
    {"Protein bar", {350, 40, 30, 8, 15, 200}, 60, kSnack},
    {"Salmon fillet", {208, 0, 20, 13, 0, 59}, 180, kMain},
    {"Scrambled eggs", {148, 1.6, 10, 11, 1.4, 145}, 150, kBreakfast},
    {"Tofu stir fry", {120, 8, 9, 6, 3, 450}, 300, kMain},
    {"Tuna sandwich", {230, 24, 13, 9, 3, 480}, 200, kMain},
    {"White rice", {130, 28, 2.7, 0.3, 0.1, 1}, 250, kMain},
    {"Whole milk", {61, 4.8, 3.2, 3.3, 5.1, 43}, 250, kBreakfast},
    {"Whole wheat toast", {247, 41, 13, 3.4, 6, 450}, 70, kBreakfast},
}};

constexpr int kDays = 14;
const Date kStart{2021, 6, 7};  // a Monday

// Portable draws from the standardized mt19937_64 bit stream (std::
// distributions are implementation-defined and would break byte determinism).
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<std::size_t> foods_for(unsigned use) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kCatalog.size(); ++i) {
    if (kCatalog[i].use & use) out.push_back(i);
  }
  return out;
}

FoodDiary build_candidate(std::uint64_t derived_seed) {
  Draw draw(derived_seed);
  static const auto breakfast = foods_for(kBreakfast);
  static const auto mains = foods_for(kMain);
  static const auto snacks = foods_for(kSnack);

  std::vector<FoodItem> catalog;
  for (const auto& row : kCatalog) catalog.push_back({row.name, row.per100g});

  const double week_bias[2] = {draw.uniform(-0.25, 0.25), draw.uniform(-0.25, 0.25)};
  const NutrientGoals goals;

  std::vector<MealEntry> entries;
  for (int d = 0; d < kDays; ++d) {
    const Date date = kStart.plus_days(d);
    const double day_target =
        goals.target(Metric::calories) * (1.0 + week_bias[d / 7] + draw.uniform(-0.2, 0.2));

    struct Pick {
      MealSlot slot;
      std::size_t food;
      double grams;
    };
    std::vector<Pick> picks;
    auto add = [&](MealSlot slot, const std::vector<std::size_t>& pool) {
      std::size_t food = pool[draw.below(pool.size())];
      for (int retry = 0; retry < 8; ++retry) {
        bool dup = std::any_of(picks.begin(), picks.end(),
                               [&](const Pick& p) { return p.food == food; });
        if (!dup) break;
        food = pool[draw.below(pool.size())];
      }
      picks.push_back({slot, food, kCatalog[food].portion_g * draw.uniform(0.7, 1.3)});
    };

    add(MealSlot::breakfast, breakfast);
    add(MealSlot::lunch, mains);
    add(MealSlot::dinner, mains);
    const std::size_t extra = draw.below(3);
    for (std::size_t k = 0; k < extra; ++k) {
      switch (draw.below(3)) {
        case 0: add(MealSlot::snack, snacks); break;
        case 1: add(MealSlot::dinner, mains); break;
        default: add(MealSlot::breakfast, breakfast); break;
      }
    }

    double kcal = 0.0;
    for (const Pick& p : picks) kcal += kCatalog[p.food].per100g[Metric::calories] * p.grams / 100.0;
    const double scale = day_target / kcal;
    for (const Pick& p : picks) {
      const double grams = std::max(10.0, std::round(p.grams * scale));
      entries.push_back({date, p.slot, kCatalog[p.food].name, grams});
    }
  }
  return FoodDiary(std::move(catalog), std::move(entries), goals);
}

double mean_of(const FoodDiary& diary, Metric m, const DateRange& r) {
  double sum = 0.0;
  for (const auto& [date, v] : aggregate_range(diary, r)) sum += v[m];
  return sum / static_cast<double>(r.day_count());
}

// Quiz-relevant statuses must sit at least this many percentage points away
// from any classification boundary.
constexpr double kMarginPct = 0.5;

bool clear_of_band(double deviation_pct, double band) {
  return std::abs(std::abs(deviation_pct) - band) >= kMarginPct;
}

bool unique_top(const std::vector<FoodTotal>& foods, Metric m, double min_gap) {
  if (foods.empty()) return false;
  std::vector<double> amounts;
  for (const auto& f : foods) amounts.push_back(f.total[m]);
  std::sort(amounts.rbegin(), amounts.rend());
  return amounts.size() == 1 || amounts[0] - amounts[1] >= min_gap;
}

bool quiz_usable(const FoodDiary& diary) {
  const Thresholds th;
  const NutrientGoals& goals = diary.goals();
  const DateRange week1{kStart, kStart.plus_days(6)};
  const DateRange week2{kStart.plus_days(7), kStart.plus_days(13)};

  auto deviation = [&](Metric m, const DateRange& r) {
    return (mean_of(diary, m, r) - goals.target(m)) / goals.target(m) * 100.0;
  };

  bool excess_day = false, deficit_day = false;
  for (const auto& [date, v] : aggregate_range(diary, DateRange{kStart, kStart.plus_days(kDays - 1)})) {
    const double dev = (v[Metric::calories] - goals.target(Metric::calories)) /
                       goals.target(Metric::calories) * 100.0;
    excess_day |= dev > th.balance_band_pct;
    deficit_day |= dev < -th.balance_band_pct;
  }
  if (!excess_day || !deficit_day) return false;
  if (std::abs(deviation(Metric::calories, week1) - deviation(Metric::calories, week2)) <= 5.0) {
    return false;
  }

  // Busiest day, earliest on ties.
  Date quiz_day = kStart;
  std::size_t best = 0;
  for (int d = 0; d < kDays; ++d) {
    const Date date = kStart.plus_days(d);
    const auto n = static_cast<std::size_t>(std::count_if(
        diary.entries().begin(), diary.entries().end(),
        [&](const MealEntry& e) { return e.date == date; }));
    if (n > best) {
      best = n;
      quiz_day = date;
    }
  }

  for (Metric m : {Metric::calories, Metric::carbohydrates}) {
    if (!clear_of_band(deviation(m, DateRange::single(quiz_day)), th.balance_band_pct)) return false;
    if (!clear_of_band(deviation(m, week1), th.balance_band_pct)) return false;
    const double a = std::abs(mean_of(diary, m, week1) - goals.target(m));
    const double b = std::abs(mean_of(diary, m, week2) - goals.target(m));
    const double delta = th.compare_delta_frac * goals.target(m);
    if (std::abs(b - a) < delta + kMarginPct / 100.0 * goals.target(m)) return false;
  }

  const auto foods = foods_in_range(diary, DateRange::single(quiz_day));
  return unique_top(foods, Metric::calories, 1.0) && unique_top(foods, Metric::fat, 0.1);
}

}  // namespace

FoodDiary generate_sample_diary(std::uint64_t seed) {
  // Attempt k draws from splitmix64(seed + k * golden); the first candidate
  // meeting every non-degeneracy condition is returned.
  for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
    FoodDiary candidate = build_candidate(splitmix64(seed + attempt * 0x9E3779B97F4A7C15ull));
    if (quiz_usable(candidate)) return candidate;
  }
  throw ValidationError("no quiz-usable sample diary found for seed " + std::to_string(seed));
}

}  // namespace dietbot
