#include <fstream>
#include <sstream>

#include "dietbot/diary.hpp"
#include "dietbot/errors.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

double require_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  if (!it->is_number()) throw ParseError(where + "." + key + ": expected a number");
  return it->get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  if (!it->is_string()) throw ParseError(where + "." + key + ": expected a string");
  return it->get<std::string>();
}

const json& require_array(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing top-level field '") + key + "'");
  if (!it->is_array()) throw ParseError(std::string(key) + ": expected an array");
  return *it;
}

// nlohmann reports a byte offset; translate it to line:column for humans.
std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json nutrients_to_json(const NutrientVector& v) {
  json j = json::object();
  for (Metric m : kAllMetrics) j[std::string(metric_id(m))] = v[m];
  return j;
}

NutrientVector nutrients_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  NutrientVector v;
  for (Metric m : kAllMetrics) {
    std::string key(metric_id(m));
    v[m] = require_number(j, key.c_str(), where);
    if (v[m] < 0.0) throw ValidationError(where + "." + key + ": negative quantity");
  }
  return v;
}

json diary_to_json(const FoodDiary& diary) {
  json catalog = json::array();
  for (const FoodItem& f : diary.catalog()) {
    catalog.push_back({{"name", f.name}, {"per100g", nutrients_to_json(f.per100g)}});
  }
  json entries = json::array();
  for (const MealEntry& e : diary.entries()) {
    entries.push_back({{"date", e.date.iso()},
                       {"slot", std::string(slot_id(e.slot))},
                       {"food", e.food},
                       {"grams", e.grams}});
  }
  return {{"catalog", std::move(catalog)},
          {"goals", {{"daily_target", nutrients_to_json(diary.goals().daily_target)}}},
          {"entries", std::move(entries)}};
}

FoodDiary diary_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("diary document must be a JSON object");

  std::vector<FoodItem> catalog;
  const json& jcat = require_array(doc, "catalog");
  for (std::size_t i = 0; i < jcat.size(); ++i) {
    std::string where = "catalog[" + std::to_string(i) + "]";
    const json& item = jcat[i];
    if (!item.is_object()) throw ParseError(where + ": expected an object");
    auto per = item.find("per100g");
    if (per == item.end()) throw ParseError(where + ": missing field 'per100g'");
    catalog.push_back({require_string(item, "name", where),
                       nutrients_from_json(*per, where + ".per100g")});
  }

  NutrientGoals goals;
  if (auto g = doc.find("goals"); g != doc.end() && !g->is_null()) {
    if (!g->is_object()) throw ParseError("goals: expected an object");
    if (auto t = g->find("daily_target"); t != g->end()) {
      goals.daily_target = nutrients_from_json(*t, "goals.daily_target");
    }
  }

  std::vector<MealEntry> entries;
  const json& jent = require_array(doc, "entries");
  for (std::size_t i = 0; i < jent.size(); ++i) {
    std::string where = "entries[" + std::to_string(i) + "]";
    const json& item = jent[i];
    if (!item.is_object()) throw ParseError(where + ": expected an object");
    MealEntry e;
    std::string date = require_string(item, "date", where);
    auto parsed = Date::parse_iso(date);
    if (!parsed) throw ParseError(where + ".date: '" + date + "' is not a YYYY-MM-DD date");
    e.date = *parsed;
    std::string slot = require_string(item, "slot", where);
    auto s = slot_from_id(slot);
    if (!s) throw ParseError(where + ".slot: unknown meal slot '" + slot + "'");
    e.slot = *s;
    e.food = require_string(item, "food", where);
    e.grams = require_number(item, "grams", where);
    if (e.grams <= 0.0) throw ValidationError(where + ".grams: must be positive");
    entries.push_back(std::move(e));
  }

  return FoodDiary(std::move(catalog), std::move(entries), goals);
}

std::string serialize_diary(const FoodDiary& diary) { return diary_to_json(diary).dump(2) + "\n"; }

FoodDiary parse_diary(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("diary syntax error at " + locate(text, e.byte) + ": " + e.what());
  }
  return diary_from_json(doc);
}

FoodDiary load_diary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open diary file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_diary(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace dietbot
