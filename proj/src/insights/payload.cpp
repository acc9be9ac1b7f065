#include "dietbot/errors.hpp"
#include "dietbot/insights.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

json range_json(const DateRange& r) { return json::array({r.start().iso(), r.end().iso()}); }

DateRange range_of(const json& j) {
  auto s = Date::parse_iso(j.at(0).get<std::string>());
  auto e = Date::parse_iso(j.at(1).get<std::string>());
  if (!s || !e) throw ParseError("payload: malformed date range " + j.dump());
  return DateRange{*s, *e};
}

Metric metric_of(const json& j) {
  auto m = metric_from_id(j.at("metric").get<std::string>());
  if (!m) throw ParseError("payload: unknown metric " + j.at("metric").dump());
  return *m;
}

template <typename Enum, std::size_t N>
Enum enum_of(const json& j, const char* key, std::string_view (*name)(Enum)) {
  const std::string id = j.at(key).get<std::string>();
  for (std::size_t i = 0; i < N; ++i) {
    if (name(static_cast<Enum>(i)) == id) return static_cast<Enum>(i);
  }
  throw ParseError(std::string("payload: unknown ") + key + " '" + id + "'");
}

struct ToJson {
  json operator()(const IntakeAssessment& a) const {
    return {{"type", "intake"},          {"metric", metric_id(a.metric)},
            {"period", range_json(a.period)}, {"mean_daily", a.mean_daily},
            {"target", a.target},        {"deviation_pct", a.deviation_pct},
            {"status", status_id(a.status)}, {"daily", a.daily},
            {"empty", a.empty}};
  }
  json operator()(const TrendAssessment& t) const {
    return {{"type", "trend"},
            {"metric", metric_id(t.metric)},
            {"period", range_json(t.period)},
            {"slope", t.slope},
            {"target", t.target},
            {"period_status", status_id(t.period_status)},
            {"recommended_direction", direction_id(t.recommended_direction)},
            {"matches_recommendation", t.matches_recommendation},
            {"daily", t.daily}};
  }
  json operator()(const ConsistencyAssessment& c) const {
    return {{"type", "consistency"}, {"metric", metric_id(c.metric)},
            {"period", range_json(c.period)}, {"mean", c.mean},
            {"cv", c.cv},            {"consistent", c.consistent},
            {"daily", c.daily}};
  }
  json operator()(const FoodImpactRanking& r) const {
    json rows = json::array();
    for (const auto& row : r.ranked) {
      rows.push_back({{"food", row.food},
                      {"amount", row.amount},
                      {"share_pct", row.share_pct},
                      {"grams", row.grams}});
    }
    return {{"type", "food_impact"}, {"metric", metric_id(r.metric)},
            {"period", range_json(r.period)}, {"total", r.total},
            {"ranked", std::move(rows)}};
  }
  json operator()(const ComparisonResult& c) const {
    return {{"type", "comparison"},   {"metric", metric_id(c.metric)},
            {"period_a", range_json(c.period_a)}, {"period_b", range_json(c.period_b)},
            {"mean_a", c.mean_a},     {"mean_b", c.mean_b},
            {"target", c.target},     {"abs_dev_a", c.abs_dev_a},
            {"abs_dev_b", c.abs_dev_b}, {"verdict", verdict_id(c.verdict)}};
  }
};

}  // namespace

json assessment_to_json(const Assessment& a) { return std::visit(ToJson{}, a); }

Assessment assessment_from_json(const json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "intake") {
      IntakeAssessment a;
      a.metric = metric_of(j);
      a.period = range_of(j.at("period"));
      a.mean_daily = j.at("mean_daily").get<double>();
      a.target = j.at("target").get<double>();
      a.deviation_pct = j.at("deviation_pct").get<double>();
      a.status = enum_of<IntakeStatus, 3>(j, "status", status_id);
      a.daily = j.at("daily").get<std::vector<double>>();
      a.empty = j.at("empty").get<bool>();
      return a;
    }
    if (type == "trend") {
      TrendAssessment t;
      t.metric = metric_of(j);
      t.period = range_of(j.at("period"));
      t.slope = j.at("slope").get<double>();
      t.target = j.at("target").get<double>();
      t.period_status = enum_of<IntakeStatus, 3>(j, "period_status", status_id);
      t.recommended_direction = enum_of<Direction, 3>(j, "recommended_direction", direction_id);
      t.matches_recommendation = j.at("matches_recommendation").get<bool>();
      t.daily = j.at("daily").get<std::vector<double>>();
      return t;
    }
    if (type == "consistency") {
      ConsistencyAssessment c;
      c.metric = metric_of(j);
      c.period = range_of(j.at("period"));
      c.mean = j.at("mean").get<double>();
      c.cv = j.at("cv").get<double>();
      c.consistent = j.at("consistent").get<bool>();
      c.daily = j.at("daily").get<std::vector<double>>();
      return c;
    }
    if (type == "food_impact") {
      FoodImpactRanking r;
      r.metric = metric_of(j);
      r.period = range_of(j.at("period"));
      r.total = j.at("total").get<double>();
      for (const auto& row : j.at("ranked")) {
        r.ranked.push_back({row.at("food").get<std::string>(), row.at("amount").get<double>(),
                            row.at("share_pct").get<double>(), row.at("grams").get<double>()});
      }
      return r;
    }
    if (type == "comparison") {
      ComparisonResult c;
      c.metric = metric_of(j);
      c.period_a = range_of(j.at("period_a"));
      c.period_b = range_of(j.at("period_b"));
      c.mean_a = j.at("mean_a").get<double>();
      c.mean_b = j.at("mean_b").get<double>();
      c.target = j.at("target").get<double>();
      c.abs_dev_a = j.at("abs_dev_a").get<double>();
      c.abs_dev_b = j.at("abs_dev_b").get<double>();
      c.verdict = enum_of<Verdict, 3>(j, "verdict", verdict_id);
      return c;
    }
    throw ParseError("payload: unknown assessment type '" + type + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("payload: ") + e.what());
  }
}

}  // namespace dietbot
