#include <doctest.h>

#include "dietbot/errors.hpp"
#include "dietbot/nlg.hpp"
#include "hygiene.hpp"

using namespace dietbot;

namespace {

std::string repeat(const std::string& s, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += s;
  return out;
}

InsightBundle bundle_for(const FoodDiary& d, IntentKind intent, MetricSet metrics, InsightKindSet kinds,
                         TemporalExpression time) {
  ParsedQuery q;
  q.intent = {intent, 1.0};
  q.metrics = std::move(metrics);
  q.insight_kinds = std::move(kinds);
  q.time = std::move(time);
  return build_bundle(d, q);
}

const DateRange kW1{Date{2021, 6, 7}, Date{2021, 6, 13}};
const DateRange kW2{Date{2021, 6, 14}, Date{2021, 6, 20}};

}  // namespace

TEST_CASE("realize") {
  CHECK(realize("Hi {name}!", {{"name", "Ana"}}) == "Hi Ana!");
  CHECK(realize("{a}{b}", {{"a", "1"}, {"b", "2"}}, "✅") == "12 ✅");
  CHECK(realize("no slots", {}) == "no slots");
  try {
    realize("Hi {name} and {other}", {{"name", "x"}});
    FAIL("expected RealizationError");
  } catch (const RealizationError& e) {
    CHECK(e.slot() == "other");
  }
  CHECK_THROWS_AS(realize("Hi {name", {{"name", "x"}}), RealizationError);
  CHECK_THROWS_AS(realize("Hi name}", {}), RealizationError);
  CHECK_THROWS_AS(realize("{x}", {{"x", "{y}"}}), RealizationError);
}

TEST_CASE("slot values") {
  const FoodDiary d = generate_sample_diary(1);
  const auto s = slots_for(assess_intake(d, Metric::sodium, kW1));
  CHECK(s.at("metric") == "sodium");
  CHECK(s.at("unit") == "mg");
  CHECK(s.at("when") == "from June 7 to June 13");
  CHECK(s.at("when_cap") == "From June 7 to June 13");
  CHECK(s.at("target") == "2300");
  CHECK((s.at("deviation_pct")[0] == '+' || s.at("deviation_pct")[0] == '-'));
  CHECK(slots_for(assess_intake(d, Metric::fat, DateRange::single(kW1.start()))).at("when") == "on June 7");
}

TEST_CASE("char_count and compute_delay") {
  CHECK(char_count("abc") == 3);
  CHECK(char_count("é✅") == 2);
  CHECK(compute_delay("") == 300);
  CHECK(compute_delay("abcd") == 360);
  CHECK(compute_delay(repeat("x", 146)) == 2490);
  CHECK(compute_delay(repeat("x", 147)) == 2500);
  CHECK(compute_delay(repeat("x", 450)) == 2500);
}

TEST_CASE("split") {
  CHECK(split("") == std::vector<std::string>{""});
  CHECK(split("One. Two.") == std::vector<std::string>{"One. Two."});

  const std::string sentence = repeat("word ", 39) + "end.";  // 199 chars
  const std::string text = sentence + " " + sentence + " " + sentence;
  const auto pieces = split(text);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0] == sentence + " " + sentence);
  CHECK(pieces[1] == sentence);

  const auto wrapped = split(repeat("abcdefghi ", 60));  // one 600-char "sentence"
  for (const auto& p : wrapped) CHECK(char_count(p) <= kMaxMessageChars);
  CHECK(wrapped.size() == 2);

  const auto cut = split(repeat("é", 500));
  REQUIRE(cut.size() == 2);
  CHECK(char_count(cut[0]) == 450);
  CHECK(char_count(cut[1]) == 50);

  // Newlines separate report lines and survive merging.
  CHECK(split("line one\nline two") == std::vector<std::string>{"line one\nline two"});
}

TEST_CASE("split property: pieces are bounded and lose nothing but separators") {
  std::mt19937_64 rng(8);
  const std::vector<std::string> words = {"kcal", "é", "June", "14.", "ok!", "why?", "\n", "✅", "longer-word"};
  for (int i = 0; i < 300; ++i) {
    std::string text;
    const int n = testing::uniform_int(rng, 0, 400);
    for (int k = 0; k < n; ++k) {
      if (k) text += ' ';
      text += words[static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(words.size()) - 1))];
    }
    std::string joined, original;
    for (const auto& p : split(text)) {
      CHECK(char_count(p) <= kMaxMessageChars);
      for (char c : p) {
        if (c != ' ' && c != '\n') joined += c;
      }
    }
    for (char c : text) {
      if (c != ' ' && c != '\n') original += c;
    }
    CHECK(joined == original);
  }
}

TEST_CASE("catalog hygiene") {
  const auto r = testing::check_catalog(TemplateCatalog::bundled());
  for (const auto& p : r.problems) CAPTURE(p);
  CHECK(r.problems.empty());
  CHECK(r.covered == testing::expected_assessment_keys());
  CHECK(r.realized > 40);
}

TEST_CASE("catalog loading errors") {
  using nlohmann::json;
  const json ok = {{"emoji", json::object()},
                   {"templates", {{{"kind", "a"}, {"variant", "b"}, {"patterns", {"x"}}}}}};
  CHECK(TemplateCatalog::from_json(ok).has("a", "b"));
  json dup = ok;
  dup["templates"].push_back(ok["templates"][0]);
  CHECK_THROWS_AS(TemplateCatalog::from_json(dup), ParseError);
  json none = ok;
  none["templates"][0]["patterns"] = json::array();
  CHECK_THROWS_AS(TemplateCatalog::from_json(none), ParseError);
  CHECK_THROWS_AS(TemplateCatalog::load("/nonexistent.json"), ParseError);
  CHECK_THROWS_AS(TemplateCatalog::bundled().get("intake", "sideways"), Error);
}

TEST_CASE("planner: basic report is text only") {
  const FoodDiary d = generate_sample_diary(1);
  const auto plan = Planner().plan(bundle_for(d, IntentKind::basic_report,
                                              {Metric::calories, Metric::carbohydrates}, {},
                                              {"this week", kW2, std::nullopt}));
  REQUIRE(plan.messages.size() == 1);
  const Message& m = plan.messages[0];
  CHECK(m.kind == MessageKind::text);
  CHECK(m.text.find('\n') != std::string::npos);
  REQUIRE(m.machine_payload.size() == 2);
  CHECK(m.machine_payload[0]["metric"] == "calories");
  CHECK(m.machine_payload[1]["metric"] == "carbohydrates");
  CHECK(m.delay_ms == compute_delay(m.text));
}

TEST_CASE("planner: advanced bundle order and charts") {
  const FoodDiary d = generate_sample_diary(1);
  const auto plan = Planner().plan(bundle_for(d, IntentKind::advanced_insight, {Metric::calories}, {},
                                              {"week 1", kW1, std::nullopt}));
  std::vector<std::string> shape;
  for (const auto& m : plan.messages) {
    std::string s(message_kind_id(m.kind));
    for (const auto& p : m.machine_payload) s += ":" + p["type"].get<std::string>();
    shape.push_back(s);
  }
  CHECK(shape == std::vector<std::string>{"text:intake", "chart:intake", "text:trend", "text:consistency",
                                          "chart:trend:consistency", "text:food_impact",
                                          "chart:food_impact"});
  for (const auto& m : plan.messages) {
    if (m.kind != MessageKind::chart) continue;
    REQUIRE(m.chart.has_value());
    CHECK(m.chart_id == chart_id(*m.chart));
  }
}

TEST_CASE("planner: comparisons share one grouped chart") {
  const FoodDiary d = generate_sample_diary(2);
  const auto plan = Planner().plan(bundle_for(d, IntentKind::compare, {Metric::calories, Metric::fat}, {},
                                              {"", kW1, kW2}));
  REQUIRE(plan.messages.size() == 3);
  CHECK(plan.messages[2].kind == MessageKind::chart);
  CHECK(plan.messages[2].chart->kind == ChartKind::grouped_bars);
  CHECK(plan.messages[2].machine_payload.size() == 2);
}

TEST_CASE("planner: notes and empty bundles") {
  const FoodDiary d = generate_sample_diary(1);
  const auto plan = Planner().plan(bundle_for(d, IntentKind::advanced_insight, {Metric::calories},
                                              {InsightKind::trend_consistency},
                                              {"", DateRange::single(kW1.start()), std::nullopt}));
  REQUIRE(plan.messages.size() == 1);
  CHECK(plan.messages[0].machine_payload[0]["type"] == "note");
  CHECK(plan.messages[0].text.find("June 7") != std::string::npos);

  const auto empty = Planner().plan(bundle_for(d, IntentKind::greet, {}, {}, {"", kW1, std::nullopt}));
  REQUIRE(empty.messages.size() == 1);
  CHECK(empty.messages[0].machine_payload[0]["variant"] == "empty_bundle");
}

TEST_CASE("planner: paraphrase choice is deterministic and varied") {
  const FoodDiary d = generate_sample_diary(3);
  const Planner p;
  std::set<std::string> openings;
  for (int day = 0; day < 14; ++day) {
    const DateRange r = DateRange::single(kW1.start().plus_days(day));
    const auto b = bundle_for(d, IntentKind::basic_report, {Metric::calories}, {}, {"", r, std::nullopt});
    const auto first = p.plan(b).messages[0].text;
    CHECK(first == p.plan(b).messages[0].text);
    openings.insert(first.substr(0, 4));
  }
  CHECK(openings.size() >= 2);
}

TEST_CASE("planner: ascii mode drops emoji") {
  const FoodDiary d = generate_sample_diary(1);
  const Planner ascii(TemplateCatalog::bundled(), NlgOptions{true});
  const auto b = bundle_for(d, IntentKind::advanced_insight, {Metric::calories, Metric::sugar}, {},
                            {"", kW2, std::nullopt});
  for (const auto& m : ascii.plan(b).messages) {
    for (unsigned char c : m.text) CHECK(c < 0x80);
  }
  bool any_emoji = false;
  for (const auto& m : Planner().plan(b).messages) {
    for (unsigned char c : m.text) any_emoji |= c >= 0x80;
  }
  CHECK(any_emoji);
}

TEST_CASE("buttons") {
  const Planner p;
  ButtonGroup g = p.default_buttons();
  REQUIRE(g.options.size() == 3);
  CHECK(g.selected().empty());
  g.toggle(InsightKind::food);
  g.toggle(InsightKind::intake);
  g.toggle(InsightKind::intake);
  CHECK(g.selected() == InsightKindSet{InsightKind::food});
  CHECK(buttons_from_json(buttons_to_json(g)) == g);

  const Message m = p.buttons_message(g, "updated");
  CHECK(m.kind == MessageKind::buttons);
  CHECK(m.text.find("Food analysis") != std::string::npos);
  CHECK(m.machine_payload[0]["type"] == "buttons");
  CHECK_THROWS_AS(buttons_from_json({{"options", {{{"insight", "tarot"}, {"label", "x"}, {"checked", false}}}},
                                     {"submit_label", "Go"}}),
                  ParseError);
}
