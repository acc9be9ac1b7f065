#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "dietbot/errors.hpp"
#include "dietbot/service.hpp"
#include "support.hpp"

using namespace dietbot;
using nlohmann::json;

namespace {

std::set<std::string> payload_types(const std::vector<json>& messages) {
  std::set<std::string> out;
  for (const auto& m : messages) {
    for (const auto& p : m["machine_payload"]) out.insert(p["type"].get<std::string>());
  }
  return out;
}

bool has_variant(const std::vector<json>& messages, const std::string& type, const std::string& variant) {
  for (const auto& m : messages) {
    for (const auto& p : m["machine_payload"]) {
      if (p["type"] == type && p.value("variant", "") == variant) return true;
    }
  }
  return false;
}

/// Texts that reach each intent, plus a malformed date.
const std::vector<std::string> kTexts = {
    "hello",
    "help",
    "How were my calories this week?",
    "tell me more about this",
    "Compare my sugar between week 1 and week 2",
    "what's the weather like?",
    "How was my fat on February 30?",
    "",
};

std::vector<InboundEvent> all_events() {
  std::vector<InboundEvent> out;
  for (const auto& t : kTexts) out.push_back(InboundEvent::user_text(t));
  for (InsightKind k : kAllInsightKinds) out.push_back(InboundEvent::toggle(k));
  out.push_back(InboundEvent::submit());
  return out;
}

/// Independent model of the mode transitions.
Mode expected_mode(Mode before, const InboundEvent& e, bool selection_empty) {
  switch (e.type) {
    case InboundEvent::Type::user_text:
      return e.text == "tell me more about this" ? Mode::awaiting_button_submit : Mode::idle;
    case InboundEvent::Type::button_toggle: return before;
    case InboundEvent::Type::button_submit:
      return before == Mode::awaiting_button_submit && selection_empty ? before : Mode::idle;
  }
  return before;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("dietbot_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sessions open with a greeting and are independent") {
  ChatService svc;
  const auto a = svc.create_session(DiarySource::from_seed(7));
  const auto b = svc.create_session(DiarySource::from_seed(7));
  CHECK(a.session_id != b.session_id);
  REQUIRE_FALSE(a.messages.empty());
  CHECK(has_variant(a.messages, "greeting", "default"));
  CHECK(a.messages == b.messages);

  svc.handle_event(a.session_id, InboundEvent::user_text("tell me more about this"));
  CHECK(svc.state(a.session_id).mode == Mode::awaiting_button_submit);
  CHECK(svc.state(b.session_id).mode == Mode::idle);
  CHECK(svc.transcript(b.session_id).turns.size() == 1);
  CHECK(svc.transcript(a.session_id).turns.size() == 2);
}

TEST_CASE("default reference date is the last diary day") {
  ChatService svc;
  const auto s = svc.create_session(DiarySource::from_seed(1));
  CHECK(svc.transcript(s.session_id).reference_date == Date{2021, 6, 20});
  const auto t = svc.create_session(DiarySource::from_seed(1), Date{2021, 6, 16});
  const auto msgs = svc.handle_event(t.session_id, InboundEvent::user_text("How were my calories this week?"));
  bool saw = false;
  for (const auto& m : msgs) {
    for (const auto& p : m["machine_payload"]) {
      if (p["type"] == "intake") {
        CHECK(p["period"][0] == "2021-06-14");
        CHECK(p["period"][1] == "2021-06-20");
        saw = true;
      }
    }
  }
  CHECK(saw);
}

TEST_CASE("session creation and lookup errors") {
  ChatService svc;
  CHECK_THROWS_AS(svc.create_session(DiarySource::from_path("/nonexistent/diary.json")), Error);
  CHECK_THROWS_AS(svc.create_session(DiarySource{}), ValidationError);
  CHECK_THROWS_AS(svc.handle_event("nope", InboundEvent::submit()), SessionError);
  CHECK_THROWS_AS(svc.transcript("nope"), SessionError);
  CHECK_THROWS_AS(svc.state("nope"), SessionError);
  CHECK_FALSE(svc.chart_svg("0000000000000000"));
}

TEST_CASE("diary files load through DiarySource") {
  TempDir tmp;
  const auto file = tmp.path / "d.json";
  std::ofstream(file) << diary_to_json(generate_sample_diary(4)).dump();
  ChatService svc;
  const auto s = svc.create_session(DiarySource::from_path(file));
  CHECK(svc.transcript(s.session_id).source.diary.has_value());
  std::ofstream(tmp.path / "bad.json") << "{\"catalog\": [";
  CHECK_THROWS_AS(svc.create_session(DiarySource::from_path(tmp.path / "bad.json")), ParseError);
}

TEST_CASE("every (mode, event) pair yields messages and the modeled mode") {
  for (Mode start : {Mode::idle, Mode::awaiting_button_submit}) {
    for (bool with_selection : {false, true}) {
      for (const InboundEvent& e : all_events()) {
        ChatService svc;
        const auto id = svc.create_session(DiarySource::from_seed(3)).session_id;
        if (start == Mode::awaiting_button_submit) {
          svc.handle_event(id, InboundEvent::user_text("tell me more about this"));
          if (with_selection) svc.handle_event(id, InboundEvent::toggle(InsightKind::food));
        }
        REQUIRE(svc.state(id).mode == start);
        const bool empty = svc.state(id).pending.selected().empty();
        CAPTURE(event_to_json(e).dump());
        CAPTURE(mode_id(start));
        std::vector<json> out;
        REQUIRE_NOTHROW(out = svc.handle_event(id, e));
        CHECK_FALSE(out.empty());
        CHECK(svc.state(id).mode == expected_mode(start, e, empty));
        for (const auto& m : out) {
          CHECK(m["delay_ms"].get<int>() >= kMinDelayMs);
          CHECK(m["delay_ms"].get<int>() <= kMaxDelayMs);
        }
      }
    }
  }
}

TEST_CASE("guided buttons deliver exactly the selected insights") {
  ChatService svc;
  const auto id = svc.create_session(DiarySource::from_seed(1)).session_id;
  svc.handle_event(id, InboundEvent::user_text("How was my fat in week 1?"));
  const auto prompt = svc.handle_event(id, InboundEvent::user_text("tell me more about this"));
  CHECK(payload_types(prompt) == std::set<std::string>{"buttons"});

  svc.handle_event(id, InboundEvent::toggle(InsightKind::food));
  const auto updated = svc.handle_event(id, InboundEvent::toggle(InsightKind::intake));
  REQUIRE(updated.size() == 1);
  const auto& options = updated[0]["buttons"]["options"];
  int checked = 0;
  for (const auto& o : options) checked += o["checked"].get<bool>();
  CHECK(checked == 2);

  const auto out = svc.handle_event(id, InboundEvent::submit());
  CHECK(payload_types(out) == std::set<std::string>{"intake", "food_impact"});
  for (const auto& m : out) {
    for (const auto& p : m["machine_payload"]) {
      CHECK(p["metric"] == "fat");
      CHECK(p["period"][0] == "2021-06-07");
    }
  }
  CHECK(svc.state(id).mode == Mode::idle);
}

TEST_CASE("empty submit keeps waiting; text abandons the selection") {
  ChatService svc;
  const auto id = svc.create_session(DiarySource::from_seed(2)).session_id;
  svc.handle_event(id, InboundEvent::user_text("anything else?"));
  const auto empty = svc.handle_event(id, InboundEvent::submit());
  CHECK(has_variant(empty, "buttons", "empty_selection"));
  CHECK(svc.state(id).mode == Mode::awaiting_button_submit);

  svc.handle_event(id, InboundEvent::toggle(InsightKind::trend_consistency));
  svc.handle_event(id, InboundEvent::user_text("How were my carbs yesterday?"));
  CHECK(svc.state(id).mode == Mode::idle);
  const auto late = svc.handle_event(id, InboundEvent::submit());
  CHECK(has_variant(late, "buttons", "idle"));
  CHECK(payload_types(late) == std::set<std::string>{"buttons"});
}

TEST_CASE("follow-ups reuse the previous period") {
  ChatService svc;
  const auto id = svc.create_session(DiarySource::from_seed(5)).session_id;
  svc.handle_event(id, InboundEvent::user_text("How were my calories on June 9?"));
  const auto out = svc.handle_event(id, InboundEvent::user_text("and my sodium?"));
  bool saw = false;
  for (const auto& m : out) {
    for (const auto& p : m["machine_payload"]) {
      if (p["type"] != "intake") continue;
      CHECK(p["metric"] == "sodium");
      CHECK(p["period"][0] == "2021-06-09");
      saw = true;
    }
  }
  CHECK(saw);
}

TEST_CASE("wire round trips") {
  for (const InboundEvent& e : all_events()) CHECK(event_from_json(event_to_json(e)) == e);
  CHECK_THROWS_AS(event_from_json(json::parse(R"({"type":"button_toggle","insight":"tarot"})")), ParseError);
  CHECK_THROWS_AS(event_from_json(json::parse(R"({"type":"shout"})")), ParseError);
  CHECK_THROWS_AS(event_from_json(json::parse(R"([1])")), ParseError);
  CHECK_THROWS_AS(event_from_json(json::parse(R"({"type":"user_text"})")), ParseError);

  ChatService svc;
  const auto id = svc.create_session(DiarySource::from_seed(9)).session_id;
  for (const auto& e : all_events()) svc.handle_event(id, e);
  const Transcript t = svc.transcript(id);
  CHECK(transcript_from_json(json::parse(transcript_to_json(t).dump())) == t);
  CHECK_THROWS_AS(transcript_from_json(json::parse(R"({"session_id":"x"})")), ParseError);
}

TEST_CASE("replay reproduces random conversations") {
  std::mt19937_64 rng(77);
  const auto events = all_events();
  ChatService svc;
  for (int round = 0; round < 25; ++round) {
    const auto seed = static_cast<std::uint64_t>(testing::uniform_int(rng, 1, 1000));
    const auto id = svc.create_session(DiarySource::from_seed(seed)).session_id;
    Mode model = Mode::idle;
    const int n = testing::uniform_int(rng, 1, 12);
    for (int k = 0; k < n; ++k) {
      const auto& e = events[static_cast<std::size_t>(testing::uniform_int(rng, 0, static_cast<int>(events.size()) - 1))];
      const bool empty = svc.state(id).pending.selected().empty();
      CHECK_FALSE(svc.handle_event(id, e).empty());
      model = expected_mode(model, e, empty);
      CHECK(svc.state(id).mode == model);
    }
    const Transcript original = svc.transcript(id);
    Transcript again = svc.replay(original);
    CHECK(again.session_id != original.session_id);
    again.session_id = original.session_id;
    CHECK(again == original);
  }
}

TEST_CASE("charts are served from the store") {
  ChatService svc;
  const auto id = svc.create_session(DiarySource::from_seed(1)).session_id;
  const auto out = svc.handle_event(id, InboundEvent::user_text("Compare my calories between week 1 and week 2"));
  int charts = 0;
  for (const auto& m : out) {
    if (m["kind"] != "chart") continue;
    ++charts;
    const auto svg = svc.chart_svg(m["chart_id"].get<std::string>());
    REQUIRE(svg.has_value());
    CHECK(svg->find("<svg") != std::string::npos);
  }
  CHECK(charts == 1);
}

TEST_CASE("concurrent sessions") {
  ChatService svc;
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) ids.push_back(svc.create_session(DiarySource::from_seed(1)).session_id);
  std::vector<std::thread> pool;
  for (const auto& id : ids) {
    pool.emplace_back([&svc, id] {
      for (int k = 0; k < 5; ++k) {
        svc.handle_event(id, InboundEvent::user_text("How were my calories this week?"));
        svc.handle_event(id, InboundEvent::user_text("tell me more about this"));
        svc.handle_event(id, InboundEvent::toggle(InsightKind::food));
        svc.handle_event(id, InboundEvent::submit());
      }
    });
  }
  for (auto& t : pool) t.join();
  const auto reference = svc.transcript(ids[0]).turns;
  for (const auto& id : ids) {
    CHECK(svc.transcript(id).turns.size() == 21);
    CHECK(svc.transcript(id).turns == reference);
  }
}

TEST_CASE("configuration") {
  ServiceConfig c;
  c.port = 9090;
  c.ascii_only = true;
  c.thresholds.balance_band_pct = 20.0;
  c.transcript_log = "/tmp/x.jsonl";
  CHECK(config_from_json(config_to_json(c)) == c);
  CHECK(config_from_json(json::object()) == ServiceConfig{});
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"prot": 1})")), ParseError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"port": 70000})")), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"port": "x"})")), ParseError);
  CHECK_THROWS_AS(load_config("/nonexistent.json"), ParseError);
}

TEST_CASE("ascii sessions and the transcript log") {
  TempDir tmp;
  ServiceConfig c;
  c.ascii_only = true;
  c.transcript_log = tmp.path / "log.jsonl";
  ChatService svc(c);
  const auto id = svc.create_session(DiarySource::from_seed(1)).session_id;
  svc.handle_event(id, InboundEvent::user_text("How were my calories and sugar this week?"));
  svc.handle_event(id, InboundEvent::user_text("thanks"));

  std::ifstream in(*c.transcript_log);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    CHECK(j["session_id"] == id);
    for (const auto& m : j["messages"]) {
      for (unsigned char ch : m.value("text", std::string())) CHECK(ch < 0x80);
    }
    ++lines;
  }
  CHECK(lines == 3);
}
