#include "dietbot/errors.hpp"
#include "dietbot/service.hpp"

namespace dietbot {

using nlohmann::json;

std::string_view mode_id(Mode m) {
  return m == Mode::idle ? "idle" : "awaiting_button_submit";
}

json event_to_json(const InboundEvent& e) {
  switch (e.type) {
    case InboundEvent::Type::user_text: return {{"type", "user_text"}, {"text", e.text}};
    case InboundEvent::Type::button_toggle:
      return {{"type", "button_toggle"}, {"insight", insight_kind_id(e.insight)}};
    case InboundEvent::Type::button_submit: return {{"type", "button_submit"}};
  }
  return nullptr;
}

InboundEvent event_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("malformed event: expected an object with a string \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "user_text") {
    if (!j.contains("text") || !j["text"].is_string()) {
      throw ParseError("malformed event: user_text needs a string \"text\"");
    }
    return InboundEvent::user_text(j["text"].get<std::string>());
  }
  if (type == "button_toggle") {
    if (!j.contains("insight") || !j["insight"].is_string()) {
      throw ParseError("malformed event: button_toggle needs a string \"insight\"");
    }
    auto kind = insight_kind_from_id(j["insight"].get<std::string>());
    if (!kind) throw ParseError("malformed event: unknown insight " + j["insight"].dump());
    return InboundEvent::toggle(*kind);
  }
  if (type == "button_submit") return InboundEvent::submit();
  throw ParseError("malformed event: unknown type \"" + type + "\"");
}

json message_to_wire(const Message& m) {
  json j = {{"kind", message_kind_id(m.kind)}};
  if (!m.text.empty()) j["text"] = m.text;
  if (m.kind == MessageKind::chart) j["chart_id"] = m.chart_id;
  if (m.buttons) j["buttons"] = buttons_to_json(*m.buttons);
  j["delay_ms"] = m.delay_ms;
  j["machine_payload"] = m.machine_payload;
  return j;
}

DiarySource DiarySource::from_path(const std::filesystem::path& p) {
  return from_diary(load_diary(p));
}

FoodDiary DiarySource::load() const {
  if (seed && diary) throw ValidationError("diary source: give either a seed or a diary, not both");
  if (seed) return generate_sample_diary(*seed);
  if (diary) return diary_from_json(*diary);
  throw ValidationError("diary source: a seed or a diary is required");
}

json transcript_to_json(const Transcript& t) {
  json source = json::object();
  if (t.source.seed) source["seed"] = *t.source.seed;
  if (t.source.diary) source["diary"] = *t.source.diary;
  json turns = json::array();
  for (const Turn& turn : t.turns) {
    turns.push_back({{"event", turn.event ? event_to_json(*turn.event) : json(nullptr)},
                     {"messages", turn.messages}});
  }
  return {{"session_id", t.session_id},
          {"source", std::move(source)},
          {"reference_date", t.reference_date.iso()},
          {"turns", std::move(turns)}};
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  try {
    t.session_id = j.at("session_id").get<std::string>();
    const json& source = j.at("source");
    if (source.contains("seed")) t.source.seed = source["seed"].get<std::uint64_t>();
    if (source.contains("diary")) t.source.diary = source["diary"];
    auto ref = Date::parse_iso(j.at("reference_date").get<std::string>());
    if (!ref) throw ParseError("transcript: malformed reference_date");
    t.reference_date = *ref;
    for (const json& turn : j.at("turns")) {
      Turn out;
      if (!turn.at("event").is_null()) out.event = event_from_json(turn["event"]);
      for (const json& m : turn.at("messages")) out.messages.push_back(m);
      t.turns.push_back(std::move(out));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed transcript: ") + e.what());
  }
  return t;
}

}  // namespace dietbot
