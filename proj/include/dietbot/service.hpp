#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/diary.hpp"
#include "dietbot/nlg.hpp"
#include "dietbot/nlu.hpp"
#include "dietbot/thresholds.hpp"

namespace dietbot {

struct ServiceConfig {
  int port = 8080;
  bool ascii_only = false;
  Thresholds thresholds;
  std::optional<std::filesystem::path> templates_path;  // bundled catalog when absent
  std::optional<std::filesystem::path> rules_path;      // bundled NLU rules when absent
  std::optional<std::filesystem::path> transcript_log;  // append-only JSON lines

  friend bool operator==(const ServiceConfig&, const ServiceConfig&) = default;
};

nlohmann::json config_to_json(const ServiceConfig& c);
/// Unknown keys are rejected so typos do not silently fall back to defaults.
ServiceConfig config_from_json(const nlohmann::json& j);
ServiceConfig load_config(const std::filesystem::path& path);

enum class Mode { idle, awaiting_button_submit };
std::string_view mode_id(Mode m);

struct ConversationState {
  Mode mode = Mode::idle;
  std::optional<ParsedQuery> last_query;
  ButtonGroup pending;  // meaningful only while awaiting_button_submit
};

struct InboundEvent {
  enum class Type { user_text, button_toggle, button_submit };
  Type type = Type::user_text;
  std::string text;                   // user_text
  InsightKind insight = InsightKind::intake;  // button_toggle

  static InboundEvent user_text(std::string text) { return {Type::user_text, std::move(text), {}}; }
  static InboundEvent toggle(InsightKind k) { return {Type::button_toggle, {}, k}; }
  static InboundEvent submit() { return {Type::button_submit, {}, {}}; }

  friend bool operator==(const InboundEvent&, const InboundEvent&) = default;
};

nlohmann::json event_to_json(const InboundEvent& e);
/// Throws ParseError for a malformed event.
InboundEvent event_from_json(const nlohmann::json& j);

/// Wire form: {kind, text?, chart_id?, buttons?, delay_ms, machine_payload}.
nlohmann::json message_to_wire(const Message& m);

/// Where a session's diary came from; kept so a transcript can be replayed.
struct DiarySource {
  std::optional<std::uint64_t> seed;
  std::optional<nlohmann::json> diary;  // inline diary document

  static DiarySource from_seed(std::uint64_t s) { return {s, std::nullopt}; }
  static DiarySource from_diary(const FoodDiary& d) { return {std::nullopt, diary_to_json(d)}; }
  /// Reads and validates a diary file; the transcript stores its contents.
  static DiarySource from_path(const std::filesystem::path& p);

  FoodDiary load() const;
  friend bool operator==(const DiarySource&, const DiarySource&) = default;
};

struct Turn {
  std::optional<InboundEvent> event;  // absent for the opening greeting
  std::vector<nlohmann::json> messages;  // wire form

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Transcript {
  std::string session_id;
  DiarySource source;
  Date reference_date;
  std::vector<Turn> turns;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

nlohmann::json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

/// One conversation. Not synchronized; ChatService serializes access.
class Session {
 public:
  Session(std::string id, DiarySource source, std::optional<Date> reference_date,
          const Planner& planner, const NluRules& rules, Thresholds thresholds);

  const std::string& id() const { return transcript_.session_id; }
  const FoodDiary& diary() const { return diary_; }
  const ConversationState& state() const { return state_; }
  const Transcript& transcript() const { return transcript_; }

  /// Runs one transition. Always yields at least one message.
  std::vector<Message> handle(const InboundEvent& event);

 private:
  std::vector<Message> on_text(const std::string& text);
  std::vector<Message> on_toggle(InsightKind kind);
  std::vector<Message> on_submit();
  std::vector<Message> answer(const ParsedQuery& q);
  ParsedQuery base_query() const;
  void record(std::optional<InboundEvent> event, const std::vector<Message>& messages);

  FoodDiary diary_;
  Date reference_date_;
  const Planner* planner_;
  const NluRules* rules_;
  Thresholds thresholds_;
  ConversationState state_;
  Transcript transcript_;
};

/// Session registry plus chart store. Thread-safe; events for one session run serially.
class ChatService {
 public:
  explicit ChatService(ServiceConfig config = {});
  ~ChatService();

  struct Created {
    std::string session_id;
    std::vector<nlohmann::json> messages;
  };

  /// Throws Error subclasses with diagnostics when the diary cannot be loaded.
  Created create_session(const DiarySource& source, std::optional<Date> reference_date = {});
  /// Throws SessionError for an unknown id.
  std::vector<nlohmann::json> handle_event(const std::string& session_id, const InboundEvent& event);
  Transcript transcript(const std::string& session_id) const;
  ConversationState state(const std::string& session_id) const;
  /// SVG for a chart emitted by any session; nullopt when unknown.
  std::optional<std::string> chart_svg(const std::string& chart_id) const;

  /// Fresh session with the transcript's diary and date, fed its events in order.
  Transcript replay(const Transcript& t);

  const ServiceConfig& config() const { return config_; }

 private:
  struct Slot {
    std::mutex mu;
    std::unique_ptr<Session> session;
  };
  std::shared_ptr<Slot> find(const std::string& id) const;
  std::vector<nlohmann::json> publish(const Session& s, const std::vector<Message>& messages);
  void log_turn(const Session& s);

  ServiceConfig config_;
  std::optional<TemplateCatalog> own_catalog_;
  std::optional<NluRules> own_rules_;
  std::unique_ptr<Planner> planner_;
  const NluRules* rules_;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::map<std::string, ChartSpec> charts_;
  std::uint64_t next_id_ = 1;
  std::mutex log_mu_;
};

/// Blocking HTTP server over `service`. Returns when stop() is called.
class HttpServer {
 public:
  explicit HttpServer(ChatService& service);
  ~HttpServer();
  /// Binds host:port (port 0 picks a free one) and serves until stop().
  bool listen(const std::string& host, int port);
  /// Binds to a free port and returns it; call serve() afterwards.
  int bind_any(const std::string& host);
  bool serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dietbot
