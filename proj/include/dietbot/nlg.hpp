#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/chart.hpp"
#include "dietbot/insights.hpp"

namespace dietbot {

inline constexpr std::size_t kMaxMessageChars = 450;
inline constexpr int kMinDelayMs = 300;
inline constexpr int kMaxDelayMs = 2500;
inline constexpr int kDelayPerCharMs = 15;

/// Patterns for one (kind, variant) key, e.g. ("intake", "excess").
struct Template {
  std::string kind;
  std::string variant;
  std::vector<std::string> patterns;
};

/// Template records plus the status -> emoji map, loaded from JSON.
class TemplateCatalog {
 public:
  static const TemplateCatalog& bundled();
  static TemplateCatalog from_json(const nlohmann::json& doc);
  static TemplateCatalog load(const std::filesystem::path& path);

  /// Throws Error when the key is missing.
  const Template& get(std::string_view kind, std::string_view variant) const;
  bool has(std::string_view kind, std::string_view variant) const;
  const std::vector<Template>& all() const { return templates_; }
  /// Empty string when the key has no emoji.
  std::string emoji(std::string_view key) const;

 private:
  std::vector<Template> templates_;
  std::map<std::string, std::string, std::less<>> emoji_;
};

using SlotValues = std::map<std::string, std::string, std::less<>>;

/// Substitutes every {slot}. Throws RealizationError naming the first slot
/// with no value (or "{" for an unterminated brace). Appends " <emoji>" when given.
std::string realize(std::string_view pattern, const SlotValues& slots,
                    std::string_view emoji = {});

/// Template key for an assessment: kind and status/verdict variant.
std::pair<std::string, std::string> template_key(const Assessment& a);
/// Every slot value an assessment can fill.
SlotValues slots_for(const Assessment& a);
/// Emoji map key for an assessment's outcome.
std::string emoji_key(const Assessment& a);

/// Unicode code points in a UTF-8 string.
std::size_t char_count(std::string_view utf8);
/// Greedy split at sentence boundaries (". ", "! ", "? ", newlines) into pieces of
/// at most kMaxMessageChars; an over-long sentence is wrapped at its last space.
std::vector<std::string> split(std::string_view text);
/// clamp(300 + 15 * chars, 300, 2500).
int compute_delay(std::string_view text);

struct ButtonOption {
  InsightKind kind;
  std::string label;
  bool checked = false;

  friend bool operator==(const ButtonOption&, const ButtonOption&) = default;
};

struct ButtonGroup {
  std::vector<ButtonOption> options;  // one per advanced insight
  std::string submit_label;

  void toggle(InsightKind kind);
  InsightKindSet selected() const;

  friend bool operator==(const ButtonGroup&, const ButtonGroup&) = default;
};

enum class MessageKind { text, chart, buttons };
std::string_view message_kind_id(MessageKind k);

struct Message {
  MessageKind kind = MessageKind::text;
  std::string text;  // realized text; chart caption for charts; prompt for buttons
  std::optional<ChartSpec> chart;
  std::string chart_id;
  std::optional<ButtonGroup> buttons;
  int delay_ms = kMinDelayMs;
  nlohmann::json machine_payload = nlohmann::json::array();
};

struct MessagePlan {
  std::vector<Message> messages;
};

struct NlgOptions {
  bool ascii_only = false;  // drop emojis
};

/// Plans and realizes outbound messages. Pure over an immutable catalog.
class Planner {
 public:
  explicit Planner(const TemplateCatalog& catalog = TemplateCatalog::bundled(),
                   NlgOptions options = {})
      : catalog_(&catalog), options_(options) {}

  /// Document order: intake, trend/consistency, food, comparison, then notes.
  /// Basic reports are text only; other bundles pair each text with a chart.
  MessagePlan plan(const InsightBundle& bundle) const;

  /// Text messages from a system template (greeting, help, clarification, ...).
  std::vector<Message> say(std::string_view kind, std::string_view variant,
                           const SlotValues& slots = {},
                           nlohmann::json payload = nlohmann::json::array()) const;

  /// Fresh group listing all advanced insights, unchecked.
  ButtonGroup default_buttons() const;
  Message buttons_message(const ButtonGroup& group, std::string_view variant) const;

  /// Picks one of the key's paraphrases by a stable hash of `seed_text`.
  std::string realize_key(std::string_view kind, std::string_view variant,
                          const SlotValues& slots, std::string_view seed_text,
                          std::string_view emoji = {}) const;

  const TemplateCatalog& catalog() const { return *catalog_; }
  const NlgOptions& options() const { return options_; }

 private:
  std::string realize_assessment(const Assessment& a) const;
  Message chart_message(ChartSpec spec, nlohmann::json payload) const;
  void emit_text(std::string_view text, const nlohmann::json& payload, MessagePlan& out) const;

  const TemplateCatalog* catalog_;
  NlgOptions options_;
};

nlohmann::json buttons_to_json(const ButtonGroup& g);
ButtonGroup buttons_from_json(const nlohmann::json& j);

}  // namespace dietbot
