#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/date.hpp"
#include "dietbot/nutrients.hpp"

namespace dietbot {

enum class IntentKind {
  basic_report,
  advanced_insight,
  compare,
  more_insights,
  greet,
  help,
  out_of_scope
};

std::string_view intent_id(IntentKind k);
std::optional<IntentKind> intent_from_id(std::string_view id);

struct Intent {
  IntentKind kind = IntentKind::out_of_scope;
  double confidence = 0.0;  // 1.0 for a rule match, 0.0 for the fallback

  friend bool operator==(const Intent&, const Intent&) = default;
};

enum class InsightKind { intake, trend_consistency, food };

inline constexpr std::array<InsightKind, 3> kAllInsightKinds = {
    InsightKind::intake, InsightKind::trend_consistency, InsightKind::food};

std::string_view insight_kind_id(InsightKind k);
std::optional<InsightKind> insight_kind_from_id(std::string_view id);

/// Empty means "default" (calories).
using MetricSet = std::set<Metric>;
/// Empty means "not specified".
using InsightKindSet = std::set<InsightKind>;

struct Utterance {
  std::string text;
  Date reference_date;
  /// First diary day; anchors "week 1", "week 2". Without it those forms are unrecognized.
  std::optional<Date> diary_start;
};

struct TemporalExpression {
  std::string raw;
  DateRange first;
  std::optional<DateRange> second;  // set for comparisons; never equal to `first`

  bool is_pair() const { return second.has_value(); }
  friend bool operator==(const TemporalExpression&, const TemporalExpression&) = default;
};

struct TimeParse {
  std::optional<TemporalExpression> expression;
  bool needs_clarification = false;
  std::string diagnostic;
};

struct ParsedQuery {
  Intent intent;
  MetricSet metrics;
  InsightKindSet insight_kinds;
  std::optional<TemporalExpression> time;
  bool needs_clarification = false;
  std::string clarification;

  friend bool operator==(const ParsedQuery&, const ParsedQuery&) = default;
};

/// Intent patterns and synonym maps. Loaded from JSON; the bundled table is
/// compiled into the binary.
class NluRules {
 public:
  struct IntentRule {
    IntentKind intent;
    std::vector<std::vector<std::string>> phrases;  // token sequences
    bool match_entities = false;  // also fires when any metric or time is present
  };

  static const NluRules& bundled();
  static NluRules from_json(const nlohmann::json& doc);
  static NluRules load(const std::filesystem::path& path);

  /// Rules in priority order; first match wins.
  const std::vector<IntentRule>& intent_rules() const { return intent_rules_; }
  const std::vector<std::pair<std::vector<std::string>, Metric>>& metric_synonyms() const {
    return metric_synonyms_;
  }
  const std::vector<std::pair<std::vector<std::string>, InsightKind>>& insight_synonyms() const {
    return insight_synonyms_;
  }
  /// Right after a metric word ("sugar intake") these count only when no other insight kind is named.
  const std::vector<std::vector<std::string>>& weak_insight_cues() const { return weak_insight_cues_; }

 private:
  std::vector<IntentRule> intent_rules_;
  std::vector<std::pair<std::vector<std::string>, Metric>> metric_synonyms_;
  std::vector<std::pair<std::vector<std::string>, InsightKind>> insight_synonyms_;
  std::vector<std::vector<std::string>> weak_insight_cues_;
};

/// Lower-cased word tokens with byte offsets into the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<Token> tokenize(std::string_view text);

Intent classify_intent(const Utterance& u, const NluRules& rules = NluRules::bundled());
MetricSet extract_metrics(const Utterance& u, const NluRules& rules = NluRules::bundled());
InsightKindSet extract_insight_kinds(const Utterance& u,
                                     const NluRules& rules = NluRules::bundled());
TimeParse parse_time(const Utterance& u);
ParsedQuery parse_query(const Utterance& u, const NluRules& rules = NluRules::bundled());

nlohmann::json query_to_json(const ParsedQuery& q);
ParsedQuery query_from_json(const nlohmann::json& j);

}  // namespace dietbot
