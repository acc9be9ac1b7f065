#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "dietbot/diary.hpp"
#include "dietbot/errors.hpp"
#include "dietbot/nlu.hpp"

namespace dietbot {

namespace embedded {
extern const std::string_view kNluRules;
}

namespace {

constexpr std::array<std::string_view, 7> kIntentIds = {
    "basic_report", "advanced_insight", "compare", "more_insights",
    "greet",        "help",             "out_of_scope"};
constexpr std::array<std::string_view, 3> kInsightIds = {"intake", "trend_consistency", "food"};

std::vector<std::string> phrase_tokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (Token& t : tokenize(phrase)) out.push_back(std::move(t.text));
  if (out.empty()) throw ParseError("empty phrase in NLU rules");
  return out;
}

bool matches_at(const std::vector<Token>& tokens, std::size_t i, const std::vector<std::string>& seq) {
  if (i + seq.size() > tokens.size()) return false;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (tokens[i + k].text != seq[k]) return false;
  }
  return true;
}

bool contains_sequence(const std::vector<Token>& tokens, const std::vector<std::string>& seq) {
  for (std::size_t i = 0; i + seq.size() <= tokens.size(); ++i) {
    if (matches_at(tokens, i, seq)) return true;
  }
  return false;
}

/// True when some metric synonym ends right before token `i`.
bool after_metric(const std::vector<Token>& tokens, std::size_t i, const NluRules& rules) {
  for (const auto& [seq, metric] : rules.metric_synonyms()) {
    if (seq.size() <= i && matches_at(tokens, i - seq.size(), seq)) return true;
  }
  return false;
}

}  // namespace

std::string_view intent_id(IntentKind k) { return kIntentIds[static_cast<std::size_t>(k)]; }

std::optional<IntentKind> intent_from_id(std::string_view id) {
  for (std::size_t i = 0; i < kIntentIds.size(); ++i) {
    if (kIntentIds[i] == id) return static_cast<IntentKind>(i);
  }
  return std::nullopt;
}

std::string_view insight_kind_id(InsightKind k) { return kInsightIds[static_cast<std::size_t>(k)]; }

std::optional<InsightKind> insight_kind_from_id(std::string_view id) {
  for (std::size_t i = 0; i < kInsightIds.size(); ++i) {
    if (kInsightIds[i] == id) return static_cast<InsightKind>(i);
  }
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view text) {
  // Word characters are ASCII alphanumerics; '-' is kept inside a token only
  // between two alphanumerics so ISO dates survive as one token.
  auto is_word = [](unsigned char c) { return std::isalnum(c) != 0; };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size()) {
      auto c = static_cast<unsigned char>(text[j]);
      if (is_word(c) || (c == '-' && j + 1 < text.size() &&
                         is_word(static_cast<unsigned char>(text[j + 1])) && j > i)) {
        ++j;
      } else if (c == '\'' && j + 1 < text.size() &&
                 std::isalpha(static_cast<unsigned char>(text[j + 1]))) {
        ++j;  // "what's", "i've"
      } else {
        break;
      }
    }
    out.push_back({to_lower(text.substr(i, j - i)), i, j});
    i = j;
  }
  return out;
}

NluRules NluRules::from_json(const nlohmann::json& doc) {
  NluRules rules;
  try {
    std::set<IntentKind> seen;
    for (const auto& jr : doc.at("intents")) {
      std::string id = jr.at("intent").get<std::string>();
      auto kind = intent_from_id(id);
      if (!kind || *kind == IntentKind::out_of_scope) {
        throw ParseError("NLU rules: unknown intent '" + id + "'");
      }
      if (!seen.insert(*kind).second) throw ParseError("NLU rules: duplicate intent '" + id + "'");
      IntentRule rule{*kind, {}, jr.value("match_entities", false)};
      for (const auto& p : jr.at("phrases")) rule.phrases.push_back(phrase_tokens(p.get<std::string>()));
      rules.intent_rules_.push_back(std::move(rule));
    }
    for (const auto& [id, list] : doc.at("metrics").items()) {
      auto m = metric_from_id(id);
      if (!m) throw ParseError("NLU rules: unknown metric '" + id + "'");
      for (const auto& p : list) rules.metric_synonyms_.emplace_back(phrase_tokens(p.get<std::string>()), *m);
    }
    for (const auto& [id, list] : doc.at("insight_kinds").items()) {
      auto k = insight_kind_from_id(id);
      if (!k) throw ParseError("NLU rules: unknown insight kind '" + id + "'");
      for (const auto& p : list) rules.insight_synonyms_.emplace_back(phrase_tokens(p.get<std::string>()), *k);
    }
    for (const auto& p : doc.value("weak_insight_cues", nlohmann::json::array())) {
      rules.weak_insight_cues_.push_back(phrase_tokens(p.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("NLU rules: ") + e.what());
  }
  return rules;
}

const NluRules& NluRules::bundled() {
  static const NluRules rules = from_json(nlohmann::json::parse(embedded::kNluRules));
  return rules;
}

NluRules NluRules::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open NLU rules file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

MetricSet extract_metrics(const Utterance& u, const NluRules& rules) {
  const auto tokens = tokenize(u.text);
  MetricSet out;
  for (const auto& [seq, metric] : rules.metric_synonyms()) {
    if (contains_sequence(tokens, seq)) out.insert(metric);
  }
  return out;
}

InsightKindSet extract_insight_kinds(const Utterance& u, const NluRules& rules) {
  const auto tokens = tokenize(u.text);
  const auto& weak_cues = rules.weak_insight_cues();
  InsightKindSet strong, weak;
  for (const auto& [seq, kind] : rules.insight_synonyms()) {
    const bool is_weak = std::find(weak_cues.begin(), weak_cues.end(), seq) != weak_cues.end();
    for (std::size_t i = 0; i + seq.size() <= tokens.size(); ++i) {
      if (!matches_at(tokens, i, seq)) continue;
      // "my sugar intake" names the metric; it asks for the analysis only if nothing else is asked for.
      (is_weak && after_metric(tokens, i, rules) ? weak : strong).insert(kind);
    }
  }
  return strong.empty() ? weak : strong;
}

Intent classify_intent(const Utterance& u, const NluRules& rules) {
  const auto tokens = tokenize(u.text);
  for (const auto& rule : rules.intent_rules()) {
    for (const auto& seq : rule.phrases) {
      if (contains_sequence(tokens, seq)) return {rule.intent, 1.0};
    }
    if (rule.match_entities) {
      TimeParse t = parse_time(u);
      if (!extract_metrics(u, rules).empty() || t.expression || t.needs_clarification) {
        return {rule.intent, 1.0};
      }
    }
  }
  return {IntentKind::out_of_scope, 0.0};
}

}  // namespace dietbot
