#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dietbot/answer_key.hpp"
#include "dietbot/nlu.hpp"
#include "dietbot/service.hpp"

namespace dietbot {

/// How the harness talks to chat-service: in process, or over HTTP.
class Transport {
 public:
  virtual ~Transport() = default;
  /// Returns the session id; greeting messages are discarded.
  virtual std::string create_session(std::uint64_t seed) = 0;
  /// Outbound messages in wire form. Throws Error on transport failure.
  virtual std::vector<nlohmann::json> send(const std::string& session_id,
                                           const nlohmann::json& event) = 0;
};

class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(ChatService& service) : service_(&service) {}
  std::string create_session(std::uint64_t seed) override;
  std::vector<nlohmann::json> send(const std::string& session_id,
                                   const nlohmann::json& event) override;

 private:
  ChatService* service_;
};

/// Talks to `serve` at a base URL such as "http://127.0.0.1:8080".
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string endpoint);
  ~HttpTransport() override;
  std::string create_session(std::uint64_t seed) override;
  std::vector<nlohmann::json> send(const std::string& session_id,
                                   const nlohmann::json& event) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct QuestionResult {
  std::string id;
  QuizTask task = QuizTask::day_analysis;
  std::string utterance;
  std::string expected;
  std::string got;  // empty when no matching payload was found
  bool correct = false;
  std::string diagnostic;
};

struct ScoreReport {
  std::uint64_t seed = 0;
  std::string session_id;
  int total = 0;
  std::vector<QuestionResult> questions;

  int points(QuizTask task) const;
  bool full_marks() const { return total == static_cast<int>(questions.size()) && total == 10; }
};

nlohmann::json score_report_to_json(const ScoreReport& r);

/// The natural-language question the harness sends for `q`.
std::string quiz_utterance(const QuizQuestion& q);

/// Scores one question against the messages it produced.
QuestionResult score_question(const QuizQuestion& q, const std::string& utterance,
                              const std::vector<nlohmann::json>& messages);

/// One session per seed; one utterance per question, each preceded by nothing
/// but the greeting. Throws on transport failure.
ScoreReport run_quiz(Transport& transport, std::uint64_t seed, const Thresholds& th = {});

struct CorpusItem {
  std::string text;
  Date reference_date;
  ParsedQuery expected;  // metrics and time as parsed, before defaults
  bool kinds_given = false;  // expected.insight_kinds is checked along with the intent
};

struct Corpus {
  std::optional<Date> diary_start;
  std::vector<CorpusItem> items;
};

/// Throws ParseError on malformed entries and ValidationError on an empty corpus.
Corpus corpus_from_json(const nlohmann::json& j);
Corpus load_corpus(const std::filesystem::path& path);

struct CorpusFailure {
  std::size_t index = 0;
  std::string text;
  std::string field;  // "intent", "metrics" or "time"
  nlohmann::json expected;
  nlohmann::json got;
};

struct CorpusReport {
  std::size_t total = 0;
  std::size_t intent_ok = 0;
  std::size_t metrics_ok = 0;
  std::size_t time_ok = 0;
  std::vector<CorpusFailure> failures;

  bool perfect() const {
    return total > 0 && intent_ok == total && metrics_ok == total && time_ok == total;
  }
};

CorpusReport run_nlu_corpus(const Corpus& corpus, const NluRules& rules = NluRules::bundled());
nlohmann::json corpus_report_to_json(const CorpusReport& r);

}  // namespace dietbot
