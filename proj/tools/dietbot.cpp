// dietbot: serve the chat API, chat locally, run the quiz and the NLU corpus.

#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "dietbot/errors.hpp"
#include "dietbot/eval.hpp"
#include "dietbot/service.hpp"

using nlohmann::json;
using namespace dietbot;

namespace {

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void print_message(const json& m) {
  const std::string kind = m.value("kind", "text");
  if (kind == "chart") {
    std::cout << "[chart " << m.value("chart_id", "") << "] " << m.value("text", "") << "\n";
  } else if (kind == "buttons") {
    std::cout << m.value("text", "") << "\n";
    for (const auto& o : m["buttons"]["options"]) {
      std::cout << "  [" << (o["checked"].get<bool>() ? 'x' : ' ') << "] "
                << o["label"].get<std::string>() << "  (/toggle " << o["insight"].get<std::string>()
                << ")\n";
    }
    std::cout << "  <" << m["buttons"]["submit_label"].get<std::string>() << ">  (/submit)\n";
  } else {
    std::cout << m.value("text", "") << "\n";
  }
}

int cmd_serve(const std::string& host, int port, const std::string& config_path) {
  ServiceConfig config;
  if (!config_path.empty()) config = load_config(config_path);
  if (port >= 0) config.port = port;
  ChatService service(config);
  HttpServer server(service);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "dietbot listening on " << host << ":" << config.port << "\n";
  if (!server.listen(host, config.port)) {
    std::cerr << "error: cannot listen on " << host << ":" << config.port << "\n";
    return 1;
  }
  return 0;
}

int cmd_repl(std::uint64_t seed, const std::string& diary_path, const std::string& date,
             bool ascii) {
  ServiceConfig config;
  config.ascii_only = ascii;
  ChatService service(config);
  std::optional<Date> ref;
  if (!date.empty()) {
    ref = Date::parse_iso(date);
    if (!ref) throw ParseError("--date must be YYYY-MM-DD");
  }
  DiarySource source = diary_path.empty() ? DiarySource::from_seed(seed) : DiarySource::from_path(diary_path);
  auto created = service.create_session(source, ref);
  for (const auto& m : created.messages) print_message(m);

  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line == "/quit" || line == "/exit") break;
    InboundEvent event = InboundEvent::user_text(line);
    if (line == "/submit") {
      event = InboundEvent::submit();
    } else if (line.rfind("/toggle ", 0) == 0) {
      auto kind = insight_kind_from_id(line.substr(8));
      if (!kind) {
        std::cout << "unknown insight; use intake, trend_consistency or food\n";
        continue;
      }
      event = InboundEvent::toggle(*kind);
    } else if (line == "/transcript") {
      std::cout << transcript_to_json(service.transcript(created.session_id)).dump(2) << "\n";
      continue;
    }
    for (const auto& m : service.handle_event(created.session_id, event)) print_message(m);
  }
  return 0;
}

int cmd_transcript(const std::string& endpoint, const std::string& session, const std::string& log) {
  if (!log.empty()) {
    std::ifstream in(log);
    if (!in) throw ParseError("cannot open " + log);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      if (j.value("session_id", "") == session) std::cout << j.dump() << "\n";
    }
    return 0;
  }
  httplib::Client client(endpoint);
  auto res = client.Get("/sessions/" + session + "/transcript");
  if (!res) {
    std::cerr << "error: " << httplib::to_string(res.error()) << "\n";
    return 1;
  }
  if (res->status != 200) {
    std::cerr << "error: " << res->status << " " << res->body << "\n";
    return 1;
  }
  std::cout << json::parse(res->body).dump(2) << "\n";
  return 0;
}

int cmd_quiz(const std::string& endpoint, const std::vector<std::uint64_t>& seeds,
             const std::string& out_path) {
  std::unique_ptr<ChatService> local;
  std::unique_ptr<Transport> transport;
  if (endpoint.empty()) {
    local = std::make_unique<ChatService>();
    transport = std::make_unique<InProcessTransport>(*local);
  } else {
    transport = std::make_unique<HttpTransport>(endpoint);
  }
  json reports = json::array();
  bool all = true;
  for (std::uint64_t seed : seeds) {
    ScoreReport r = run_quiz(*transport, seed);
    all = all && r.full_marks();
    std::cout << "seed " << seed << ": " << r.total << "/10\n";
    for (const auto& q : r.questions) {
      if (!q.correct) std::cout << "  " << q.id << ": " << q.diagnostic << "\n";
    }
    reports.push_back(score_report_to_json(r));
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
  }
  return all ? 0 : 1;
}

int cmd_corpus(const std::string& file, const std::string& out_path) {
  CorpusReport r = run_nlu_corpus(load_corpus(file));
  json j = corpus_report_to_json(r);
  std::cout << "intent " << j["accuracy"]["intent"] << "%, metrics " << j["accuracy"]["metrics"]
            << "%, time " << j["accuracy"]["time"] << "% over " << r.total << " utterances\n";
  for (const auto& f : r.failures) {
    std::cout << "  #" << f.index << " \"" << f.text << "\" " << f.field << ": expected "
              << f.expected.dump() << ", got " << f.got.dump() << "\n";
  }
  if (!out_path.empty()) std::ofstream(out_path) << j.dump(2) << "\n";
  return r.perfect() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conversational food diary assistant"};
  app.require_subcommand(1);

  auto* serve = app.add_subcommand("serve", "Run the HTTP+JSON chat API");
  int port = -1;
  std::string host = "127.0.0.1", config;
  serve->add_option("--port", port, "Port (overrides the config file)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--config", config, "Service config JSON")->check(CLI::ExistingFile);

  auto* repl = app.add_subcommand("repl", "Chat in the terminal");
  std::uint64_t seed = 1;
  std::string diary, date;
  bool ascii = false;
  repl->add_option("--seed", seed, "Sample diary seed");
  repl->add_option("--diary", diary, "Diary JSON file instead of a seed")->check(CLI::ExistingFile);
  repl->add_option("--date", date, "Reference date (YYYY-MM-DD)");
  repl->add_flag("--ascii", ascii, "No emojis");

  auto* transcript = app.add_subcommand("transcript", "Print a session transcript");
  std::string endpoint = "http://127.0.0.1:8080", session, log;
  transcript->add_option("--session", session, "Session id")->required();
  transcript->add_option("--endpoint", endpoint, "Server base URL");
  transcript->add_option("--log", log, "Read from a transcript log file instead");

  auto* quiz = app.add_subcommand("quiz", "Score the informativeness quiz");
  std::vector<std::uint64_t> seeds;
  std::string quiz_endpoint, out;
  quiz->add_option("--seed", seeds, "Diary seed (repeatable)")->required();
  quiz->add_option("--endpoint", quiz_endpoint, "Server base URL; in-process when omitted");
  quiz->add_option("--out", out, "Write the score report JSON here");

  auto* corpus = app.add_subcommand("nlu-corpus", "Check NLU accuracy on an annotated corpus");
  std::string file, corpus_out;
  corpus->add_option("--file", file, "Corpus JSON")->required()->check(CLI::ExistingFile);
  corpus->add_option("--out", corpus_out, "Write the accuracy report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(host, port, config);
    if (*repl) return cmd_repl(seed, diary, date, ascii);
    if (*transcript) return cmd_transcript(endpoint, session, log);
    if (*quiz) return cmd_quiz(quiz_endpoint, seeds, out);
    if (*corpus) return cmd_corpus(file, corpus_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
