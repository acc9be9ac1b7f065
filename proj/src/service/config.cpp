#include <fstream>
#include <set>

#include "dietbot/errors.hpp"
#include "dietbot/service.hpp"

namespace dietbot {

using nlohmann::json;

json config_to_json(const ServiceConfig& c) {
  json j = {{"port", c.port}, {"ascii_only", c.ascii_only}, {"thresholds", c.thresholds}};
  if (c.templates_path) j["templates"] = c.templates_path->string();
  if (c.rules_path) j["nlu_rules"] = c.rules_path->string();
  if (c.transcript_log) j["transcript_log"] = c.transcript_log->string();
  return j;
}

ServiceConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  static const std::set<std::string> known = {"port",      "ascii_only", "thresholds",
                                              "templates", "nlu_rules",  "transcript_log"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParseError("config: unknown key '" + key + "'");
  }
  ServiceConfig c;
  try {
    c.port = j.value("port", c.port);
    c.ascii_only = j.value("ascii_only", c.ascii_only);
    if (j.contains("thresholds")) c.thresholds = j.at("thresholds").get<Thresholds>();
    if (j.contains("templates")) c.templates_path = j.at("templates").get<std::string>();
    if (j.contains("nlu_rules")) c.rules_path = j.at("nlu_rules").get<std::string>();
    if (j.contains("transcript_log")) c.transcript_log = j.at("transcript_log").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw ValidationError("config: port out of range");
  const Thresholds& t = c.thresholds;
  if (!(t.balance_band_pct >= 0) || !(t.trend_epsilon_frac >= 0) || !(t.consistency_max_cv >= 0) ||
      !(t.compare_delta_frac >= 0)) {
    throw ValidationError("config: thresholds must be non-negative");
  }
  return c;
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace dietbot
