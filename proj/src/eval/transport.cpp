#include <httplib.h>

#include "dietbot/errors.hpp"
#include "dietbot/eval.hpp"

namespace dietbot {

using nlohmann::json;

std::string InProcessTransport::create_session(std::uint64_t seed) {
  return service_->create_session(DiarySource::from_seed(seed)).session_id;
}

std::vector<json> InProcessTransport::send(const std::string& session_id, const json& event) {
  return service_->handle_event(session_id, event_from_json(event));
}

struct HttpTransport::Impl {
  std::string endpoint;
  httplib::Client client;

  explicit Impl(std::string e) : endpoint(std::move(e)), client(endpoint) {
    client.set_connection_timeout(5);
    client.set_read_timeout(30);
  }

  json post(const std::string& path, const json& body) {
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) {
      throw Error("transport: POST " + endpoint + path + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw Error("transport: POST " + endpoint + path + " returned " +
                  std::to_string(res->status) + ": " + res->body);
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw Error("transport: reply to " + path + " is not JSON: " + e.what());
    }
  }
};

HttpTransport::HttpTransport(std::string endpoint)
    : impl_(std::make_unique<Impl>(std::move(endpoint))) {}

HttpTransport::~HttpTransport() = default;

std::string HttpTransport::create_session(std::uint64_t seed) {
  const json reply = impl_->post("/sessions", {{"diary_seed", seed}});
  if (!reply.contains("session_id")) throw Error("transport: /sessions reply has no session_id");
  return reply["session_id"].get<std::string>();
}

std::vector<json> HttpTransport::send(const std::string& session_id, const json& event) {
  const json reply = impl_->post("/sessions/" + session_id + "/events", event);
  if (!reply.contains("messages") || !reply["messages"].is_array()) {
    throw Error("transport: event reply has no messages array");
  }
  return reply["messages"].get<std::vector<json>>();
}

}  // namespace dietbot
