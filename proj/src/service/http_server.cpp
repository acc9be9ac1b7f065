#include <httplib.h>

#include "dietbot/errors.hpp"
#include "dietbot/service.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("request body is not JSON: ") + e.what());
  }
}

DiarySource source_from_request(const json& body) {
  if (!body.is_object()) throw ParseError("request body must be a JSON object");
  const int given = static_cast<int>(body.contains("diary_seed")) +
                    static_cast<int>(body.contains("diary")) +
                    static_cast<int>(body.contains("diary_path"));
  if (given != 1) throw ParseError("give exactly one of diary_seed, diary, diary_path");
  if (body.contains("diary_seed")) {
    if (!body["diary_seed"].is_number_unsigned()) {
      throw ParseError("diary_seed must be a non-negative integer");
    }
    return DiarySource::from_seed(body["diary_seed"].get<std::uint64_t>());
  }
  if (body.contains("diary")) return DiarySource::from_diary(diary_from_json(body["diary"]));
  return DiarySource::from_path(body["diary_path"].get<std::string>());
}

json messages_json(const std::vector<json>& messages) {
  return json(messages);
}

/// Maps library errors onto HTTP statuses.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const SessionError& e) {
    send_error(res, 404, e.what());
  } catch (const ParseError& e) {
    send_error(res, 400, e.what());
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  } catch (const ReferentialError& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

struct HttpServer::Impl {
  ChatService* service;
  httplib::Server server;
};

HttpServer::HttpServer(ChatService& service) : impl_(std::make_unique<Impl>()) {
  impl_->service = &service;
  httplib::Server& svr = impl_->server;
  ChatService* svc = &service;

  // The browser client is served from elsewhere.
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  svr.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Post("/sessions", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      DiarySource source = source_from_request(body);
      std::optional<Date> ref;
      if (body.contains("reference_date") && !body["reference_date"].is_null()) {
        ref = Date::parse_iso(body["reference_date"].get<std::string>());
        if (!ref) throw ParseError("reference_date must be YYYY-MM-DD");
      }
      auto created = svc->create_session(source, ref);
      send_json(res, 201, {{"session_id", created.session_id},
                           {"messages", messages_json(created.messages)}});
    });
  });

  svr.Post(R"(/sessions/([^/]+)/events)", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      svc->transcript(id);  // 404 before 400 for an unknown session
      const InboundEvent event = event_from_json(parse_body(req));
      send_json(res, 200, {{"messages", messages_json(svc->handle_event(id, event))}});
    });
  });

  svr.Get(R"(/sessions/([^/]+)/transcript)", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, transcript_to_json(svc->transcript(req.matches[1]))); });
  });

  svr.Get(R"(/charts/([0-9a-f]+))", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto svg = svc->chart_svg(req.matches[1]);
      if (!svg) {
        send_error(res, 404, "unknown chart '" + std::string(req.matches[1]) + "'");
        return;
      }
      res.set_content(*svg, "image/svg+xml");
    });
  });
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::bind_any(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace dietbot
