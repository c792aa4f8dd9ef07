// Copyright 2026 The irforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irforge/service/http.hpp"

#include <httplib.h>

#include <set>

#include "irforge/analysis/report.hpp"
#include "irforge/ir/serialize.hpp"

namespace irforge::service {

using nlohmann::json;

int http_status(const Error& e) {
  static const std::set<std::string> not_found = {"unknown_session", "unknown_view", "unknown_ir_kind"};
  static const std::set<std::string> precondition = {"not_generated", "session_empty"};
  static const std::set<std::string> invalid = {
      "validation_failed", "schema_error",        "empty_request",   "plan_invalid",
      "stage_output_invalid", "codegen_invalid",  "plan_edge_mismatch", "project_invalid",
      "scaffold_missing",  "schema_error_after_retries", "log_parse_error", "unknown_node"};
  const auto& c = e.code();
  if (not_found.count(c)) return 404;
  if (c == "busy") return 409;
  if (precondition.count(c)) return 412;
  if (invalid.count(c)) return 422;
  if (c == "bad_request" || c == "parse_error") return 400;
  if (c == "provider_error" || c == "invalid_provider") return 502;
  if (c == "timeout") return 504;
  return 500;
}

struct HttpService::Impl {
  SessionManager& manager;
  httplib::Server server;
  std::atomic<bool> stopping{false};

  explicit Impl(SessionManager& m) : manager(m) { routes(); }

  static void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void send_error(httplib::Response& res, const Error& e) {
    json body = {{"error", e.code()}, {"message", e.what()}, {"detail", e.detail()}};
    if (e.detail().is_object() && e.detail().contains("report")) body["report"] = e.detail().at("report");
    send_json(res, body, http_status(e));
  }

  template <class F>
  static httplib::Server::Handler guarded(F&& handler) {
    return [handler = std::forward<F>(handler)](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const json::exception& e) {
        send_error(res, Error("bad_request", std::string("malformed JSON body: ") + e.what()));
      } catch (const std::exception& e) {
        send_error(res, Error("internal", e.what()));
      }
    };
  }

  static json body_json(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
      send_json(res, summary_json(manager.create_session()), 201);
    }));
    server.Get("/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
      send_json(res, {{"sessions", manager.list()}});
    }));
    server.Get(R"(/sessions/([A-Za-z0-9-]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, summary_json(*manager.get(req.matches[1])));
    }));
    server.Get(R"(/sessions/([A-Za-z0-9-]+)/reachability)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send_json(res, manager.reachability(req.matches[1]));
               }));
    server.Post(R"(/sessions/([A-Za-z0-9-]+)/messages)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = body_json(req);
                  if (!body.contains("text") || !body["text"].is_string()) {
                    throw Error("bad_request", "body must be {\"text\": string}");
                  }
                  send_json(res, manager.post_message(req.matches[1], body["text"].get<std::string>()));
                }));
    const std::string ir_route = R"(/sessions/([A-Za-z0-9-]+)/ir/(storyboard|datamodel|skeletons/[A-Za-z0-9_]+))";
    server.Get(ir_route, guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, manager.get_ir(req.matches[1], req.matches[2]));
    }));
    server.Put(ir_route, guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, manager.put_ir(req.matches[1], req.matches[2], ir::parse_json_text(req.body)));
    }));
    server.Post(R"(/sessions/([A-Za-z0-9-]+)/generate)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = body_json(req);
                  std::optional<std::string> app;
                  if (body.contains("appName") && body["appName"].is_string()) app = body["appName"].get<std::string>();
                  send_json(res, manager.generate(req.matches[1], app));
                }));
    server.Get(R"(/sessions/([A-Za-z0-9-]+)/export)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      const auto archive = manager.export_archive(id);
      const auto app = manager.get(id)->generated->app_name;
      res.set_header("Content-Disposition", "attachment; filename=\"" + app + ".zip\"");
      res.set_content(archive, "application/zip");
    }));
    server.Get(R"(/sessions/([A-Za-z0-9-]+)/report)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, analysis::to_json(manager.check(req.matches[1])));
    }));
    server.Put(R"(/sessions/([A-Za-z0-9-]+)/compile-log)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 manager.put_compile_log(req.matches[1], req.body);
                 send_json(res, analysis::to_json(manager.check(req.matches[1])));
               }));
    server.Get(R"(/sessions/([A-Za-z0-9-]+)/events)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      manager.get(id);  // 404 before the stream starts
      auto last = std::make_shared<std::uint64_t>(0);
      if (req.has_param("since")) *last = std::stoull(req.get_param_value("since"));
      const bool follow = !req.has_param("follow") || req.get_param_value("follow") != "0";
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider("text/event-stream", [this, id, last, follow](std::size_t, httplib::DataSink& sink) {
        if (stopping) {
          sink.done();
          return true;
        }
        const auto events = manager.events(id, *last, std::chrono::milliseconds(follow ? 500 : 0));
        std::string chunk;
        for (const auto& e : events) {
          chunk += "id: " + std::to_string(e.seq) + "\nevent: " + e.data.value("type", "message") + "\ndata: " +
                   e.data.dump() + "\n\n";
          *last = e.seq;
        }
        if (chunk.empty() && follow) chunk = ": keep-alive\n\n";
        if (!chunk.empty() && !sink.write(chunk.data(), chunk.size())) return false;
        if (!follow && events.empty()) sink.done();
        return true;
      });
    }));
  }
};

HttpService::HttpService(SessionManager& manager) : impl_(std::make_unique<Impl>(manager)) {}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::serve() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  impl_->stopping = true;
  impl_->server.stop();
}

}  // namespace irforge::service
