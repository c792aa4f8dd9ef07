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

#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "irforge/error.hpp"
#include "irforge/service/manager.hpp"

namespace irforge::service {

// Status for an Error code: 404 unknown session/view/kind, 409 busy,
// 412 state preconditions, 422 validation failures, 400 unparseable bodies,
// 502/504 provider failures, 500 otherwise.
int http_status(const Error& e);

// HTTP+JSON front of a SessionManager.
//   POST /sessions                       GET /sessions
//   GET  /sessions/{id}                  GET /sessions/{id}/reachability
//   POST /sessions/{id}/messages         {"text": ...}
//   GET|PUT /sessions/{id}/ir/{storyboard|datamodel|skeletons/{View}}
//   POST /sessions/{id}/generate         {"appName"?: ...}
//   GET  /sessions/{id}/export           zip archive
//   GET  /sessions/{id}/report           PUT /sessions/{id}/compile-log (text)
//   GET  /sessions/{id}/events?since=N&follow=0|1   server-sent events
// Errors are {"error": code, "message", "detail"}; 422 bodies add "report".
class HttpService {
 public:
  explicit HttpService(SessionManager& manager);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace irforge::service
