// Copyright 2026 The PEG Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "peg/http_server.hpp"

namespace peg {

using nlohmann::json;

namespace {

void send(httplib::Response& res, const Reply& reply) {
  res.status = reply.status;
  res.set_content(reply.body.dump(), "application/json");
}

// Parses a JSON request body; an empty body reads as an empty object.
bool parse_body(const httplib::Request& req, httplib::Response& res, json& out) {
  if (req.body.empty()) {
    out = json::object();
    return true;
  }
  out = json::parse(req.body, nullptr, false);
  if (out.is_discarded()) {
    send(res, {422, {{"error", "malformed-request"}, {"message", "request body is not JSON"}}});
    return false;
  }
  return true;
}

}  // namespace

void register_routes(httplib::Server& server, SessionService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/documents", [&](const httplib::Request&, httplib::Response& res) {
    send(res, service.list_documents());
  });
  server.Get(R"(/documents/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_document(req.matches[1]));
  });
  server.Get("/ontology", [&](const httplib::Request&, httplib::Response& res) {
    send(res, service.ontology());
  });

  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    json body;
    if (parse_body(req, res, body)) send(res, service.create_session(body));
  });
  server.Post(R"(/sessions/([^/]+)/command)", [&](const httplib::Request& req, httplib::Response& res) {
    json body;
    if (parse_body(req, res, body)) send(res, service.command(req.matches[1], body));
  });
  server.Post(R"(/sessions/([^/]+)/finalize)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.finalize(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/state)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.state(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/peg)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.peg(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/autocomplete)",
             [&](const httplib::Request& req, httplib::Response& res) {
               send(res, service.autocomplete(req.matches[1], req.get_param_value("prefix")));
             });
  server.Get(R"(/sessions/([^/]+)/lint)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.lint(req.matches[1]));
  });

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    send(res, {500, {{"error", "internal"}, {"message", message}}});
  });
}

}  // namespace peg
