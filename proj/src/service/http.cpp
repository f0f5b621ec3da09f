#include "ughost/service/http.hpp"

#include <functional>
#include <iostream>

#include "httplib.h"

namespace ughost::service {
namespace {

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

bool reveal_of(const httplib::Request& req) {
  const std::string v = req.get_param_value("reveal");
  return v == "true" || v == "1";
}

Json body_of(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw ServiceError(400, "invalid_json", "request body is not valid JSON", {{"parser", e.what()}});
  }
}

void guarded(httplib::Response& res, int ok_status, const std::function<Json()>& fn) {
  try {
    send(res, ok_status, fn());
  } catch (const ServiceError& e) {
    send(res, e.status(), e.body());
  } catch (const std::exception& e) {
    send(res, 500, ServiceError(500, "internal", e.what()).body());
  }
}

}  // namespace

void mount(httplib::Server& server, GameService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server.Get("/instances", [&service](const httplib::Request&, httplib::Response& res) {
    guarded(res, 200, [&] { return service.list_instances(); });
  });
  server.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 201, [&] { return service.create_session(body_of(req), reveal_of(req)); });
  });
  server.Get("/sessions/:id", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 200, [&] { return service.get_session(req.path_params.at("id"), reveal_of(req)); });
  });
  server.Post("/sessions/:id/moves", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 200, [&] {
      return service.play_move(req.path_params.at("id"), body_of(req), reveal_of(req));
    });
  });
  server.Post("/sessions/:id/whatif", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 200, [&] { return service.whatif(req.path_params.at("id"), body_of(req)); });
  });

  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    send(res, res.status,
         ServiceError(res.status, "not_found", "no route for " + req.method + " " + req.path).body());
  });
}

bool serve(GameService& service, const std::string& host, int port) {
  httplib::Server server;
  mount(server, service);
  std::cerr << "listening on " << host << ":" << port << "\n";
  return server.listen(host, port);
}

}  // namespace ughost::service
