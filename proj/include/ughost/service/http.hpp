#pragma once

#include <string>

#include "ughost/service/game_service.hpp"

namespace httplib {
class Server;
}

namespace ughost::service {

// Routes:
//   GET  /instances
//   POST /sessions
//   GET  /sessions/{id}[?reveal=true]
//   POST /sessions/{id}/moves[?reveal=true]
//   POST /sessions/{id}/whatif
// Errors are {code, message, detail} with the ServiceError status.
void mount(httplib::Server& server, GameService& service);

// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(GameService& service, const std::string& host, int port);

}  // namespace ughost::service
