#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace ughost::service {

using Json = nlohmann::json;

// Error reported to HTTP clients as {code, message, detail}.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message, Json detail = nullptr)
      : std::runtime_error(message), status_(status), code_(std::move(code)), detail_(std::move(detail)) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const Json& detail() const { return detail_; }
  Json body() const { return {{"code", code_}, {"message", what()}, {"detail", detail_}}; }

 private:
  int status_;
  std::string code_;
  Json detail_;
};

struct ServiceOptions {
  // Directory holding sessions.json. Empty keeps sessions in memory only.
  std::filesystem::path data_dir;
  // Instance files addressable by name in POST /sessions.
  std::filesystem::path instances_dir;
};

// Sessions of the redistricting game. Requests and responses are the JSON
// bodies of the HTTP API; every failure is a ServiceError.
//
// POST /sessions body:
//   {"instance": "<file in instances_dir>"} or {"instance_text": "<state file>"},
//   "first_party": "<party name>" | "A" | "B"            (default: first listed)
//   "controllers": {"<party>": "human" | "engine", ...}   (default: first human, second engine)
// Move and what-if bodies: {"atom": int, "district": int}, moves optionally
// with "party" to assert whose turn the caller thinks it is.
//
// Solve values (the "projection" field) appear only when reveal is set.
class GameService {
 public:
  explicit GameService(ServiceOptions options);
  ~GameService();

  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  Json create_session(const Json& request, bool reveal = false);
  Json get_session(const std::string& id, bool reveal = false) const;
  Json play_move(const std::string& id, const Json& request, bool reveal = false);
  Json whatif(const std::string& id, const Json& request) const;
  Json list_instances() const;

  std::size_t session_count() const;
  std::filesystem::path store_path() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> build(const std::string& instance_text, const std::string& source,
                                 const Json& request) const;
  Json render(const Session& s, bool reveal) const;
  void load();
  void persist() const;

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  mutable std::mutex store_mutex_;
};

}  // namespace ughost::service
