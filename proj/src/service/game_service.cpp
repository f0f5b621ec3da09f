#include "ughost/service/game_service.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ughost/core/solver.hpp"
#include "ughost/district/districting.hpp"
#include "ughost/district/redistricting_language.hpp"
#include "ughost/district/state_file.hpp"

namespace ughost::service {

namespace fs = std::filesystem;
using district::Party;
using district::RedistrictingLanguage;

namespace {

enum class Controller { kHuman, kEngine };

const char* controller_name(Controller c) { return c == Controller::kHuman ? "human" : "engine"; }

[[noreturn]] void bad_request(const std::string& message, Json detail = nullptr) {
  throw ServiceError(400, "invalid_request", message, std::move(detail));
}

std::string new_id() {
  static std::mutex mutex;
  static std::random_device device;
  static std::mt19937_64 gen(
      (static_cast<std::uint64_t>(device()) << 32) ^ static_cast<std::uint64_t>(device()));
  std::lock_guard lock(mutex);
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(gen()),
                static_cast<unsigned long long>(gen()));
  return buf;
}

int int_field(const Json& body, const char* name) {
  if (!body.is_object() || !body.contains(name)) bad_request(std::string("missing field \"") + name + "\"");
  const Json& v = body.at(name);
  if (!v.is_number_integer()) bad_request(std::string("field \"") + name + "\" must be an integer");
  auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) bad_request(std::string("field \"") + name + "\" out of range");
  return static_cast<int>(x);
}

Json seat_json(const std::string& a_name, const std::string& b_name, int a, int b) {
  return {{a_name, a}, {b_name, b}};
}

}  // namespace

struct GameService::Session {
  std::string id;
  std::string instance_text;
  district::StateInstance instance;
  std::shared_ptr<RedistrictingLanguage> lang;
  std::array<Controller, 2> controllers{};  // by player index

  // Serializes moves; a second concurrent mutation fails instead of waiting.
  std::mutex move_mutex;
  // The solver's table is not thread-safe.
  mutable std::mutex solver_mutex;
  mutable std::unique_ptr<Solver> solver;

  // Current prefix, replaced wholesale so readers never see a partial update.
  std::shared_ptr<const Prefix> prefix = std::make_shared<const Prefix>();

  std::shared_ptr<const Prefix> snapshot() const { return std::atomic_load(&prefix); }
  void publish(Prefix p) { std::atomic_store(&prefix, std::make_shared<const Prefix>(std::move(p))); }

  const std::string& party_name(Party p) const {
    return p == Party::kA ? instance.party_a : instance.party_b;
  }
  const std::string& player_party(Player p) const { return party_name(lang->party_of(p)); }
  Controller controller(Player p) const { return controllers[player_index(p)]; }

  GameValue solve(const Prefix& p) const {
    std::lock_guard lock(solver_mutex);
    return solver->solve(p);
  }

  Json move_json(const Prefix& p, std::size_t ply) const {
    const Player who = mover_at(ply);
    const int atom = lang->atom_of(p[ply]);
    return {{"ply", ply},
            {"player", static_cast<int>(who)},
            {"party", player_party(who)},
            {"controller", controller_name(controller(who))},
            {"atom", atom},
            {"atom_name", instance.graph.atom(atom).name},
            {"district", lang->district_of(p[ply])}};
  }

  Json symbol_json(Symbol s) const {
    return {{"atom", lang->atom_of(s)}, {"district", lang->district_of(s)}};
  }

  // Seats per party for a value expressed per player.
  Json value_seats(const GameValue& v) const {
    Json out;
    out[player_party(Player::kFirst)] = static_cast<int>(v.u1.value());
    out[player_party(Player::kSecond)] = static_cast<int>(v.u2.value());
    return out;
  }
};

GameService::GameService(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.data_dir.empty()) {
    fs::create_directories(options_.data_dir);
    load();
  }
}

GameService::~GameService() = default;

fs::path GameService::store_path() const {
  return options_.data_dir.empty() ? fs::path{} : options_.data_dir / "sessions.json";
}

std::size_t GameService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw ServiceError(404, "unknown_session", "no session with id \"" + id + "\"");
  }
  return it->second;
}

std::shared_ptr<GameService::Session> GameService::build(const std::string& instance_text,
                                                         const std::string& source,
                                                         const Json& request) const {
  auto s = std::make_shared<Session>();
  s->instance_text = instance_text;
  std::vector<district::Districting> maps;
  try {
    s->instance = district::parse_state_string(instance_text, source);
    maps = district::enumerate_maps(s->instance.graph, s->instance.constraints);
  } catch (const district::ParseError& e) {
    throw ServiceError(400, "invalid_instance", e.what(),
                       {{"kind", "ParseError"}, {"line", e.line()}, {"field", e.field()}});
  } catch (const district::ValidationError& e) {
    throw ServiceError(400, "invalid_instance", e.what(), {{"kind", "ValidationError"}});
  } catch (const district::NoAdmissibleMap& e) {
    throw ServiceError(400, "invalid_instance", e.what(), {{"kind", "NoAdmissibleMap"}});
  }
  const auto& inst = s->instance;

  auto party_from = [&](const std::string& name) -> std::optional<Party> {
    if (name == inst.party_a || name == "A") return Party::kA;
    if (name == inst.party_b || name == "B") return Party::kB;
    return std::nullopt;
  };

  Party first = Party::kA;
  if (request.contains("first_party")) {
    const Json& f = request.at("first_party");
    auto p = f.is_string() ? party_from(f.get<std::string>()) : std::nullopt;
    if (!p) {
      bad_request("first_party must be \"" + inst.party_a + "\" or \"" + inst.party_b + "\"",
                  {{"parties", {inst.party_a, inst.party_b}}});
    }
    first = *p;
  }
  s->lang = district::make_language(std::move(maps), inst.graph.atoms(), inst.constraints.k, first,
                                    {inst.party_a, inst.party_b});

  s->controllers = {Controller::kHuman, Controller::kEngine};
  if (request.contains("controllers")) {
    const Json& c = request.at("controllers");
    if (!c.is_object()) bad_request("controllers must be an object keyed by party");
    for (const auto& [key, value] : c.items()) {
      auto p = party_from(key);
      if (!p) bad_request("controllers: unknown party \"" + key + "\"");
      if (!value.is_string() || (value != "human" && value != "engine")) {
        bad_request("controllers: expected \"human\" or \"engine\" for \"" + key + "\"");
      }
      const Player player = *p == first ? Player::kFirst : Player::kSecond;
      s->controllers[player_index(player)] =
          value == "human" ? Controller::kHuman : Controller::kEngine;
    }
  }
  s->solver = std::make_unique<Solver>(*s->lang);
  return s;
}

namespace {

// Applies engine moves while the engine is to move; returns how many.
std::size_t run_engine(const RedistrictingLanguage& lang, const std::array<Controller, 2>& controllers,
                       std::mutex& solver_mutex, Solver& solver, Prefix& p) {
  std::size_t played = 0;
  while (!lang.is_terminal(p) && controllers[player_index(mover_at(p.size()))] == Controller::kEngine) {
    std::lock_guard lock(solver_mutex);
    p.push_back(solver.best_move(p));
    ++played;
  }
  return played;
}

}  // namespace

Json GameService::create_session(const Json& request, bool reveal) {
  if (!request.is_object()) bad_request("request body must be a JSON object");
  std::string text;
  std::string source;
  if (request.contains("instance_text")) {
    if (!request.at("instance_text").is_string()) bad_request("instance_text must be a string");
    text = request.at("instance_text").get<std::string>();
    source = "instance_text";
  } else if (request.contains("instance")) {
    if (!request.at("instance").is_string()) bad_request("instance must be a string");
    const std::string name = request.at("instance").get<std::string>();
    if (name.empty() || name.find_first_of("/\\") != std::string::npos || name[0] == '.' ||
        options_.instances_dir.empty()) {
      throw ServiceError(400, "invalid_instance", "unknown instance \"" + name + "\"");
    }
    fs::path path = options_.instances_dir / name;
    if (!fs::is_regular_file(path)) path += ".txt";
    std::ifstream in(path);
    if (!in) throw ServiceError(400, "invalid_instance", "unknown instance \"" + name + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    source = path.filename().string();
  } else {
    bad_request("give either \"instance\" or \"instance_text\"");
  }

  auto s = build(text, source, request);
  Prefix p;
  run_engine(*s->lang, s->controllers, s->solver_mutex, *s->solver, p);
  s->publish(std::move(p));
  {
    std::unique_lock lock(sessions_mutex_);
    do {
      s->id = new_id();
    } while (sessions_.count(s->id));
    sessions_.emplace(s->id, s);
  }
  persist();
  return render(*s, reveal);
}

Json GameService::get_session(const std::string& id, bool reveal) const {
  return render(*find(id), reveal);
}

Json GameService::play_move(const std::string& id, const Json& request, bool reveal) {
  auto s = find(id);
  std::unique_lock guard(s->move_mutex, std::try_to_lock);
  if (!guard.owns_lock()) {
    throw ServiceError(409, "busy", "another move for this session is in progress");
  }
  const int atom = int_field(request, "atom");
  const int district_id = int_field(request, "district");

  Prefix p = *s->snapshot();
  const RedistrictingLanguage& lang = *s->lang;
  if (lang.is_terminal(p)) throw ServiceError(409, "finished", "the game is over");
  const Player mover = mover_at(p.size());
  if (request.contains("party")) {
    const Json& party = request.at("party");
    if (!party.is_string() || party.get<std::string>() != s->player_party(mover)) {
      throw ServiceError(409, "not_your_turn", "it is " + s->player_party(mover) + "'s turn",
                         {{"mover", s->player_party(mover)}});
    }
  }
  if (s->controller(mover) != Controller::kHuman) {
    throw ServiceError(409, "not_your_turn", "the engine is to move",
                       {{"mover", s->player_party(mover)}});
  }

  const Json move = {{"atom", atom}, {"district", district_id}};
  if (atom < 0 || atom >= lang.atom_count() || district_id < 0 || district_id >= lang.k()) {
    throw ServiceError(422, "illegal_move", "out of range", {{"reason", "out of range"}, {"move", move}});
  }
  const Symbol sym = lang.symbol(atom, district_id);
  if (auto why = lang.check_move(p, sym)) {
    const std::string reason = *why == RedistrictingLanguage::Rejection::kAtomTaken
                                   ? "atom taken"
                                   : "no admissible completion";
    throw ServiceError(422, "illegal_move", reason, {{"reason", reason}, {"move", move}});
  }

  const std::size_t first_new = p.size();
  p.push_back(sym);
  run_engine(lang, s->controllers, s->solver_mutex, *s->solver, p);
  s->publish(p);
  persist();

  Json out = render(*s, reveal);
  Json applied = Json::array();
  for (std::size_t i = first_new; i < p.size(); ++i) applied.push_back(s->move_json(p, i));
  out["applied"] = std::move(applied);
  return out;
}

Json GameService::whatif(const std::string& id, const Json& request) const {
  auto s = find(id);
  const int atom = int_field(request, "atom");
  const int district_id = int_field(request, "district");
  Prefix p = *s->snapshot();
  const RedistrictingLanguage& lang = *s->lang;
  const Json move = {{"atom", atom}, {"district", district_id}};
  if (lang.is_terminal(p)) throw ServiceError(409, "finished", "the game is over");
  if (atom < 0 || atom >= lang.atom_count() || district_id < 0 || district_id >= lang.k()) {
    throw ServiceError(422, "illegal_move", "out of range", {{"reason", "out of range"}, {"move", move}});
  }
  const Symbol sym = lang.symbol(atom, district_id);
  if (auto why = lang.check_move(p, sym)) {
    const std::string reason = *why == RedistrictingLanguage::Rejection::kAtomTaken
                                   ? "atom taken"
                                   : "no admissible completion";
    throw ServiceError(422, "illegal_move", reason, {{"reason", reason}, {"move", move}});
  }
  p.push_back(sym);
  GameValue v = s->solve(p);
  Json out = {{"move", move},
              {"u1", v.u1.value()},
              {"u2", v.u2.value()},
              {"seats", s->value_seats(v)},
              {"principal_move", nullptr}};
  if (v.principal_move) out["principal_move"] = s->symbol_json(*v.principal_move);
  return out;
}

Json GameService::render(const Session& s, bool reveal) const {
  const auto snap = s.snapshot();
  const Prefix& p = *snap;
  const RedistrictingLanguage& lang = *s.lang;
  const auto& inst = s.instance;

  Json atoms = Json::array();
  for (const auto& a : inst.graph.atoms()) {
    Json j = {{"id", a.id},
              {"name", a.name},
              {"population", a.population},
              {"votes", {{inst.party_a, a.votes_a}, {inst.party_b, a.votes_b}, {"other", a.votes_other}}}};
    if (a.position) j["position"] = {{"x", a.position->x}, {"y", a.position->y}};
    atoms.push_back(std::move(j));
  }
  Json edges = Json::array();
  for (auto [a, b] : inst.graph.edges()) edges.push_back({a, b});
  const auto& c = inst.constraints;
  Json constraints = {{"k", c.k}, {"contiguity", c.contiguity}};
  if (c.balance == district::BalanceRule::kExactSize) {
    constraints["balance"] = "exact";
  } else {
    constraints["balance"] = "population";
    constraints["tolerance"] = c.tolerance;
  }
  Json instance = {{"name", inst.name},
                   {"parties", {inst.party_a, inst.party_b}},
                   {"k", c.k},
                   {"grid", nullptr},
                   {"atoms", std::move(atoms)},
                   {"edges", std::move(edges)},
                   {"constraints", std::move(constraints)},
                   {"map_count", lang.unlabeled_maps().size()}};
  if (inst.grid) instance["grid"] = {{"rows", inst.grid->rows}, {"cols", inst.grid->cols}};

  Json players = Json::array();
  for (Player who : {Player::kFirst, Player::kSecond}) {
    players.push_back({{"player", static_cast<int>(who)},
                       {"party", s.player_party(who)},
                       {"controller", controller_name(s.controller(who))}});
  }

  Json moves = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) moves.push_back(s.move_json(p, i));

  Json board = Json::array();
  for (int d : lang.assignment(p)) board.push_back(d < 0 ? Json(nullptr) : Json(d));

  const bool finished = lang.is_terminal(p);
  Json out = {{"id", s.id},
              {"instance", std::move(instance)},
              {"players", std::move(players)},
              {"status", finished ? "finished" : "in_progress"},
              {"prefix", std::move(moves)},
              {"board", std::move(board)},
              {"unassigned", lang.atom_count() - static_cast<int>(p.size())},
              {"mover", nullptr},
              {"legal_moves", Json::array()}};

  if (finished) {
    district::Districting map{lang.assignment(p), lang.k()};
    district::SeatCount sc = district::seats(map, lang.atoms());
    out["result"] = {{"seats", seat_json(inst.party_a, inst.party_b, sc.seats_a, sc.seats_b)},
                     {"ties", sc.ties},
                     {"map_index", lang.unlabeled_index(p)}};
  } else {
    const Player who = mover_at(p.size());
    out["mover"] = {{"player", static_cast<int>(who)},
                    {"party", s.player_party(who)},
                    {"controller", controller_name(s.controller(who))}};
    for (Symbol sym : lang.legal_moves(p)) out["legal_moves"].push_back(s.symbol_json(sym));
  }

  if (reveal) {
    GameValue v = s.solve(p);
    out["projection"] = {{"seats", s.value_seats(v)}, {"principal_move", nullptr}};
    if (v.principal_move) out["projection"]["principal_move"] = s.symbol_json(*v.principal_move);
  }
  return out;
}

Json GameService::list_instances() const {
  Json out = Json::array();
  if (options_.instances_dir.empty() || !fs::is_directory(options_.instances_dir)) return out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(options_.instances_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    Json item = {{"id", path.stem().string()}};
    try {
      auto inst = district::ingest_state(path.string());
      item["name"] = inst.name;
      item["parties"] = {inst.party_a, inst.party_b};
      item["atoms"] = inst.graph.size();
      item["k"] = inst.constraints.k;
    } catch (const std::exception& e) {
      item["error"] = e.what();
    }
    out.push_back(std::move(item));
  }
  return out;
}

void GameService::persist() const {
  if (options_.data_dir.empty()) return;
  std::lock_guard store_lock(store_mutex_);
  Json sessions = Json::array();
  {
    std::shared_lock lock(sessions_mutex_);
    for (const auto& [id, s] : sessions_) {
      const auto snap = s->snapshot();
      Json prefix = Json::array();
      for (Symbol sym : *snap) prefix.push_back({s->lang->atom_of(sym), s->lang->district_of(sym)});
      Json controllers;
      for (Player who : {Player::kFirst, Player::kSecond}) {
        controllers[s->player_party(who)] = controller_name(s->controller(who));
      }
      sessions.push_back({{"id", id},
                          {"instance_text", s->instance_text},
                          {"source", s->instance.name},
                          {"first_party", s->lang->first_party() == Party::kA ? "A" : "B"},
                          {"controllers", std::move(controllers)},
                          {"prefix", std::move(prefix)}});
    }
  }
  const fs::path target = store_path();
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << Json{{"version", 1}, {"sessions", std::move(sessions)}}.dump(1) << "\n";
    out.flush();
    if (!out) throw ServiceError(500, "store_failed", "cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

void GameService::load() {
  const fs::path path = store_path();
  if (!fs::exists(path)) return;
  std::ifstream in(path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path.string() + ": corrupt session store: " + e.what());
  }
  for (const Json& entry : doc.at("sessions")) {
    const std::string id = entry.at("id").get<std::string>();
    Json request = {{"first_party", entry.at("first_party")}, {"controllers", entry.at("controllers")}};
    std::shared_ptr<Session> s;
    try {
      s = build(entry.at("instance_text").get<std::string>(), entry.value("source", id), request);
    } catch (const ServiceError& e) {
      throw std::runtime_error(path.string() + ": session " + id + ": " + e.what());
    }
    s->id = id;
    Prefix p;
    for (const Json& m : entry.at("prefix")) {
      const int atom = m.at(0).get<int>();
      const int d = m.at(1).get<int>();
      if (atom < 0 || atom >= s->lang->atom_count() || d < 0 || d >= s->lang->k() ||
          s->lang->check_move(p, s->lang->symbol(atom, d))) {
        throw std::runtime_error(path.string() + ": session " + id + " holds an illegal prefix");
      }
      p.push_back(s->lang->symbol(atom, d));
    }
    s->publish(std::move(p));
    sessions_.emplace(id, std::move(s));
  }
}

}  // namespace ughost::service
