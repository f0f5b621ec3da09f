// ghost: command-line front end.
//
//   ghost solve    --instance FILE [--first-player A|B] [--prefix P] [--no-memo] [--alpha-beta]
//   ghost maps     --instance FILE
//   ghost balanced --j J --m M --p1 table1|exact|random --p2 mirror|exact|random [--audit CSV]
//   ghost fig1     --shape FILE [--trials N] [--seed S] [--exact] [--out CSV]
//   ghost nh       --data FILE [--out TXT]
//   ghost serve    [--port P] [--host H] [--data-dir D] [--instances-dir D]

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ughost/balanced/audit.hpp"
#include "ughost/balanced/search.hpp"
#include "ughost/core/random.hpp"
#include "ughost/core/solver.hpp"
#include "ughost/core/trie_language.hpp"
#include "ughost/district/districting.hpp"
#include "ughost/district/redistricting_language.hpp"
#include "ughost/district/state_file.hpp"
#include "ughost/experiments/experiments.hpp"
#include "ughost/service/game_service.hpp"
#include "ughost/service/http.hpp"

using namespace ughost;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A state file has section headers; anything else is read as a word list.
bool looks_like_state_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    for (const char* key : {"atoms:", "edges:", "adjacency:", "constraints:", "grid:", "parties:", "name:"}) {
      if (line.compare(b, std::strlen(key), key) == 0) return true;
    }
  }
  return false;
}

// Output stream for `path`, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void print_line(const LanguageOracle& lang, std::span<const Symbol> word, std::size_t from) {
  for (std::size_t i = from; i < word.size(); ++i) {
    SymbolText t = lang.symbol_text(word[i]);
    std::cout << lang.player_name(mover_at(i)) << " " << t.primary << " "
              << (t.secondary.empty() ? "-" : t.secondary) << "\n";
  }
}

int run_solve(const std::string& path, const std::string& first, const std::string& prefix_text,
              bool no_memo, bool alpha_beta) {
  const std::string text = slurp(path);
  std::shared_ptr<LanguageOracle> lang;
  Prefix prefix;
  if (looks_like_state_file(text)) {
    auto inst = district::parse_state_string(text, path);
    if (first != "A" && first != "B" && first != inst.party_a && first != inst.party_b) {
      throw CLI::ValidationError("--first-player", "expected A, B, " + inst.party_a + " or " + inst.party_b);
    }
    auto party = first == "A" || first == inst.party_a ? district::Party::kA : district::Party::kB;
    auto rl = district::make_language(district::enumerate_maps(inst.graph, inst.constraints),
                                      inst.graph.atoms(), inst.constraints.k, party,
                                      {inst.party_a, inst.party_b});
    // Prefix as "atom:district,atom:district".
    std::istringstream in(prefix_text);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--prefix", "expected atom:district pairs");
      prefix.push_back(rl->symbol(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))));
    }
    lang = rl;
  } else {
    std::istringstream in(text);
    auto trie = trie_language(read_word_list(in));
    for (const std::string& w : trie->warnings()) std::cerr << "warning: " << w << "\n";
    prefix = trie->encode(utf8_to_u32(prefix_text));
    lang = trie;
  }

  SolverOptions opts;
  opts.memoize = !no_memo;
  opts.alpha_beta = alpha_beta;
  Solver solver(*lang, opts);
  auto t0 = std::chrono::steady_clock::now();
  GameValue v = solver.solve(prefix);
  Prefix line = prefix;
  for (Symbol s : solver.principal_variation(prefix)) line.push_back(s);
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  print_line(*lang, line, prefix.size());
  std::cout << "value " << v.u1.to_string() << " " << v.u2.to_string() << "\n";
  std::cerr << "nodes " << solver.stats().nodes << ", memo hits " << solver.stats().memo_hits
            << ", table " << solver.stats().table_size << ", " << ms << " ms\n";
  return 0;
}

int run_maps(const std::string& path) {
  auto inst = district::ingest_state(path);
  auto maps = district::enumerate_maps(inst.graph, inst.constraints);
  std::cout << maps.size() << " admissible maps\n";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    auto sc = district::seats(maps[i], inst.graph.atoms());
    std::cout << i << ": " << district::format_map(maps[i], inst.graph.atoms(), true) << "  "
              << inst.party_a << " " << sc.seats_a << ", " << inst.party_b << " " << sc.seats_b;
    if (sc.ties) std::cout << ", tied " << sc.ties;
    std::cout << "\n";
  }
  return 0;
}

int run_balanced(int j, int m, const std::string& p1, const std::string& p2, const std::string& audit,
                 std::uint64_t seed, std::size_t budget) {
  using namespace ughost::balanced;
  Config c{j, m};
  c.validate();

  auto fixed = [&](const std::string& name, Player who) -> BalancedStrategy {
    if (name == "table1") return table1_player();
    if (name == "mirror") return mirror_player();
    if (name == "random") return random_player(derive_seed(seed, player_index(who)));
    throw std::logic_error("no fixed strategy " + name);
  };

  BalancedStrategy s1;
  BalancedStrategy s2;
  std::unique_ptr<MinimaxSolver> minimax;
  std::unique_ptr<BestResponse> br;
  InvariantMonitor monitor(c);
  Checks checks = p2 == "mirror" ? Checks::kMirror : p1 == "table1" ? Checks::kTable1 : Checks::kNone;

  if (p1 == "exact" && p2 == "exact") {
    minimax = std::make_unique<MinimaxSolver>(c, budget);
    s1 = s2 = [&](const State& s) { return minimax->best_move(s); };
  } else if (p1 == "exact" || p2 == "exact") {
    const bool p1_free = p1 == "exact";
    const std::string& other = p1_free ? p2 : p1;
    if (other == "random") {
      throw CLI::ValidationError("exact", "a best response needs a deterministic opponent, not random");
    }
    const Player fixed_player = p1_free ? Player::kSecond : Player::kFirst;
    br = std::make_unique<BestResponse>(c, fixed(other, fixed_player), fixed_player, budget,
                                        checks == Checks::kNone ? nullptr : &monitor);
    BalancedStrategy free = [&](const State& s) { return br->best_move(s); };
    s1 = p1_free ? free : fixed(p1, Player::kFirst);
    s2 = p1_free ? fixed(p2, Player::kSecond) : free;
  } else {
    s1 = fixed(p1, Player::kFirst);
    s2 = fixed(p2, Player::kSecond);
  }

  auto t0 = std::chrono::steady_clock::now();
  MatchResult r = play_match(c, s1, s2, checks == Checks::kNone ? nullptr : &monitor, checks);
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "j=" << j << " m=" << m << " p1=" << p1 << " p2=" << p2 << "\n";
  for (std::size_t i = 0; i < r.moves.size(); ++i) {
    const Move& mv = r.moves[i];
    BinLabel l = label_of(c, mv.bin);
    std::cout << (i % 2 == 0 ? "P1 " : "P2 ") << "bin " << mv.bin << " (" << l.a << "," << l.b
              << ") " << color_name(mv.color) << "\n";
  }
  std::cout << "score P1 " << r.score.p1_bins << " P2 " << r.score.p2_bins
            << (r.score.tie() ? " tie" : "") << "\n";
  if (checks != Checks::kNone) {
    std::cout << "audit " << (monitor.clean() ? "clean" : "VIOLATED") << ": mirror "
              << monitor.mirror_checks << ", monotone " << monitor.monotone_checks << ", strict "
              << monitor.strict_checks << ", early-game " << monitor.early_game_checks << ", final "
              << monitor.final_checks << " checks\n";
    for (const std::string& e : monitor.examples()) std::cout << "  " << e << "\n";
  }
  if (minimax) std::cerr << "states " << minimax->states() << "\n";
  if (br) std::cerr << "states " << br->states() << "\n";
  std::cerr << ms << " ms\n";
  if (!audit.empty()) {
    Output out(audit);
    write_audit_csv(out.stream(), r.audit);
  }
  return monitor.clean() ? 0 : 3;
}

int run_fig1(const std::string& shape, int trials, std::uint64_t seed, bool exact, const std::string& out) {
  auto inst = district::ingest_state(shape);
  experiments::DecominoOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  opts.mode = exact ? experiments::Mode::kExact : experiments::Mode::kSampled;
  auto records = experiments::run_decomino(inst, opts);
  Output o(out);
  experiments::write_csv(o.stream(), records);
  return 0;
}

int run_nh(const std::string& data, const std::string& out) {
  auto inst = district::ingest_state(data);
  auto report = experiments::run_nh(inst);
  Output o(out);
  o.stream() << experiments::format_nh_report(report, inst.graph.atoms());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Utility Ghost solver, balanced game search and experiments"};
  app.require_subcommand(1);

  std::string instance;
  std::string first = "A";
  std::string prefix;
  bool no_memo = false;
  bool alpha_beta = false;
  auto* solve = app.add_subcommand("solve", "Solve a word list or a state file; print the optimal line");
  solve->add_option("--instance", instance, "Word list or state file")->required()->check(CLI::ExistingFile);
  solve->add_option("--first-player", first, "Party moving first (state files)");
  solve->add_option("--prefix", prefix, "Start position: letters, or atom:district,... for states");
  solve->add_flag("--no-memo", no_memo, "Disable the transposition table");
  solve->add_flag("--alpha-beta", alpha_beta, "Alpha-beta pruning (zero-sum languages only)");

  auto* maps = app.add_subcommand("maps", "List the admissible maps of a state file");
  maps->add_option("--instance", instance, "State file")->required()->check(CLI::ExistingFile);

  int j = 1;
  int m = 1;
  std::string p1 = "table1";
  std::string p2 = "mirror";
  std::string audit;
  std::uint64_t seed = 1;
  std::size_t budget = balanced::kDefaultBudget;
  auto* bal = app.add_subcommand("balanced", "Play the balanced bins game");
  bal->add_option("--j", j, "Label range; 2j bins")->required()->check(CLI::PositiveNumber);
  bal->add_option("--m", m, "Majority parameter; bins hold 2m+1")->required()->check(CLI::PositiveNumber);
  bal->add_option("--p1", p1, "P1 strategy")->check(CLI::IsMember({"table1", "exact", "random"}));
  bal->add_option("--p2", p2, "P2 strategy")->check(CLI::IsMember({"mirror", "exact", "random"}));
  bal->add_option("--audit", audit, "Write the per-move audit CSV here");
  bal->add_option("--seed", seed, "Seed for random players");
  bal->add_option("--budget", budget, "Refuse searches estimated above this many states");

  std::string shape;
  int trials = 100;
  bool exact = false;
  std::string out = "-";
  auto* fig1 = app.add_subcommand("fig1", "Votes-seats experiment on a shape");
  fig1->add_option("--shape", shape, "State file")->required()->check(CLI::ExistingFile);
  fig1->add_option("--trials", trials, "Draws per x (sampled mode)")->check(CLI::PositiveNumber);
  fig1->add_option("--seed", seed, "Base seed (sampled mode)");
  fig1->add_flag("--exact", exact, "Average over every voter distribution");
  fig1->add_option("--out", out, "CSV path, - for stdout");

  std::string data;
  auto* nh = app.add_subcommand("nh", "Map, ghost and I-cut-you-freeze report for a state");
  nh->add_option("--data", data, "State file")->required()->check(CLI::ExistingFile);
  nh->add_option("--out", out, "Report path, - for stdout");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string data_dir = "sessions";
  std::string instances_dir = UGHOST_DATA_DIR;
  auto* serve = app.add_subcommand("serve", "Run the game service");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--data-dir", data_dir, "Where sessions.json is kept");
  serve->add_option("--instances-dir", instances_dir, "State files offered by name");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(instance, first, prefix, no_memo, alpha_beta);
    if (*maps) return run_maps(instance);
    if (*bal) return run_balanced(j, m, p1, p2, audit, seed, budget);
    if (*fig1) return run_fig1(shape, trials, seed, exact, out);
    if (*nh) return run_nh(data, out);
    if (*serve) {
      service::GameService svc({data_dir, instances_dir});
      return service::serve(svc, host, port) ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
