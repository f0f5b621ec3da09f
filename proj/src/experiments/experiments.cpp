#include "ughost/experiments/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "ughost/core/random.hpp"
#include "ughost/core/solver.hpp"

namespace ughost::experiments {

using district::Atom;

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "condition,x,statistic,value,trials,seed\n";
  for (const auto& r : records) {
    std::ostringstream value;
    value << std::setprecision(10) << r.value;
    out << r.condition << ',' << r.x << ',' << r.statistic << ',' << value.str() << ',' << r.trials
        << ',' << r.seed << '\n';
  }
}

namespace {

std::vector<Atom> unanimous_atoms(const StateGraph& graph, const std::vector<bool>& a_voters) {
  std::vector<Atom> atoms = graph.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    atoms[i].votes_a = a_voters[i] ? 1 : 0;
    atoms[i].votes_b = a_voters[i] ? 0 : 1;
    atoms[i].votes_other = 0;
  }
  return atoms;
}

int seats_for(const SeatCount& s, Party p) { return p == Party::kA ? s.seats_a : s.seats_b; }

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double sample_std() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(0.0, var));
  }
};

const char* const kConditions[] = {"random_map", "max_A", "min_A", "ghost"};

double pick(const DrawOutcome& d, int condition) {
  switch (condition) {
    case 0:
      return d.random_map;
    case 1:
      return d.max_a;
    case 2:
      return d.min_a;
    default:
      return d.ghost;
  }
}

}  // namespace

DrawOutcome evaluate_draw(const StateGraph& graph, const std::vector<Districting>& maps,
                          const std::vector<bool>& a_voters, Party ghost_first) {
  if (static_cast<int>(a_voters.size()) != graph.size()) {
    throw std::invalid_argument("voter distribution does not match the atom count");
  }
  if (maps.empty()) throw district::NoAdmissibleMap("no admissible maps");
  std::vector<Atom> atoms = unanimous_atoms(graph, a_voters);
  DrawOutcome out;
  out.max_a = -1;
  out.min_a = maps.front().k + 1;
  double total = 0.0;
  for (const Districting& m : maps) {
    const int a = district::seats(m, atoms).seats_a;
    total += a;
    out.max_a = std::max(out.max_a, a);
    out.min_a = std::min(out.min_a, a);
  }
  out.random_map = total / static_cast<double>(maps.size());

  district::RedistrictingLanguage lang(maps, atoms, maps.front().k, ghost_first);
  Solver solver(lang);
  GameValue v = solver.solve(Prefix{});
  const double first_seats = v.u1.value();
  const double second_seats = v.u2.value();
  out.ghost = static_cast<int>(ghost_first == Party::kA ? first_seats : second_seats);
  return out;
}

std::vector<ExperimentRecord> run_decomino(const district::StateInstance& shape,
                                           const DecominoOptions& options) {
  const StateGraph& graph = shape.graph;
  const std::vector<Districting> maps = district::enumerate_maps(graph, shape.constraints);
  const int n = graph.size();
  std::vector<ExperimentRecord> out;

  for (int x = 0; x <= n; ++x) {
    Accumulator acc[4];
    if (options.mode == Mode::kExact) {
      // Every subset of size x, in lexicographic order.
      std::vector<bool> a_voters(n, false);
      std::fill(a_voters.begin(), a_voters.begin() + x, true);
      do {
        DrawOutcome d = evaluate_draw(graph, maps, a_voters);
        for (int c = 0; c < 4; ++c) acc[c].add(pick(d, c));
      } while (std::prev_permutation(a_voters.begin(), a_voters.end()));
      for (int c = 0; c < 4; ++c) {
        out.push_back({kConditions[c], x, "exact_expectation", acc[c].mean(), acc[c].n, 0});
      }
      continue;
    }
    if (options.trials < 1) throw std::invalid_argument("trials must be positive");
    for (int t = 0; t < options.trials; ++t) {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(t)));
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(std::span<int>(order));
      std::vector<bool> a_voters(n, false);
      for (int i = 0; i < x; ++i) a_voters[order[i]] = true;
      DrawOutcome d = evaluate_draw(graph, maps, a_voters);
      for (int c = 0; c < 4; ++c) acc[c].add(pick(d, c));
    }
    for (int c = 0; c < 4; ++c) {
      out.push_back({kConditions[c], x, "mean", acc[c].mean(), options.trials, options.seed});
      out.push_back({kConditions[c], x, "std", acc[c].sample_std(), options.trials, options.seed});
    }
  }
  return out;
}

Districting icyf_k2(const std::vector<Districting>& maps, const std::vector<Atom>& atoms,
                    Party first_player) {
  if (maps.empty()) throw district::NoAdmissibleMap("no admissible maps");
  for (const Districting& m : maps) {
    if (m.k != 2) throw NotTwoDistricts("I-cut-you-freeze is only implemented for two districts");
  }
  const Districting* best = &maps.front();
  int best_seats = -1;
  for (const Districting& m : maps) {
    const int s = seats_for(district::seats(m, atoms), first_player);
    if (s > best_seats) {
      best = &m;
      best_seats = s;
    }
  }
  return *best;
}

std::pair<double, double> vote_shares(const StateGraph& graph) {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t all = 0;
  for (const Atom& atom : graph.atoms()) {
    a += atom.votes_a;
    b += atom.votes_b;
    all += atom.votes_a + atom.votes_b + atom.votes_other;
  }
  if (all == 0) return {0.0, 0.0};
  return {100.0 * static_cast<double>(a) / static_cast<double>(all),
          100.0 * static_cast<double>(b) / static_cast<double>(all)};
}

namespace {

int index_of(const std::vector<Districting>& maps, const Districting& m) {
  const Districting canon = m.canonical();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].canonical() == canon) return static_cast<int>(i);
  }
  throw std::logic_error("map not in the admissible set");
}

}  // namespace

NhReport run_nh(const district::StateInstance& state) {
  NhReport report;
  report.name = state.name;
  report.party_a = state.party_a;
  report.party_b = state.party_b;
  report.maps = district::enumerate_maps(state.graph, state.constraints);
  const std::vector<Atom>& atoms = state.graph.atoms();
  for (const Districting& m : report.maps) report.map_seats.push_back(district::seats(m, atoms));
  std::tie(report.share_a, report.share_b) = vote_shares(state.graph);

  const std::vector<std::string> names{state.party_a, state.party_b};
  for (Party first : {Party::kA, Party::kB}) {
    district::RedistrictingLanguage lang(report.maps, atoms, state.constraints.k, first, names);
    Solver solver(lang);
    Prefix word = solver.principal_variation(Prefix{});
    GhostOutcome g;
    g.first = first;
    g.map = district::Districting{lang.assignment(word), state.constraints.k};
    g.map_index = lang.unlabeled_index(word);
    g.seats = district::seats(g.map, atoms);
    for (std::size_t i = 0; i < word.size(); ++i) {
      SymbolText t = lang.symbol_text(word[i]);
      g.moves.push_back(lang.player_name(mover_at(i)) + " " + t.primary + " " + t.secondary);
    }
    report.ghost.push_back(std::move(g));

    if (state.constraints.k == 2) {
      IcyfOutcome c;
      c.first = first;
      c.map = icyf_k2(report.maps, atoms, first);
      c.map_index = index_of(report.maps, c.map);
      c.seats = district::seats(c.map, atoms);
      report.icyf.push_back(std::move(c));
    }
  }
  return report;
}

std::string format_nh_report(const NhReport& report, const std::vector<Atom>& atoms) {
  std::ostringstream out;
  auto party = [&](Party p) { return p == Party::kA ? report.party_a : report.party_b; };
  auto seats_text = [&](const SeatCount& s) {
    std::ostringstream t;
    t << report.party_a << " " << s.seats_a << ", " << report.party_b << " " << s.seats_b;
    if (s.ties) t << ", tied " << s.ties;
    return t.str();
  };
  out << report.name << "\n";
  out << std::fixed << std::setprecision(2) << "vote share: " << report.party_a << " "
      << report.share_a << "%, " << report.party_b << " " << report.share_b << "%\n";
  out << report.maps.size() << " admissible maps\n";
  for (std::size_t i = 0; i < report.maps.size(); ++i) {
    out << "  map " << i << ": " << district::format_map(report.maps[i], atoms, true) << "  ("
        << seats_text(report.map_seats[i]) << ")\n";
  }
  for (const GhostOutcome& g : report.ghost) {
    out << "ghost, " << party(g.first) << " first: map " << g.map_index << " ("
        << seats_text(g.seats) << ")\n";
    for (const std::string& m : g.moves) out << "    " << m << "\n";
  }
  for (const IcyfOutcome& c : report.icyf) {
    out << "icyf, " << party(c.first) << " first: map " << c.map_index << " ("
        << seats_text(c.seats) << ")\n";
  }
  return out.str();
}

}  // namespace ughost::experiments
