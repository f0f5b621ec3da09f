#include <algorithm>
#include <fstream>
#include <functional>
#include <set>

#include "doctest.h"
#include "ughost/core/play.hpp"
#include "ughost/core/random.hpp"
#include "ughost/core/solver.hpp"
#include "ughost/district/districting.hpp"
#include "ughost/district/redistricting_language.hpp"
#include "ughost/district/state_file.hpp"

using namespace ughost;
using namespace ughost::district;

namespace {

std::string data(const char* name) { return std::string(UGHOST_DATA_DIR) + "/" + name; }

// Every k-coloring of the atoms, filtered by the constraints and reduced to
// first-occurrence labels. Shares nothing with the enumerator.
std::set<std::vector<int>> coloring_oracle(const StateGraph& g, const Constraints& c) {
  const int n = g.size();
  std::set<std::vector<int>> out;
  std::vector<int> color(n, 0);
  auto connected = [&](int d) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (color[i] == d) members.push_back(i);
    }
    if (members.empty()) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> stack{members[0]};
    seen[members[0]] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++reached;
      for (int w : g.neighbors(v)) {
        if (color[w] == d && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return reached == members.size();
  };
  std::function<void(int)> rec = [&](int i) {
    if (i < n) {
      for (int d = 0; d < c.k; ++d) {
        color[i] = d;
        rec(i + 1);
      }
      return;
    }
    std::vector<std::int64_t> pop(c.k, 0);
    std::vector<int> size(c.k, 0);
    for (int a = 0; a < n; ++a) {
      pop[color[a]] += g.atom(a).population;
      ++size[color[a]];
    }
    for (int d = 0; d < c.k; ++d) {
      if (size[d] == 0) return;
      if (c.contiguity && !connected(d)) return;
      if (c.balance == BalanceRule::kExactSize && size[d] != n / c.k) return;
    }
    if (c.balance == BalanceRule::kPopulationDeviation) {
      auto [lo, hi] = std::minmax_element(pop.begin(), pop.end());
      if (!(static_cast<double>(*hi - *lo) < c.tolerance * static_cast<double>(g.total_population()))) {
        return;
      }
    }
    std::vector<int> relabel(c.k, -1);
    std::vector<int> canon(n);
    int next = 0;
    for (int a = 0; a < n; ++a) {
      if (relabel[color[a]] < 0) relabel[color[a]] = next++;
      canon[a] = relabel[color[a]];
    }
    out.insert(canon);
  };
  rec(0);
  return out;
}

std::set<std::vector<int>> as_set(const std::vector<Districting>& maps) {
  std::set<std::vector<int>> out;
  for (const auto& m : maps) out.insert(m.canonical().assignment);
  return out;
}

StateGraph random_graph(Rng& rng, int n) {
  std::vector<Atom> atoms(n);
  for (int i = 0; i < n; ++i) {
    atoms[i].id = i;
    atoms[i].name = "a" + std::to_string(i);
    atoms[i].population = 1 + static_cast<std::int64_t>(rng.below(20));
    atoms[i].votes_a = static_cast<std::int64_t>(rng.below(10));
    atoms[i].votes_b = static_cast<std::int64_t>(rng.below(10));
  }
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace(static_cast<int>(rng.below(i)), i);
  int extra = static_cast<int>(rng.below(n + 1));
  for (int e = 0; e < extra; ++e) {
    int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n));
    if (a != b) edges.emplace(std::min(a, b), std::max(a, b));
  }
  return StateGraph(atoms, {edges.begin(), edges.end()});
}

StateInstance six_county() { return ingest_state(data("six_county.txt")); }

std::shared_ptr<RedistrictingLanguage> six_county_language() {
  StateInstance s = six_county();
  return make_language(enumerate_maps(s.graph, s.constraints), s.graph.atoms(), 2, Party::kA,
                       {s.party_a, s.party_b});
}

}  // namespace

TEST_CASE("2x3 grid has three exact-size contiguous bipartitions") {
  Constraints c{.k = 2, .balance = BalanceRule::kExactSize};
  auto maps = enumerate_maps(grid_graph(2, 3), c);
  CHECK(maps.size() == 3);
  CHECK(as_set(maps) == coloring_oracle(grid_graph(2, 3), c));
  CHECK(format_map(maps[0], grid_graph(2, 3).atoms()) == "{0,1,2} {3,4,5}");
}

TEST_CASE("enumeration matches the coloring oracle on random graphs") {
  Rng rng(314);
  int checked = 0;
  for (int round = 0; round < 250; ++round) {
    const int n = 2 + static_cast<int>(rng.below(11));
    StateGraph g = random_graph(rng, n);
    Constraints c;
    c.k = 1 + static_cast<int>(rng.below(std::min(n, n <= 9 ? 3 : 2)));
    c.contiguity = rng.below(4) != 0;
    if (rng.below(2) == 0 && n % c.k == 0) {
      c.balance = BalanceRule::kExactSize;
    } else {
      c.balance = BalanceRule::kPopulationDeviation;
      c.tolerance = 0.05 + 0.05 * static_cast<double>(rng.below(10));
    }
    auto expected = coloring_oracle(g, c);
    INFO("round " << round << " n=" << n << " k=" << c.k);
    if (expected.empty()) {
      CHECK_THROWS_AS(enumerate_maps(g, c), NoAdmissibleMap);
      continue;
    }
    auto maps = enumerate_maps(g, c);
    CHECK(maps.size() == expected.size());
    CHECK(as_set(maps) == expected);
    for (const auto& m : maps) CHECK(is_admissible(g, c, m));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("enumeration order is by sorted parts") {
  Constraints c{.k = 2, .balance = BalanceRule::kExactSize};
  auto maps = enumerate_maps(grid_graph(3, 4), c);
  CHECK(std::is_sorted(maps.begin(), maps.end(),
                       [](const Districting& a, const Districting& b) { return a.parts() < b.parts(); }));
  for (const auto& m : maps) CHECK(m.assignment[0] == 0);
}

TEST_CASE("no admissible map") {
  Constraints c{.k = 2, .balance = BalanceRule::kPopulationDeviation, .tolerance = 0.01};
  std::vector<Atom> atoms{{0, "x", 10, 0, 0, 0, {}}, {1, "y", 1, 0, 0, 0, {}}};
  CHECK_THROWS_AS(enumerate_maps(StateGraph(atoms, {{0, 1}}), c), NoAdmissibleMap);
}

TEST_CASE("constraint validation") {
  CHECK_THROWS_AS((Constraints{.k = 0}.validate(4)), ValidationError);
  CHECK_THROWS_AS((Constraints{.k = 3, .balance = BalanceRule::kExactSize}.validate(4)), ValidationError);
  CHECK_THROWS_AS((Constraints{.k = 2, .balance = BalanceRule::kPopulationDeviation, .tolerance = 0.0}.validate(4)),
                  ValidationError);
  CHECK_THROWS_AS((Constraints{.k = 5}.validate(4)), ValidationError);
}

TEST_CASE("seats with strict majorities and ties") {
  std::vector<Atom> atoms(4);
  atoms[0].votes_a = 3;
  atoms[1].votes_b = 2;
  atoms[2].votes_a = 1;
  atoms[3].votes_b = 1;
  Districting map{{0, 0, 1, 1}, 2};
  CHECK(seats(map, atoms) == SeatCount{1, 0, 1});
  for (auto& a : atoms) {
    a.votes_a = 1;
    a.votes_b = 0;
  }
  CHECK(seats(map, atoms) == SeatCount{2, 0, 0});
}

TEST_CASE("seats color-swap symmetry") {
  Rng rng(8);
  for (int round = 0; round < 200; ++round) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const int k = 1 + static_cast<int>(rng.below(std::min(n, 4)));
    std::vector<Atom> atoms(n);
    Districting map{std::vector<int>(n), k};
    for (int i = 0; i < n; ++i) {
      atoms[i].votes_a = static_cast<std::int64_t>(rng.below(5));
      atoms[i].votes_b = static_cast<std::int64_t>(rng.below(5));
      map.assignment[i] = i < k ? i : static_cast<int>(rng.below(k));
    }
    SeatCount s = seats(map, atoms);
    CHECK(s.seats_a + s.seats_b + s.ties == k);
    for (auto& a : atoms) std::swap(a.votes_a, a.votes_b);
    SeatCount t = seats(map, atoms);
    CHECK(t.seats_a == s.seats_b);
    CHECK(t.seats_b == s.seats_a);
    CHECK(t.ties == s.ties);
  }
}

TEST_CASE("labeled expansion is closed under relabeling") {
  Constraints c{.k = 3, .balance = BalanceRule::kExactSize};
  StateGraph g = grid_graph(2, 3);
  auto maps = enumerate_maps(g, c);
  RedistrictingLanguage lang(maps, g.atoms(), 3);
  CHECK(lang.labeled_maps().size() == 6 * maps.size());
  std::set<std::vector<int>> labeled;
  for (const auto& m : lang.labeled_maps()) labeled.insert(m.assignment);
  for (const auto& m : lang.labeled_maps()) {
    std::vector<int> perm{0, 1, 2};
    do {
      std::vector<int> moved(m.assignment.size());
      for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = perm[m.assignment[i]];
      CHECK(labeled.count(moved));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("2x3 language word count by brute-force generation") {
  StateGraph g = grid_graph(2, 3);
  Constraints c{.k = 2, .balance = BalanceRule::kExactSize};
  auto lang = make_language(enumerate_maps(g, c), g.atoms(), 2);

  // Labeled admissible maps from the coloring oracle, both labelings.
  std::set<std::vector<int>> admissible;
  for (auto m : coloring_oracle(g, c)) {
    admissible.insert(m);
    for (int& d : m) d = 1 - d;
    admissible.insert(m);
  }
  // Walk every sequence of distinct (atom, district) pairs; a sequence is a
  // word exactly when it spells an admissible map, and a prefix when some
  // admissible map agrees with it.
  std::size_t words = 0;
  std::size_t prefixes_checked = 0;
  std::vector<int> assign(6, -1);
  Prefix p;
  std::function<void()> walk = [&]() {
    bool consistent = false;
    for (const auto& m : admissible) {
      bool ok = true;
      for (int a = 0; a < 6; ++a) ok = ok && (assign[a] < 0 || assign[a] == m[a]);
      consistent = consistent || ok;
    }
    CHECK(lang->is_prefix(p) == consistent);
    ++prefixes_checked;
    if (!consistent) return;
    if (p.size() == 6) {
      ++words;
      CHECK(lang->is_terminal(p));
      return;
    }
    for (int a = 0; a < 6; ++a) {
      if (assign[a] >= 0) continue;
      for (int d = 0; d < 2; ++d) {
        assign[a] = d;
        p.push_back(lang->symbol(a, d));
        walk();
        p.pop_back();
        assign[a] = -1;
      }
    }
  };
  walk();
  CHECK(words == 3 * 2 * 720);
  CHECK(prefixes_checked > words);
}

TEST_CASE("duplicate atom and out-of-range symbols are rejected") {
  auto lang = six_county_language();
  Prefix dup{lang->symbol(0, 0), lang->symbol(0, 1)};
  CHECK_FALSE(lang->is_prefix(dup));
  CHECK(lang->check_move(Prefix{lang->symbol(0, 0)}, lang->symbol(0, 1)) ==
        RedistrictingLanguage::Rejection::kAtomTaken);
  CHECK(lang->check_move(Prefix{}, Symbol{12}) == RedistrictingLanguage::Rejection::kOutOfRange);
  CHECK_THROWS_AS(legal_moves(dup, *lang), InvalidPrefix);
  CHECK_THROWS_AS(lang->assignment(dup), InvalidPrefix);
}

TEST_CASE("six-county: completability excludes separating the bottom row") {
  auto lang = six_county_language();
  CHECK(lang->unlabeled_maps().size() == 3);
  // top-left in district 0, bottom-left in district 1.
  Prefix p{lang->symbol(0, 0), lang->symbol(4, 1)};
  auto moves = legal_moves(p, *lang);
  CHECK(std::find(moves.begin(), moves.end(), lang->symbol(5, 0)) == moves.end());
  CHECK(lang->check_move(p, lang->symbol(5, 0)) ==
        RedistrictingLanguage::Rejection::kNoAdmissibleCompletion);
  CHECK(std::find(moves.begin(), moves.end(), lang->symbol(5, 1)) != moves.end());
  // Oracle: a symbol is legal iff some labeled map agrees with prefix + symbol.
  for (int a = 0; a < 6; ++a) {
    for (int d = 0; d < 2; ++d) {
      Symbol s = lang->symbol(a, d);
      bool expected = false;
      if (a != 0 && a != 4) {
        for (const auto& m : lang->labeled_maps()) {
          expected = expected || (m.assignment[0] == 0 && m.assignment[4] == 1 && m.assignment[a] == d);
        }
      }
      CHECK((std::find(moves.begin(), moves.end(), s) != moves.end()) == expected);
    }
  }
}

TEST_CASE("six-county: optimal play ends one seat each") {
  auto lang = six_county_language();
  GameValue root = solve(Prefix{}, *lang);
  CHECK(root.u1 == Payoff(1));
  CHECK(root.u2 == Payoff(1));

  auto solver = std::make_shared<Solver>(*lang);
  PlayResult r = play_out(Prefix{}, *lang, solver_strategy(solver), solver_strategy(solver));
  CHECK(r.trace.size() == 6);
  CHECK(r.utilities == Utilities{1, 1});

  // After red's opening, blue's reply still secures one seat.
  Prefix opening{root.principal_move.value()};
  CHECK(solve(opening, *lang).u2 == Payoff(1));
  Prefix reply = opening;
  reply.push_back(best_move(opening, *lang));
  CHECK(solve(reply, *lang).u2 >= Payoff(1));
}

TEST_CASE("six-county: the worked line is legal and optimal at every step") {
  auto lang = six_county_language();
  Prefix example{lang->symbol(0, 0), lang->symbol(4, 1), lang->symbol(3, 1),
                 lang->symbol(5, 1), lang->symbol(1, 0), lang->symbol(2, 0)};
  Solver solver(*lang);
  for (std::size_t i = 0; i <= example.size(); ++i) {
    auto p = std::span<const Symbol>(example).first(i);
    REQUIRE(lang->is_prefix(p));
    GameValue v = solver.solve(p);
    CHECK(v.u1 == Payoff(1));
    CHECK(v.u2 == Payoff(1));
  }
  CHECK(lang->utilities(example) == Utilities{1, 1});
}

TEST_CASE("six-county: blue's reply keeps both blue counties together") {
  auto lang = six_county_language();
  Solver solver(*lang);
  Prefix p{solver.best_move(Prefix{})};
  p.push_back(solver.best_move(p));
  for (const auto& m : lang->labeled_maps()) {
    bool agrees = true;
    for (Symbol s : p) agrees = agrees && m.assignment[lang->atom_of(s)] == lang->district_of(s);
    if (agrees) CHECK(m.assignment[4] == m.assignment[5]);
  }
}

TEST_CASE("six-county: red script against best replies falls back when the line diverges") {
  auto lang = six_county_language();
  auto solver = std::make_shared<Solver>(*lang);
  Strategy best = solver_strategy(solver);
  Strategy red = [&, script = std::vector<Symbol>{lang->symbol(0, 0), lang->symbol(3, 1), lang->symbol(1, 0)}](
                     std::span<const Symbol> prefix, Player mover) {
    Symbol next = script[prefix.size() / 2];
    return lang->check_move(prefix, next) ? best(prefix, mover) : next;
  };
  PlayResult r = play_out(Prefix{}, *lang, red, best);
  CHECK(r.trace.size() == 6);
  CHECK(r.utilities == Utilities{1, 1});
}

TEST_CASE("zero-sum conservation on a redistricting language") {
  auto lang = six_county_language();
  REQUIRE(lang->zero_sum_total() == 2.0);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    PlayResult r = play_out(Prefix{}, *lang, random_strategy(*lang, rng.next()), random_strategy(*lang, rng.next()));
    CHECK(r.utilities.first + r.utilities.second == 2.0);
  }
}

TEST_CASE("prefix monotonicity and memo soundness on sampled prefixes") {
  StateGraph g = grid_graph(2, 3);
  Constraints c{.k = 2, .balance = BalanceRule::kExactSize};
  std::vector<std::pair<std::int64_t, std::int64_t>> votes{{3, 0}, {0, 1}, {2, 1}, {1, 2}, {1, 0}, {0, 3}};
  g = g.with_votes(votes);
  auto lang = make_language(enumerate_maps(g, c), g.atoms(), 2);
  Solver memo(*lang);
  Solver plain(*lang, {.memoize = false});
  Solver pruned(*lang, {.memoize = true, .alpha_beta = true});
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    PlayResult r = play_out(Prefix{}, *lang, random_strategy(*lang, rng.next()), random_strategy(*lang, rng.next()));
    for (std::size_t len = 0; len <= r.word.size(); ++len) {
      auto p = std::span<const Symbol>(r.word).first(len);
      CHECK(lang->is_prefix(p));
      GameValue v = memo.solve(p);
      CHECK(v == plain.solve(p));
      CHECK(v == pruned.solve(p));
    }
  }
}

TEST_CASE("state key ignores move order and label names") {
  auto lang = six_county_language();
  Prefix a{lang->symbol(0, 0), lang->symbol(4, 1)};
  Prefix b{lang->symbol(4, 1), lang->symbol(0, 0)};
  Prefix swapped{lang->symbol(0, 1), lang->symbol(4, 0)};
  CHECK(lang->state_key(a) == lang->state_key(b));
  CHECK(lang->state_key(a) == lang->state_key(swapped));
  CHECK(lang->state_key(a) != lang->state_key(Prefix{lang->symbol(0, 0), lang->symbol(4, 0)}));
}

TEST_CASE("state file: grid shorthand") {
  auto s = parse_state_string("grid: 2x3\nconstraints:\nk 2\nbalance exact\n");
  CHECK(s.graph.size() == 6);
  CHECK(s.graph.edges().size() == 7);
  CHECK(s.graph.adjacent(0, 3));
  CHECK_FALSE(s.graph.adjacent(2, 3));
  CHECK(s.grid->rows == 2);
}

TEST_CASE("state file: errors carry line and field") {
  try {
    parse_state_string("atoms:\n0 a 1 2 x\n", "t.txt");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "atoms.votes_b");
    CHECK(std::string(e.what()).find("t.txt:2") == 0);
  }
  CHECK_THROWS_AS(parse_state_string("atoms:\n0 a 1 1 1\n"), ParseError);  // k missing
  CHECK_THROWS_AS(parse_state_string("bogus: 1\n"), ParseError);
  CHECK_THROWS_AS(parse_state_string("grid: 2x2\nedges:\n0 1\nconstraints:\nk 2\n"), ParseError);
}

TEST_CASE("state file: invariant violations") {
  const char* asymmetric =
      "atoms:\n0 a 1 0 0\n1 b 1 0 0\n2 c 1 0 0\n"
      "adjacency:\n0: 1\n1: 0 2\n2:\n"
      "constraints:\nk 2\n";
  CHECK_THROWS_AS(parse_state_string(asymmetric), ValidationError);
  CHECK_THROWS_AS(parse_state_string("atoms:\n0 a 1 0 0\n1 b 1 0 0\nconstraints:\nk 2\n"), ValidationError);
  CHECK_THROWS_AS(parse_state_string("atoms:\n0 a 1 0 0\n2 b 1 0 0\nedges:\n0 2\nconstraints:\nk 1\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_state_string("atoms:\n0 a 1 0 0\nedges:\n0 0\nconstraints:\nk 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_state_string("atoms:\n0 a -1 0 0\nconstraints:\nk 1\n"), ValidationError);
}

TEST_CASE("state file: format round trip") {
  StateInstance s = ingest_state(data("nh_counties.txt"));
  StateInstance t = parse_state_string(format_state(s));
  CHECK(t.graph.edges() == s.graph.edges());
  CHECK(t.graph.total_population() == s.graph.total_population());
  CHECK(t.party_a == "Dem");
  CHECK(t.constraints.tolerance == doctest::Approx(0.10));
}

TEST_CASE("bundled New Hampshire data") {
  StateInstance s = ingest_state(data("nh_counties.txt"));
  CHECK(s.graph.size() == 10);
  CHECK(s.graph.is_connected(s.graph.all_atoms()));
  CHECK(s.graph.edges().size() == 19);
  CHECK(s.graph.total_population() == 1316470);
  CHECK(s.constraints.balance == BalanceRule::kPopulationDeviation);
  CHECK(as_set(enumerate_maps(s.graph, s.constraints)) == coloring_oracle(s.graph, s.constraints));
}

TEST_CASE("bundled decomino") {
  StateInstance s = ingest_state(data("decomino.txt"));
  auto maps = enumerate_maps(s.graph, s.constraints);
  CHECK(maps.size() == 7);
  CHECK(as_set(maps) == coloring_oracle(s.graph, s.constraints));
}
