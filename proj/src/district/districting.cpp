#include "ughost/district/districting.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ughost::district {

void Constraints::validate(int atom_count) const {
  if (k < 1) throw ValidationError("k must be at least 1");
  if (k > atom_count) throw ValidationError("k exceeds the number of atoms");
  if (balance == BalanceRule::kExactSize && atom_count % k != 0) {
    throw ValidationError("exact-size balance needs k to divide the atom count");
  }
  if (balance == BalanceRule::kPopulationDeviation && !(tolerance > 0.0 && tolerance <= 1.0)) {
    throw ValidationError("population tolerance must lie in (0, 1]");
  }
}

std::vector<std::vector<int>> Districting::parts() const {
  std::vector<std::vector<int>> out(k);
  for (int atom = 0; atom < static_cast<int>(assignment.size()); ++atom) {
    out.at(assignment[atom]).push_back(atom);
  }
  return out;
}

std::vector<AtomMask> Districting::part_masks() const {
  std::vector<AtomMask> out(k, 0);
  for (int atom = 0; atom < static_cast<int>(assignment.size()); ++atom) {
    out.at(assignment[atom]) |= AtomMask{1} << atom;
  }
  return out;
}

Districting Districting::canonical() const {
  std::vector<int> relabel(k, -1);
  int next = 0;
  Districting out{std::vector<int>(assignment.size()), k};
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    int& label = relabel.at(assignment[i]);
    if (label < 0) label = next++;
    out.assignment[i] = label;
  }
  return out;
}

namespace {

bool balanced(const StateGraph& graph, const Constraints& c, std::span<const AtomMask> parts) {
  if (c.balance == BalanceRule::kExactSize) {
    const int size = graph.size() / c.k;
    return std::all_of(parts.begin(), parts.end(),
                       [size](AtomMask m) { return popcount(m) == size; });
  }
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (AtomMask m : parts) {
    std::int64_t pop = 0;
    for (AtomMask r = m; r != 0; r &= r - 1) pop += graph.atom(lowest_atom(r)).population;
    lo = std::min(lo, pop);
    hi = std::max(hi, pop);
  }
  return static_cast<double>(hi - lo) < c.tolerance * static_cast<double>(graph.total_population());
}

// Grows one district at a time. The district being built always contains
// the lowest atom not yet used, which fixes the labeling and makes each
// unlabeled partition appear exactly once. Contiguous districts are grown
// as connected sets around that atom: a vertex skipped at one level is
// banned below it, so each connected set is generated by a single path.
class Enumerator {
 public:
  Enumerator(const StateGraph& graph, const Constraints& c) : graph_(graph), c_(c) {
    if (c_.balance == BalanceRule::kExactSize) target_size_ = graph_.size() / c_.k;
  }

  std::vector<Districting> run() {
    place(0, graph_.all_atoms());
    return std::move(found_);
  }

 private:
  void place(int index, AtomMask remaining) {
    if (remaining == 0) return;
    if (index == c_.k - 1) {
      if (target_size_ && popcount(remaining) != target_size_) return;
      if (c_.contiguity && !graph_.is_connected(remaining)) return;
      parts_.push_back(remaining);
      if (balanced(graph_, c_, parts_)) emit();
      parts_.pop_back();
      return;
    }
    const AtomMask root = AtomMask{1} << lowest_atom(remaining);
    if (c_.contiguity) {
      grow(index, remaining, root, graph_.neighbor_mask(lowest_atom(root)) & remaining, 0);
    } else {
      const AtomMask rest = remaining & ~root;
      for (AtomMask sub = rest;; sub = (sub - 1) & rest) {
        try_part(index, remaining, root | sub);
        if (sub == 0) break;
      }
    }
  }

  void grow(int index, AtomMask remaining, AtomMask part, AtomMask candidates, AtomMask banned) {
    try_part(index, remaining, part);
    if (popcount(part) >= max_part_size(index, remaining)) return;
    while (candidates != 0) {
      const int v = lowest_atom(candidates);
      const AtomMask bit = AtomMask{1} << v;
      candidates &= ~bit;
      AtomMask extended = candidates | (graph_.neighbor_mask(v) & remaining & ~part & ~bit & ~banned);
      grow(index, remaining, part | bit, extended, banned);
      banned |= bit;
    }
  }

  int max_part_size(int index, AtomMask remaining) const {
    if (target_size_) return target_size_;
    return popcount(remaining) - (c_.k - 1 - index);
  }

  void try_part(int index, AtomMask remaining, AtomMask part) {
    const int size = popcount(part);
    if (target_size_ && size != target_size_) return;
    if (size > max_part_size(index, remaining)) return;
    parts_.push_back(part);
    place(index + 1, remaining & ~part);
    parts_.pop_back();
  }

  void emit() {
    Districting d{std::vector<int>(graph_.size(), -1), c_.k};
    for (int district = 0; district < c_.k; ++district) {
      for (AtomMask m = parts_[district]; m != 0; m &= m - 1) d.assignment[lowest_atom(m)] = district;
    }
    found_.push_back(std::move(d));
  }

  const StateGraph& graph_;
  const Constraints& c_;
  int target_size_ = 0;
  std::vector<AtomMask> parts_;
  std::vector<Districting> found_;
};

}  // namespace

std::vector<Districting> enumerate_maps(const StateGraph& graph, const Constraints& constraints) {
  constraints.validate(graph.size());
  std::vector<Districting> maps = Enumerator(graph, constraints).run();
  if (maps.empty()) throw NoAdmissibleMap("no districting satisfies the constraints");
  std::sort(maps.begin(), maps.end(), [](const Districting& a, const Districting& b) {
    return a.parts() < b.parts();
  });
  return maps;
}

bool is_admissible(const StateGraph& graph, const Constraints& constraints,
                   const Districting& map) {
  if (static_cast<int>(map.assignment.size()) != graph.size() || map.k != constraints.k) {
    return false;
  }
  for (int d : map.assignment) {
    if (d < 0 || d >= map.k) return false;
  }
  std::vector<AtomMask> parts = map.part_masks();
  for (AtomMask m : parts) {
    if (m == 0) return false;
    if (constraints.contiguity && !graph.is_connected(m)) return false;
  }
  return balanced(graph, constraints, parts);
}

SeatCount seats(const Districting& map, std::span<const Atom> atoms) {
  std::vector<std::int64_t> a(map.k, 0);
  std::vector<std::int64_t> b(map.k, 0);
  for (std::size_t i = 0; i < map.assignment.size(); ++i) {
    a.at(map.assignment[i]) += atoms[i].votes_a;
    b.at(map.assignment[i]) += atoms[i].votes_b;
  }
  SeatCount out;
  for (int d = 0; d < map.k; ++d) {
    if (a[d] > b[d]) {
      ++out.seats_a;
    } else if (b[d] > a[d]) {
      ++out.seats_b;
    } else {
      ++out.ties;
    }
  }
  return out;
}

std::string format_map(const Districting& map, std::span<const Atom> atoms, bool names) {
  std::ostringstream out;
  auto parts = map.parts();
  for (std::size_t d = 0; d < parts.size(); ++d) {
    if (d) out << ' ';
    out << '{';
    for (std::size_t i = 0; i < parts[d].size(); ++i) {
      if (i) out << ',';
      if (names) {
        out << atoms[parts[d][i]].name;
      } else {
        out << parts[d][i];
      }
    }
    out << '}';
  }
  return out.str();
}

}  // namespace ughost::district
