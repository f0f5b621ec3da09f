#include "ughost/district/state_graph.hpp"

#include <algorithm>
#include <set>

namespace ughost::district {

StateGraph::StateGraph(std::vector<Atom> atoms, const std::vector<std::pair<int, int>>& edges)
    : atoms_(std::move(atoms)) {
  const int n = size();
  if (n == 0) throw ValidationError("state has no atoms");
  if (n > kMaxAtoms) {
    throw ValidationError("state has " + std::to_string(n) + " atoms; at most " +
                          std::to_string(kMaxAtoms) + " are supported");
  }
  for (int i = 0; i < n; ++i) {
    const Atom& a = atoms_[i];
    if (a.id != i) {
      throw ValidationError("atom ids must be dense and ordered: expected id " +
                            std::to_string(i) + ", found " + std::to_string(a.id));
    }
    if (a.population < 0 || a.votes_a < 0 || a.votes_b < 0 || a.votes_other < 0) {
      throw ValidationError("atom " + std::to_string(i) + " has a negative count");
    }
  }

  neighbors_.assign(n, {});
  neighbor_masks_.assign(n, 0);
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ValidationError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                            " references an unknown atom");
    }
    if (a == b) throw ValidationError("self-loop on atom " + std::to_string(a));
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate edge " + std::to_string(key.first) + "-" +
                            std::to_string(key.second));
    }
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
    neighbor_masks_[a] |= AtomMask{1} << b;
    neighbor_masks_[b] |= AtomMask{1} << a;
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());

  if (!is_connected(all_atoms())) throw ValidationError("state graph is not connected");
}

std::vector<std::pair<int, int>> StateGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a) {
    for (int b : neighbors_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

std::int64_t StateGraph::total_population() const {
  std::int64_t total = 0;
  for (const Atom& a : atoms_) total += a.population;
  return total;
}

AtomMask StateGraph::all_atoms() const {
  return size() == kMaxAtoms ? ~AtomMask{0} : (AtomMask{1} << size()) - 1;
}

bool StateGraph::is_connected(AtomMask mask) const {
  if (mask == 0) return false;
  AtomMask reached = AtomMask{1} << lowest_atom(mask);
  AtomMask frontier = reached;
  while (frontier != 0) {
    AtomMask next = 0;
    for (AtomMask f = frontier; f != 0; f &= f - 1) next |= neighbor_masks_[lowest_atom(f)];
    next &= mask & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == mask;
}

StateGraph StateGraph::with_votes(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& votes) const {
  if (static_cast<int>(votes.size()) != size()) {
    throw ValidationError("vote vector has " + std::to_string(votes.size()) +
                          " entries for " + std::to_string(size()) + " atoms");
  }
  StateGraph copy = *this;
  for (int i = 0; i < size(); ++i) {
    copy.atoms_[i].votes_a = votes[i].first;
    copy.atoms_[i].votes_b = votes[i].second;
    copy.atoms_[i].votes_other = 0;
  }
  return copy;
}

StateGraph grid_graph(int rows, int cols) {
  if (rows <= 0 || cols <= 0) throw ValidationError("grid dimensions must be positive");
  std::vector<Atom> atoms;
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Atom a;
      a.id = r * cols + c;
      a.name = "r" + std::to_string(r) + "c" + std::to_string(c);
      a.population = 1;
      a.position = Position{static_cast<double>(c), static_cast<double>(r)};
      atoms.push_back(std::move(a));
      if (c + 1 < cols) edges.emplace_back(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) edges.emplace_back(r * cols + c, (r + 1) * cols + c);
    }
  }
  return StateGraph(std::move(atoms), edges);
}

}  // namespace ughost::district
