#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ughost::district {

using AtomMask = std::uint64_t;
inline constexpr int kMaxAtoms = 64;

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct Atom {
  int id = 0;
  std::string name;
  std::int64_t population = 0;
  std::int64_t votes_a = 0;
  std::int64_t votes_b = 0;
  // Votes for anyone else; only used for vote-share reporting.
  std::int64_t votes_other = 0;
  std::optional<Position> position;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Atoms plus a symmetric, irreflexive adjacency. Construction validates every
// invariant (dense ids, no self-loops, no duplicate edges, connected) and
// throws ValidationError naming the violated one.
class StateGraph {
 public:
  StateGraph() = default;
  StateGraph(std::vector<Atom> atoms, const std::vector<std::pair<int, int>>& edges);

  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(int id) const { return atoms_.at(id); }
  const std::vector<int>& neighbors(int id) const { return neighbors_.at(id); }
  AtomMask neighbor_mask(int id) const { return neighbor_masks_.at(id); }
  bool adjacent(int a, int b) const { return (neighbor_masks_.at(a) >> b) & 1U; }
  std::vector<std::pair<int, int>> edges() const;

  std::int64_t total_population() const;
  AtomMask all_atoms() const;

  // True if the atoms of `mask` induce a connected subgraph (false if empty).
  bool is_connected(AtomMask mask) const;

  // Same graph with votes replaced (populations, names, edges kept).
  StateGraph with_votes(const std::vector<std::pair<std::int64_t, std::int64_t>>& votes) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<AtomMask> neighbor_masks_;
};

// Rows x cols rook-adjacency grid; atom id = row * cols + col, unit
// population, zero votes, position (col, row).
StateGraph grid_graph(int rows, int cols);

inline int popcount(AtomMask m) { return __builtin_popcountll(m); }
inline int lowest_atom(AtomMask m) { return __builtin_ctzll(m); }

}  // namespace ughost::district
