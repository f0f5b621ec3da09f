#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ughost/district/state_graph.hpp"

namespace ughost::district {

enum class BalanceRule { kExactSize, kPopulationDeviation };

struct Constraints {
  int k = 2;
  BalanceRule balance = BalanceRule::kExactSize;
  // Population rule: max - min district population must be strictly less
  // than tolerance * total population.
  double tolerance = 0.1;
  bool contiguity = true;

  // Throws ValidationError; needs the atom count for the exact-size check.
  void validate(int atom_count) const;
};

// Total map atom id -> district id in [0, k).
struct Districting {
  std::vector<int> assignment;
  int k = 0;

  std::vector<std::vector<int>> parts() const;
  std::vector<AtomMask> part_masks() const;

  // Districts renumbered by first appearance (atom 0 lands in district 0).
  Districting canonical() const;

  friend bool operator==(const Districting&, const Districting&) = default;
};

struct SeatCount {
  int seats_a = 0;
  int seats_b = 0;
  int ties = 0;

  friend bool operator==(const SeatCount&, const SeatCount&) = default;
};

class NoAdmissibleMap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All admissible districtings, one per unlabeled partition, in canonical
// labeling, ordered lexicographically by their parts (so the part holding
// atom 0 is the primary key). Throws NoAdmissibleMap when there are none.
std::vector<Districting> enumerate_maps(const StateGraph& graph, const Constraints& constraints);

// Balance and contiguity check for one total assignment.
bool is_admissible(const StateGraph& graph, const Constraints& constraints,
                   const Districting& map);

// A district goes to A on a strict votes_a majority, to B on a strict
// votes_b majority, and is a tie otherwise.
SeatCount seats(const Districting& map, std::span<const Atom> atoms);

// "{0,1,4} {2,3,5}"; names instead of ids when `names` is set.
std::string format_map(const Districting& map, std::span<const Atom> atoms, bool names = false);

}  // namespace ughost::district
