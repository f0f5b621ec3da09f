#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ughost/core/language.hpp"

namespace ughost {

struct SolverOptions {
  bool memoize = true;
  // Only valid on languages that declare a zero-sum total.
  bool alpha_beta = false;
};

struct SolverStats {
  std::size_t nodes = 0;
  std::size_t memo_hits = 0;
  std::size_t table_size = 0;
};

// Exact backward-induction solver.
//
// At every node the mover maximizes its own utility, then minimizes the
// opponent's, then takes the smallest symbol code. Values are memoized on
// LanguageOracle::state_key; the principal move is always recomputed from the
// children of the queried node so that it never depends on what a symmetric
// state happened to store.
//
// A Solver keeps its transposition table across calls. It is not thread-safe.
class Solver {
 public:
  explicit Solver(const LanguageOracle& lang, SolverOptions options = {});

  GameValue solve(std::span<const Symbol> prefix);

  // Principal move of solve(prefix); throws std::logic_error on terminal prefixes.
  Symbol best_move(std::span<const Symbol> prefix);

  // Sequence of principal moves from `prefix` to a terminal word.
  std::vector<Symbol> principal_variation(std::span<const Symbol> prefix);

  const SolverStats& stats() const { return stats_; }
  const LanguageOracle& language() const { return lang_; }
  void clear();

 private:
  enum class Bound : std::uint8_t { kExact, kLower, kUpper };
  struct BoundEntry {
    double value;
    Bound bound;
  };

  void check_prefix(std::span<const Symbol> prefix) const;
  Utilities value(Prefix& path);
  double bounded_value(Prefix& path, double alpha, double beta);
  GameValue solve_general(Prefix& path);
  GameValue solve_alpha_beta(Prefix& path);

  const LanguageOracle& lang_;
  SolverOptions options_;
  double zero_sum_total_ = 0.0;
  std::unordered_map<std::string, Utilities> table_;
  std::unordered_map<std::string, BoundEntry> bound_table_;
  SolverStats stats_;
};

GameValue solve(std::span<const Symbol> prefix, const LanguageOracle& lang,
                SolverOptions options = {});

Symbol best_move(std::span<const Symbol> prefix, const LanguageOracle& lang,
                 SolverOptions options = {});

}  // namespace ughost
