#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ughost/balanced/audit.hpp"
#include "ughost/balanced/strategies.hpp"

namespace ughost::balanced {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double estimate, std::size_t budget);
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

inline constexpr std::size_t kDefaultBudget = 20'000'000;

// Upper bound on memoized states when bins are exchangeable: multisets of
// 2j bin contents.
double canonical_state_estimate(const Config& c);
// Same for ordered bins.
double ordered_state_estimate(const Config& c);

// Minimax over both players. States are memoized as sorted multisets of bin
// contents, since bins are exchangeable once labels play no role.
class MinimaxSolver {
 public:
  explicit MinimaxSolver(const Config& c, std::size_t budget = kDefaultBudget);

  // P1's bins under optimal play from `s`.
  int value(const State& s);
  // Best move for the mover: lowest bin index, white first, among optimal moves.
  Move best_move(const State& s);
  std::size_t states() const { return memo_.size(); }

 private:
  int search(State& s);

  Config config_;
  std::size_t budget_;
  std::unordered_map<std::string, std::int8_t> memo_;
};

// One player follows `fixed`, the other searches. The fixed strategy may
// look at the bin labels and the last move, so states are memoized with
// ordered bins, and only where the free player is to move (the state and the
// free player's choice then determine the fixed reply).
class BestResponse {
 public:
  BestResponse(const Config& c, BalancedStrategy fixed, Player fixed_player,
               std::size_t budget = kDefaultBudget, InvariantMonitor* monitor = nullptr);

  // Bins the free player ends with under its best play from `s`.
  int value(const State& s);
  // Free player's best move; lowest bin index, white first, among optimal.
  Move best_move(const State& s);
  std::size_t states() const { return memo_.size(); }

 private:
  int search(const State& s);
  int free_bins(const State& s) const;

  Config config_;
  BalancedStrategy fixed_;
  Player fixed_player_;
  std::size_t budget_;
  InvariantMonitor* monitor_;
  std::unordered_map<std::string, std::int8_t> memo_;
};

// P1's bins under optimal play by both sides.
int exact_solve(const Config& c, std::size_t budget = kDefaultBudget);

// Best the free player can do against `fixed`, counted in the free player's bins.
int best_response_value(const Config& c, const BalancedStrategy& fixed, Player fixed_player,
                        std::size_t budget = kDefaultBudget, InvariantMonitor* monitor = nullptr);

struct MatchResult {
  State final_state;
  Score score;
  std::vector<Move> moves;
  std::vector<AuditRow> audit;
};

class IllegalStrategyMove : public std::runtime_error {
 public:
  IllegalStrategyMove(Player player, const Move& move, const std::string& why);
  Player player() const { return player_; }

 private:
  Player player_;
};

enum class Checks { kNone, kMirror, kTable1 };

// Plays a full game. With a monitor, runs the invariant checks matching
// `checks` on every round.
MatchResult play_match(const Config& c, const BalancedStrategy& p1, const BalancedStrategy& p2,
                       InvariantMonitor* monitor = nullptr, Checks checks = Checks::kNone);

}  // namespace ughost::balanced
