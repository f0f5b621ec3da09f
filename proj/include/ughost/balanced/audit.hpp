#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ughost/balanced/game.hpp"

namespace ughost::balanced {

// Bookkeeping quantities of the state right before a move, recomputed from
// the bins alone. Nothing here calls into the strategy code.
struct AuditRow {
  int round = 0;
  Player mover = Player::kFirst;
  Move move;
  std::vector<int> S;  // selected bins
  int f = 0;           // non-wasted white balls in S
  int l = 0;           // white-leading bins
  int e = 0;           // empty bins
  int A = 0;           // empty bins in S
  int B = 0;           // empty bins outside S
  int W = 0;           // white balls in white-leading bins
  int w1 = 0;          // most white balls in one selected bin
};

AuditRow audit_row(const State& before, const Move& move);

void write_audit_csv(std::ostream& out, const std::vector<AuditRow>& rows);

// Checks the invariants the strategy guarantees rest on. Each check takes
// the relevant states explicitly, so the monitor can run along a single
// play-out or on every edge of a search. Violations are collected, not
// thrown, and the first few are kept verbatim.
class InvariantMonitor {
 public:
  explicit InvariantMonitor(const Config& config) : config_(config) {}

  // Mirror play: after every P2 move the remaining colors are equal and bin
  // (a, b) holds as many white balls as (-a, b) holds black.
  void after_mirror_reply(const State& s);

  // table1 play, one round transition. `before_p2` is the state before
  // P2's move in round r, `before_p1` the state after it, and `after_p1` the
  // state after P1's reply in round r+1.
  void round_transition(const State& before_p2, const State& before_p1, const State& after_p1);

  // Final state of a table1 game: f = j(m+1) must mean P1 holds j bins.
  void final_state(const State& s);

  bool clean() const { return violations_ == 0; }
  std::uint64_t violations() const { return violations_; }
  const std::vector<std::string>& examples() const { return examples_; }

  std::uint64_t mirror_checks = 0;
  std::uint64_t monotone_checks = 0;
  std::uint64_t strict_checks = 0;
  std::uint64_t early_game_checks = 0;
  std::uint64_t final_checks = 0;

 private:
  void violation(const std::string& what, const State& s);

  Config config_;
  std::uint64_t violations_ = 0;
  std::vector<std::string> examples_;
};

}  // namespace ughost::balanced
