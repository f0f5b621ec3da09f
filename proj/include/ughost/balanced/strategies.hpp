#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ughost/balanced/game.hpp"

namespace ughost::balanced {

// A player of the balls-and-bins game. The state carries the opponent's
// last move, which is all the history the strategies below consult.
using BalancedStrategy = std::function<Move(const State&)>;

// P2: answer P1's ball with the opposite color in the mirrored bin.
Move mirror_strategy(const State& s, const Move& p1_last_move);

// A bin currently leads for white when it holds more white than black.
bool leads_white(const Bin& b);

// The j selected bins: up to j white-leading bins with the most white balls,
// padded with the bins holding the fewest balls. Ties go to the lower index.
// Returned in selection order.
std::vector<int> select_S(const State& s);

// Sum over select_S of min(white, m+1).
int non_wasted_white(const State& s);

// table1 strategy for P1. "Any" bin resolves to the lowest index; the
// default move is white into the fullest selected bin short of m+1 whites.
// Outside the table's precondition it plays fallback_move.
Move table1_strategy(const State& s, const std::optional<Move>& p2_last_move);

// Lowest-index legal move, white before black.
Move fallback_move(const State& s);

BalancedStrategy mirror_player();
BalancedStrategy table1_player();
BalancedStrategy first_legal_player();
// Uniform over legal moves. The returned player owns its generator, so a
// copy continues the same stream.
BalancedStrategy random_player(std::uint64_t seed);

}  // namespace ughost::balanced
