#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ughost/core/language.hpp"
#include "ughost/core/solver.hpp"

namespace ughost {

// A player: picks the next symbol for `mover` given the current prefix.
using Strategy = std::function<Symbol(std::span<const Symbol> prefix, Player mover)>;

struct TraceEntry {
  Player mover;
  Symbol symbol;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct PlayResult {
  Prefix word;
  Utilities utilities;
  std::vector<TraceEntry> trace;
};

// Alternates s1 and s2, starting with the mover implied by the prefix length,
// until the word is complete. Throws StrategyIllegalMove naming the offender.
PlayResult play_out(std::span<const Symbol> prefix, const LanguageOracle& lang,
                    const Strategy& s1, const Strategy& s2);

// Plays Solver::best_move. The solver is shared, so its table warms up over
// the course of a game.
Strategy solver_strategy(std::shared_ptr<Solver> solver);

Strategy first_legal_strategy(const LanguageOracle& lang);

// Uniform over legal moves; seeded, reproducible.
Strategy random_strategy(const LanguageOracle& lang, std::uint64_t seed);

// Replays a fixed move list, then defers to `fallback` once it runs out.
Strategy scripted_strategy(std::vector<Symbol> moves, Strategy fallback = {});

}  // namespace ughost
