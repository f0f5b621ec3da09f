#include "ughost/core/play.hpp"

#include <algorithm>
#include <stdexcept>

#include "ughost/core/random.hpp"

namespace ughost {

PlayResult play_out(std::span<const Symbol> prefix, const LanguageOracle& lang,
                    const Strategy& s1, const Strategy& s2) {
  PlayResult result;
  result.word.assign(prefix.begin(), prefix.end());
  std::vector<Symbol> moves = legal_moves(result.word, lang);
  while (!moves.empty()) {
    const Player mover = mover_at(result.word.size());
    const Strategy& strategy = mover == Player::kFirst ? s1 : s2;
    Symbol s = strategy(result.word, mover);
    if (!std::binary_search(moves.begin(), moves.end(), s)) {
      SymbolText text = lang.symbol_text(s);
      throw StrategyIllegalMove(mover, s,
                                lang.player_name(mover) + " played illegal move " +
                                    text.primary + " " + text.secondary);
    }
    result.trace.push_back({mover, s});
    result.word.push_back(s);
    moves = legal_moves(result.word, lang);
  }
  result.utilities = lang.utilities(result.word);
  return result;
}

Strategy solver_strategy(std::shared_ptr<Solver> solver) {
  return [solver = std::move(solver)](std::span<const Symbol> prefix, Player) {
    return solver->best_move(prefix);
  };
}

Strategy first_legal_strategy(const LanguageOracle& lang) {
  return [&lang](std::span<const Symbol> prefix, Player) {
    std::vector<Symbol> moves = legal_moves(prefix, lang);
    if (moves.empty()) throw std::logic_error("no legal move at a terminal prefix");
    return moves.front();
  };
}

Strategy random_strategy(const LanguageOracle& lang, std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [&lang, rng](std::span<const Symbol> prefix, Player) {
    std::vector<Symbol> moves = legal_moves(prefix, lang);
    if (moves.empty()) throw std::logic_error("no legal move at a terminal prefix");
    return moves[rng->below(moves.size())];
  };
}

Strategy scripted_strategy(std::vector<Symbol> moves, Strategy fallback) {
  auto cursor = std::make_shared<std::size_t>(0);
  return [moves = std::move(moves), fallback = std::move(fallback), cursor](
             std::span<const Symbol> prefix, Player mover) {
    if (*cursor < moves.size()) return moves[(*cursor)++];
    if (!fallback) throw std::logic_error("scripted strategy ran out of moves");
    return fallback(prefix, mover);
  };
}

}  // namespace ughost
