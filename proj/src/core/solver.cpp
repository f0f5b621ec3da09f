#include "ughost/core/solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ughost {
namespace {

constexpr double kLowest = -std::numeric_limits<double>::max();
constexpr double kHighest = std::numeric_limits<double>::max();

// Mover's preference: own utility up, then opponent utility down.
bool prefers(const Utilities& candidate, const Utilities& incumbent, Player mover) {
  const Player other = opponent(mover);
  if (candidate.of(mover) != incumbent.of(mover)) {
    return candidate.of(mover) > incumbent.of(mover);
  }
  return candidate.of(other) < incumbent.of(other);
}

}  // namespace

Solver::Solver(const LanguageOracle& lang, SolverOptions options)
    : lang_(lang), options_(options) {
  if (options_.alpha_beta) {
    auto total = lang_.zero_sum_total();
    if (!total) {
      throw std::invalid_argument("alpha-beta pruning requires a zero-sum language");
    }
    zero_sum_total_ = *total;
  }
}

void Solver::clear() {
  table_.clear();
  bound_table_.clear();
  stats_ = {};
}

void Solver::check_prefix(std::span<const Symbol> prefix) const {
  if (!lang_.is_prefix(prefix)) {
    throw InvalidPrefix("prefix of length " + std::to_string(prefix.size()) +
                        " does not start any word");
  }
}

GameValue Solver::solve(std::span<const Symbol> prefix) {
  check_prefix(prefix);
  Prefix path(prefix.begin(), prefix.end());
  GameValue result = options_.alpha_beta ? solve_alpha_beta(path) : solve_general(path);
  stats_.table_size = table_.size() + bound_table_.size();
  return result;
}

Symbol Solver::best_move(std::span<const Symbol> prefix) {
  GameValue v = solve(prefix);
  if (!v.principal_move) throw std::logic_error("best_move called on a terminal prefix");
  return *v.principal_move;
}

std::vector<Symbol> Solver::principal_variation(std::span<const Symbol> prefix) {
  Prefix path(prefix.begin(), prefix.end());
  std::vector<Symbol> line;
  while (true) {
    GameValue v = solve(path);
    if (!v.principal_move) break;
    line.push_back(*v.principal_move);
    path.push_back(*v.principal_move);
  }
  return line;
}

Utilities Solver::value(Prefix& path) {
  ++stats_.nodes;
  if (lang_.is_terminal(path)) return lang_.utilities(path);

  std::string key;
  if (options_.memoize) {
    key = lang_.state_key(path);
    if (auto it = table_.find(key); it != table_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
  }

  const Player mover = mover_at(path.size());
  std::optional<Utilities> best;
  for (Symbol s : lang_.legal_moves(path)) {
    path.push_back(s);
    Utilities child = value(path);
    path.pop_back();
    if (!best || prefers(child, *best, mover)) best = child;
  }
  if (!best) throw std::logic_error("non-terminal prefix without legal moves");

  if (options_.memoize) table_.emplace(std::move(key), *best);
  return *best;
}

GameValue Solver::solve_general(Prefix& path) {
  if (lang_.is_terminal(path)) {
    Utilities u = lang_.utilities(path);
    return {u.first, u.second, std::nullopt};
  }
  const Player mover = mover_at(path.size());
  std::optional<Utilities> best;
  Symbol best_symbol;
  // legal_moves is ascending, so keeping the first strict improvement
  // realizes the smallest-symbol tie-break.
  for (Symbol s : lang_.legal_moves(path)) {
    path.push_back(s);
    Utilities child = value(path);
    path.pop_back();
    if (!best || prefers(child, *best, mover)) {
      best = child;
      best_symbol = s;
    }
  }
  if (!best) throw std::logic_error("non-terminal prefix without legal moves");
  return {best->first, best->second, best_symbol};
}

double Solver::bounded_value(Prefix& path, double alpha, double beta) {
  ++stats_.nodes;
  if (lang_.is_terminal(path)) return lang_.utilities(path).first;

  std::string key;
  if (options_.memoize) {
    key = lang_.state_key(path);
    if (auto it = bound_table_.find(key); it != bound_table_.end()) {
      const BoundEntry& e = it->second;
      if (e.bound == Bound::kExact) {
        ++stats_.memo_hits;
        return e.value;
      }
      if (e.bound == Bound::kLower) alpha = std::max(alpha, e.value);
      if (e.bound == Bound::kUpper) beta = std::min(beta, e.value);
      if (alpha >= beta) {
        ++stats_.memo_hits;
        return e.value;
      }
    }
  }

  const double window_low = alpha;
  const double window_high = beta;
  const bool maximizing = mover_at(path.size()) == Player::kFirst;
  double best = maximizing ? kLowest : kHighest;
  for (Symbol s : lang_.legal_moves(path)) {
    path.push_back(s);
    double v = bounded_value(path, alpha, beta);
    path.pop_back();
    if (maximizing) {
      best = std::max(best, v);
      alpha = std::max(alpha, v);
    } else {
      best = std::min(best, v);
      beta = std::min(beta, v);
    }
    if (alpha >= beta) break;
  }

  if (options_.memoize) {
    Bound bound = Bound::kExact;
    if (best <= window_low) {
      bound = Bound::kUpper;
    } else if (best >= window_high) {
      bound = Bound::kLower;
    }
    bound_table_[key] = {best, bound};
  }
  return best;
}

GameValue Solver::solve_alpha_beta(Prefix& path) {
  if (lang_.is_terminal(path)) {
    Utilities u = lang_.utilities(path);
    return {u.first, u.second, std::nullopt};
  }
  const bool maximizing = mover_at(path.size()) == Player::kFirst;
  std::optional<double> best;
  Symbol best_symbol;
  for (Symbol s : lang_.legal_moves(path)) {
    path.push_back(s);
    double v;
    if (!best) {
      v = bounded_value(path, kLowest, kHighest);
    } else if (maximizing) {
      v = bounded_value(path, *best, kHighest);
    } else {
      v = bounded_value(path, kLowest, *best);
    }
    path.pop_back();
    if (!best || (maximizing ? v > *best : v < *best)) {
      best = v;
      best_symbol = s;
    }
  }
  if (!best) throw std::logic_error("non-terminal prefix without legal moves");
  return {*best, zero_sum_total_ - *best, best_symbol};
}

GameValue solve(std::span<const Symbol> prefix, const LanguageOracle& lang,
                SolverOptions options) {
  Solver solver(lang, options);
  return solver.solve(prefix);
}

Symbol best_move(std::span<const Symbol> prefix, const LanguageOracle& lang,
                 SolverOptions options) {
  Solver solver(lang, options);
  return solver.best_move(prefix);
}

}  // namespace ughost
