#include "ughost/balanced/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ughost::balanced {

BudgetExceeded::BudgetExceeded(double estimate, std::size_t budget)
    : std::runtime_error([&] {
        std::ostringstream out;
        out << "search needs about " << estimate << " states; budget is " << budget;
        return out.str();
      }()),
      estimate_(estimate) {}

namespace {

double per_bin_contents(const Config& c) {
  const double cap = c.capacity();
  return (cap + 1) * (cap + 2) / 2;
}

std::string ordered_key(const State& s) {
  std::string key;
  key.reserve(s.bins.size() * 2);
  for (const Bin& b : s.bins) {
    key.push_back(static_cast<char>(b.white));
    key.push_back(static_cast<char>(b.black));
  }
  return key;
}

std::string canonical_key(const State& s) {
  std::vector<std::pair<int, int>> bins;
  for (const Bin& b : s.bins) bins.emplace_back(b.white, b.black);
  std::sort(bins.begin(), bins.end());
  std::string key;
  key.reserve(bins.size() * 2);
  for (auto [w, b] : bins) {
    key.push_back(static_cast<char>(w));
    key.push_back(static_cast<char>(b));
  }
  return key;
}

void check_config(const Config& c) {
  c.validate();
  if (c.capacity() > 127) throw std::invalid_argument("capacity too large for the search key");
}

}  // namespace

double canonical_state_estimate(const Config& c) {
  // C(P + k - 1, k) multisets of k bins over P possible contents.
  const double p = per_bin_contents(c);
  const int k = c.bins();
  double out = 1;
  for (int i = 0; i < k; ++i) out = out * (p + i) / (i + 1);
  return out;
}

double ordered_state_estimate(const Config& c) {
  return std::pow(per_bin_contents(c), c.bins());
}

MinimaxSolver::MinimaxSolver(const Config& c, std::size_t budget) : config_(c), budget_(budget) {
  check_config(c);
  const double estimate = canonical_state_estimate(c);
  if (estimate > static_cast<double>(budget_)) throw BudgetExceeded(estimate, budget_);
}

int MinimaxSolver::search(State& s) {
  if (s.over()) return score(s).p1_bins;
  std::string key = canonical_key(s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (memo_.size() >= budget_) throw BudgetExceeded(canonical_state_estimate(config_), budget_);

  const bool maximize = s.mover() == Player::kFirst;
  int best = maximize ? -1 : config_.bins() + 1;
  for (Color color : {Color::kWhite, Color::kBlack}) {
    if (s.remaining(color) == 0) continue;
    int& remaining = color == Color::kWhite ? s.remaining_white : s.remaining_black;
    for (int b = 0; b < config_.bins(); ++b) {
      Bin& bin = s.bins[b];
      if (bin.total() >= config_.capacity()) continue;
      // Bins with equal contents lead to the same canonical child.
      bool seen = false;
      for (int a = 0; a < b && !seen; ++a) seen = s.bins[a] == bin;
      if (seen) continue;
      int& count = color == Color::kWhite ? bin.white : bin.black;
      ++count;
      --remaining;
      const int v = search(s);
      --count;
      ++remaining;
      best = maximize ? std::max(best, v) : std::min(best, v);
    }
  }
  memo_.emplace(std::move(key), static_cast<std::int8_t>(best));
  return best;
}

int MinimaxSolver::value(const State& s) {
  State work = s;
  return search(work);
}

Move MinimaxSolver::best_move(const State& s) {
  auto moves = legal_moves(s);
  if (moves.empty()) throw std::logic_error("no move in a finished game");
  const bool maximize = s.mover() == Player::kFirst;
  std::optional<Move> best;
  int best_value = 0;
  for (const Move& m : moves) {
    const int v = value(apply_move(s, m));
    if (!best || (maximize ? v > best_value : v < best_value)) {
      best = m;
      best_value = v;
    }
  }
  return *best;
}

BestResponse::BestResponse(const Config& c, BalancedStrategy fixed, Player fixed_player,
                           std::size_t budget, InvariantMonitor* monitor)
    : config_(c),
      fixed_(std::move(fixed)),
      fixed_player_(fixed_player),
      budget_(budget),
      monitor_(monitor) {
  check_config(c);
  const double estimate = ordered_state_estimate(c);
  if (estimate > static_cast<double>(budget_)) throw BudgetExceeded(estimate, budget_);
}

int BestResponse::free_bins(const State& s) const {
  Score sc = score(s);
  return fixed_player_ == Player::kFirst ? sc.p2_bins : sc.p1_bins;
}

int BestResponse::search(const State& s) {
  if (s.over()) return free_bins(s);
  if (s.mover() == fixed_player_) {
    const Move m = fixed_(s);
    if (!s.can_play(m)) throw IllegalStrategyMove(fixed_player_, m, "fixed strategy played an illegal move");
    return search(apply_move(s, m));
  }

  std::string key = ordered_key(s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (memo_.size() >= budget_) throw BudgetExceeded(ordered_state_estimate(config_), budget_);

  int best = -1;
  for (const Move& m : legal_moves(s)) {
    State next = apply_move(s, m);
    if (!next.over()) {
      const Move reply = fixed_(next);
      if (!next.can_play(reply)) {
        throw IllegalStrategyMove(fixed_player_, reply, "fixed strategy played an illegal move");
      }
      State after = apply_move(next, reply);
      if (monitor_) {
        if (fixed_player_ == Player::kSecond) {
          monitor_->after_mirror_reply(after);
        } else {
          monitor_->round_transition(s, next, after);
        }
      }
      best = std::max(best, search(after));
    } else {
      if (monitor_ && fixed_player_ == Player::kFirst) monitor_->final_state(next);
      best = std::max(best, free_bins(next));
    }
  }
  memo_.emplace(std::move(key), static_cast<std::int8_t>(best));
  return best;
}

int BestResponse::value(const State& s) { return search(s); }

Move BestResponse::best_move(const State& s) {
  if (s.mover() == fixed_player_) throw std::logic_error("best_move asked at a fixed-player node");
  auto moves = legal_moves(s);
  if (moves.empty()) throw std::logic_error("no move in a finished game");
  std::optional<Move> best;
  int best_value = -1;
  for (const Move& m : moves) {
    const int v = search(apply_move(s, m));
    if (v > best_value) {
      best = m;
      best_value = v;
    }
  }
  return *best;
}

int exact_solve(const Config& c, std::size_t budget) {
  MinimaxSolver solver(c, budget);
  return solver.value(State::initial(c));
}

int best_response_value(const Config& c, const BalancedStrategy& fixed, Player fixed_player,
                        std::size_t budget, InvariantMonitor* monitor) {
  BestResponse search(c, fixed, fixed_player, budget, monitor);
  State start = State::initial(c);
  // With P1 fixed, the first move happens before any free node.
  return search.value(start);
}

IllegalStrategyMove::IllegalStrategyMove(Player player, const Move& move, const std::string& why)
    : std::runtime_error((player == Player::kFirst ? "P1: " : "P2: ") + why + " (" +
                         to_string(move) + ")"),
      player_(player) {}

MatchResult play_match(const Config& c, const BalancedStrategy& p1, const BalancedStrategy& p2,
                       InvariantMonitor* monitor, Checks checks) {
  MatchResult out;
  State s = State::initial(c);
  // States before P2's move of the previous round and before P1's move.
  std::optional<State> before_p2;
  std::optional<State> before_p1;
  while (!s.over()) {
    const Player mover = s.mover();
    const Move m = mover == Player::kFirst ? p1(s) : p2(s);
    if (!s.can_play(m)) throw IllegalStrategyMove(mover, m, "strategy played an illegal move");
    out.audit.push_back(audit_row(s, m));
    out.moves.push_back(m);
    if (mover == Player::kFirst) {
      before_p1 = s;
    } else {
      before_p2 = s;
    }
    s = apply_move(s, m);
    if (!monitor) continue;
    if (mover == Player::kSecond && checks == Checks::kMirror) monitor->after_mirror_reply(s);
    if (mover == Player::kFirst && checks == Checks::kTable1 && before_p2) {
      monitor->round_transition(*before_p2, *before_p1, s);
    }
  }
  if (monitor && checks == Checks::kTable1) monitor->final_state(s);
  out.final_state = s;
  out.score = score(s);
  return out;
}

}  // namespace ughost::balanced
