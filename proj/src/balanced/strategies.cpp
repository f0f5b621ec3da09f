#include "ughost/balanced/strategies.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "ughost/core/random.hpp"

namespace ughost::balanced {

Move mirror_strategy(const State& s, const Move& p1_last_move) {
  Move reply{mirror_bin(s.config, p1_last_move.bin), opposite(p1_last_move.color)};
  if (!s.can_play(reply)) throw std::logic_error("mirror reply " + to_string(reply) + " is illegal");
  return reply;
}

bool leads_white(const Bin& b) { return b.white > b.black; }

std::vector<int> select_S(const State& s) {
  const int k = s.config.bins();
  std::vector<int> leading;
  std::vector<int> rest;
  for (int b = 0; b < k; ++b) (leads_white(s.bins[b]) ? leading : rest).push_back(b);
  std::stable_sort(leading.begin(), leading.end(),
                   [&](int x, int y) { return s.bins[x].white > s.bins[y].white; });
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int x, int y) { return s.bins[x].total() < s.bins[y].total(); });
  std::vector<int> out;
  for (int b : leading) {
    if (static_cast<int>(out.size()) == s.config.j) break;
    out.push_back(b);
  }
  for (int b : rest) {
    if (static_cast<int>(out.size()) == s.config.j) break;
    out.push_back(b);
  }
  return out;
}

int non_wasted_white(const State& s) {
  int f = 0;
  for (int b : select_S(s)) f += std::min(s.bins[b].white, s.config.majority());
  return f;
}

namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::optional<int> default_bin(const State& s, const std::vector<int>& S) {
  std::optional<int> best;
  for (int b : S) {
    if (s.bins[b].white >= s.config.majority()) continue;
    if (!best || s.bins[b].total() > s.bins[*best].total() ||
        (s.bins[b].total() == s.bins[*best].total() && b < *best)) {
      best = b;
    }
  }
  return best;
}

std::optional<int> lowest_empty(const State& s, const std::vector<int>& S) {
  std::optional<int> best;
  for (int b : S) {
    if (s.bins[b].total() == 0 && (!best || b < *best)) best = b;
  }
  return best;
}

Move checked_white(const State& s, int bin, const char* branch) {
  Move m{bin, Color::kWhite};
  if (!s.can_play(m)) {
    throw std::logic_error(std::string("table1 (") + branch + ") chose illegal move " + to_string(m));
  }
  return m;
}

}  // namespace

Move table1_strategy(const State& s, const std::optional<Move>& p2_last_move) {
  const std::vector<int> S = select_S(s);
  const std::optional<int> def = default_bin(s, S);
  if (!def || s.remaining_white == 0) return fallback_move(s);

  if (s.round() == 1 || !p2_last_move || p2_last_move->color == Color::kWhite) {
    return checked_white(s, *def, "default");
  }
  const int b = p2_last_move->bin;
  const std::vector<int> previous_S = select_S(undo_move(s, *p2_last_move));
  const std::optional<int> empty = lowest_empty(s, S);
  if (s.bins[b].total() == 1 && empty) return checked_white(s, *empty, "empty bin");
  if (contains(previous_S, b) && s.bins[b].white < s.config.majority()) {
    return checked_white(s, b, "answer in b");
  }
  return checked_white(s, *def, "default");
}

Move fallback_move(const State& s) {
  auto moves = legal_moves(s);
  if (moves.empty()) throw std::logic_error("no legal move in a finished game");
  return moves.front();
}

BalancedStrategy mirror_player() {
  return [](const State& s) {
    if (!s.last_move) throw std::logic_error("mirror strategy needs P1's last move");
    return mirror_strategy(s, *s.last_move);
  };
}

BalancedStrategy table1_player() {
  return [](const State& s) { return table1_strategy(s, s.last_move); };
}

BalancedStrategy first_legal_player() {
  return [](const State& s) { return fallback_move(s); };
}

BalancedStrategy random_player(std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](const State& s) {
    auto moves = legal_moves(s);
    if (moves.empty()) throw std::logic_error("no legal move in a finished game");
    return moves[static_cast<std::size_t>(rng->below(moves.size()))];
  };
}

}  // namespace ughost::balanced
