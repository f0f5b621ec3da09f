#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ughost/core/types.hpp"

namespace ughost::balanced {

enum class Color : std::uint8_t { kWhite, kBlack };

inline Color opposite(Color c) { return c == Color::kWhite ? Color::kBlack : Color::kWhite; }
inline const char* color_name(Color c) { return c == Color::kWhite ? "white" : "black"; }

// 2j bins of capacity 2m+1, j(2m+1) balls of each color.
struct Config {
  int j = 1;
  int m = 1;

  int bins() const { return 2 * j; }
  int capacity() const { return 2 * m + 1; }
  int balls_per_color() const { return j * (2 * m + 1); }
  int total_balls() const { return 2 * balls_per_color(); }
  int majority() const { return m + 1; }
  void validate() const;
};

// Bin i < j carries label (+1, i+1); bin i >= j carries (-1, i-j+1). The
// mirror of (a, b) is (-a, b).
struct BinLabel {
  int a;
  int b;
};
BinLabel label_of(const Config& c, int bin);
int mirror_bin(const Config& c, int bin);

struct Bin {
  int white = 0;
  int black = 0;

  int total() const { return white + black; }
  friend bool operator==(const Bin&, const Bin&) = default;
};

struct Move {
  int bin = 0;
  Color color = Color::kWhite;

  friend bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const Move& m);

class BinFull : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ColorExhausted : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct State {
  Config config;
  std::vector<Bin> bins;
  int remaining_white = 0;
  int remaining_black = 0;
  // The move that produced this state, if any.
  std::optional<Move> last_move;

  static State initial(const Config& c);

  int placed() const { return config.total_balls() - remaining_white - remaining_black; }
  Player mover() const { return mover_at(static_cast<std::size_t>(placed())); }
  // Round r holds P1's r-th move and P2's r-th move.
  int round() const { return placed() / 2 + 1; }
  bool over() const { return remaining_white + remaining_black == 0; }
  int remaining(Color c) const { return c == Color::kWhite ? remaining_white : remaining_black; }
  bool can_play(const Move& m) const;

  friend bool operator==(const State&, const State&) = default;
};

// Throws BinFull, ColorExhausted, or std::out_of_range for a bad bin index.
State apply_move(const State& s, const Move& m);

// Removes the ball `m` put in; the result has no last_move.
State undo_move(const State& s, const Move& m);

// White moves by bin index, then black moves by bin index.
std::vector<Move> legal_moves(const State& s);

struct Score {
  int p1_bins = 0;
  int p2_bins = 0;

  bool tie() const { return p1_bins == p2_bins; }
  friend bool operator==(const Score&, const Score&) = default;
};

// P1 wins a bin holding at least m+1 white balls. Requires a finished game.
Score score(const State& s);

}  // namespace ughost::balanced
