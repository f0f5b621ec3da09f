#include "ughost/balanced/game.hpp"

namespace ughost::balanced {

void Config::validate() const {
  if (j < 1 || m < 1) throw std::invalid_argument("j and m must be positive");
}

BinLabel label_of(const Config& c, int bin) {
  if (bin < 0 || bin >= c.bins()) throw std::out_of_range("bin index out of range");
  return bin < c.j ? BinLabel{+1, bin + 1} : BinLabel{-1, bin - c.j + 1};
}

int mirror_bin(const Config& c, int bin) {
  if (bin < 0 || bin >= c.bins()) throw std::out_of_range("bin index out of range");
  return (bin + c.j) % c.bins();
}

std::string to_string(const Move& m) {
  return std::string(color_name(m.color)) + " " + std::to_string(m.bin);
}

State State::initial(const Config& c) {
  c.validate();
  State s;
  s.config = c;
  s.bins.assign(c.bins(), Bin{});
  s.remaining_white = c.balls_per_color();
  s.remaining_black = c.balls_per_color();
  return s;
}

bool State::can_play(const Move& m) const {
  return m.bin >= 0 && m.bin < config.bins() && bins[m.bin].total() < config.capacity() &&
         remaining(m.color) > 0;
}

State apply_move(const State& s, const Move& m) {
  if (m.bin < 0 || m.bin >= s.config.bins()) throw std::out_of_range("bin index out of range");
  if (s.bins[m.bin].total() >= s.config.capacity()) {
    throw BinFull("bin " + std::to_string(m.bin) + " is full");
  }
  if (s.remaining(m.color) == 0) {
    throw ColorExhausted(std::string("no ") + color_name(m.color) + " balls remain");
  }
  State next = s;
  if (m.color == Color::kWhite) {
    ++next.bins[m.bin].white;
    --next.remaining_white;
  } else {
    ++next.bins[m.bin].black;
    --next.remaining_black;
  }
  next.last_move = m;
  return next;
}

State undo_move(const State& s, const Move& m) {
  State prev = s;
  Bin& bin = prev.bins.at(m.bin);
  int& count = m.color == Color::kWhite ? bin.white : bin.black;
  if (count == 0) throw std::logic_error("undo of a ball that is not there");
  --count;
  ++(m.color == Color::kWhite ? prev.remaining_white : prev.remaining_black);
  prev.last_move.reset();
  return prev;
}

std::vector<Move> legal_moves(const State& s) {
  std::vector<Move> out;
  for (Color c : {Color::kWhite, Color::kBlack}) {
    if (s.remaining(c) == 0) continue;
    for (int b = 0; b < s.config.bins(); ++b) {
      if (s.bins[b].total() < s.config.capacity()) out.push_back({b, c});
    }
  }
  return out;
}

Score score(const State& s) {
  if (!s.over()) throw std::logic_error("score requested before the last ball");
  Score out;
  for (const Bin& b : s.bins) {
    if (b.white >= s.config.majority()) ++out.p1_bins;
  }
  out.p2_bins = s.config.bins() - out.p1_bins;
  return out;
}

}  // namespace ughost::balanced
