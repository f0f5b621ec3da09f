#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ughost {

// A token of the game alphabet. The numeric code doubles as the language's
// declared symbol ordering, which is what the solver's final tie-break uses.
struct Symbol {
  std::uint32_t code = 0;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Prefix = std::vector<Symbol>;

enum class Player : std::uint8_t { kFirst = 1, kSecond = 2 };

inline Player mover_at(std::size_t ply) {
  return ply % 2 == 0 ? Player::kFirst : Player::kSecond;
}

inline Player opponent(Player p) {
  return p == Player::kFirst ? Player::kSecond : Player::kFirst;
}

inline int player_index(Player p) { return p == Player::kFirst ? 0 : 1; }

// Utility value with an explicit sentinel for the -infinity a player receives
// for spelling a string that starts no word. The sentinel never takes part in
// arithmetic; it only orders below every finite value.
class Payoff {
 public:
  constexpr Payoff() = default;
  constexpr Payoff(double value) : value_(value) {}  // NOLINT: implicit by intent

  static constexpr Payoff loss() {
    Payoff p;
    p.loss_ = true;
    return p;
  }

  constexpr bool is_loss() const { return loss_; }

  double value() const {
    if (loss_) throw std::logic_error("Payoff::value() called on the loss sentinel");
    return value_;
  }

  friend constexpr bool operator==(const Payoff& a, const Payoff& b) {
    return a.loss_ == b.loss_ && (a.loss_ || a.value_ == b.value_);
  }

  friend constexpr std::partial_ordering operator<=>(const Payoff& a, const Payoff& b) {
    if (a.loss_ || b.loss_) {
      if (a.loss_ && b.loss_) return std::partial_ordering::equivalent;
      return a.loss_ ? std::partial_ordering::less : std::partial_ordering::greater;
    }
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  double value_ = 0.0;
  bool loss_ = false;
};

struct Utilities {
  double first = 0.0;
  double second = 0.0;

  double of(Player p) const { return p == Player::kFirst ? first : second; }

  friend bool operator==(const Utilities&, const Utilities&) = default;
};

struct GameValue {
  Payoff u1;
  Payoff u2;
  std::optional<Symbol> principal_move;

  Payoff of(Player p) const { return p == Player::kFirst ? u1 : u2; }

  friend bool operator==(const GameValue&, const GameValue&) = default;
};

class InvalidPrefix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyLanguage : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StrategyIllegalMove : public std::runtime_error {
 public:
  StrategyIllegalMove(Player player, Symbol symbol, const std::string& what)
      : std::runtime_error(what), player_(player), symbol_(symbol) {}

  Player player() const { return player_; }
  Symbol symbol() const { return symbol_; }

 private:
  Player player_;
  Symbol symbol_;
};

}  // namespace ughost
