#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ughost/core/types.hpp"

namespace ughost {

// Display form of a symbol: for redistricting "<atom> <district>", for word
// games "<letter> -".
struct SymbolText {
  std::string primary;
  std::string secondary = "-";
};

// A finite language L together with the utilities u1, u2 of its words.
//
// Prefixes handed to an oracle must be legal (a prefix of some word) unless
// the method says otherwise; the oracle throws InvalidPrefix when they are
// not. Words are terminal the moment they are spelled, so a terminal prefix
// never has legal continuations.
class LanguageOracle {
 public:
  virtual ~LanguageOracle() = default;

  // Number of symbol codes; every symbol lies in [0, alphabet_size()).
  virtual std::size_t alphabet_size() const = 0;

  // Never throws; false for strings that start no word.
  virtual bool is_prefix(std::span<const Symbol> prefix) const = 0;

  // Sorted ascending by symbol code.
  virtual std::vector<Symbol> legal_moves(std::span<const Symbol> prefix) const = 0;

  virtual bool is_terminal(std::span<const Symbol> prefix) const = 0;

  // Requires a terminal prefix.
  virtual Utilities utilities(std::span<const Symbol> word) const = 0;

  // Set when u1 + u2 is the same constant on every word.
  virtual std::optional<double> zero_sum_total() const { return std::nullopt; }

  // Memoization key. Two legal prefixes with equal keys must have identical
  // subgame values. The default key is the prefix itself.
  virtual std::string state_key(std::span<const Symbol> prefix) const;

  virtual SymbolText symbol_text(Symbol s) const;

  // Display name for a player seat ("P1", a party name, ...).
  virtual std::string player_name(Player p) const;
};

// Exactly the symbols s such that prefix+s starts a word; empty iff terminal.
std::vector<Symbol> legal_moves(std::span<const Symbol> prefix, const LanguageOracle& lang);

}  // namespace ughost
