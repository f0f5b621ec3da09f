#include "ughost/core/language.hpp"

#include <sstream>

namespace ughost {

std::string Payoff::to_string() const {
  if (loss_) return "-inf";
  std::ostringstream out;
  out << value_;
  return out.str();
}

std::string LanguageOracle::state_key(std::span<const Symbol> prefix) const {
  std::string key;
  key.reserve(prefix.size() * sizeof(std::uint32_t));
  for (Symbol s : prefix) {
    for (int shift = 0; shift < 32; shift += 8) {
      key.push_back(static_cast<char>((s.code >> shift) & 0xFF));
    }
  }
  return key;
}

SymbolText LanguageOracle::symbol_text(Symbol s) const {
  return {std::to_string(s.code), "-"};
}

std::string LanguageOracle::player_name(Player p) const {
  return p == Player::kFirst ? "P1" : "P2";
}

std::vector<Symbol> legal_moves(std::span<const Symbol> prefix, const LanguageOracle& lang) {
  if (!lang.is_prefix(prefix)) {
    throw InvalidPrefix("prefix of length " + std::to_string(prefix.size()) +
                        " does not start any word");
  }
  if (lang.is_terminal(prefix)) return {};
  return lang.legal_moves(prefix);
}

}  // namespace ughost
