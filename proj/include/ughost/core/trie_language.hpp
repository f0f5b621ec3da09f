#pragma once

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ughost/core/language.hpp"

namespace ughost {

struct WordEntry {
  std::u32string word;
  Utilities utilities;
};

// Finite language stored as a trie over Unicode code points. A word ends the
// game as soon as it is spelled, so any word extending a shorter word can
// never be reached; such words are dropped at construction and reported in
// warnings().
class TrieLanguage final : public LanguageOracle {
 public:
  explicit TrieLanguage(std::vector<WordEntry> words);

  std::size_t alphabet_size() const override { return alphabet_.size(); }
  bool is_prefix(std::span<const Symbol> prefix) const override;
  std::vector<Symbol> legal_moves(std::span<const Symbol> prefix) const override;
  bool is_terminal(std::span<const Symbol> prefix) const override;
  Utilities utilities(std::span<const Symbol> word) const override;
  std::optional<double> zero_sum_total() const override { return zero_sum_total_; }
  std::string state_key(std::span<const Symbol> prefix) const override;
  SymbolText symbol_text(Symbol s) const override;

  // Symbol for a code point; throws InvalidPrefix if the letter is not in
  // the alphabet.
  Symbol symbol_of(char32_t letter) const;
  char32_t letter_of(Symbol s) const { return alphabet_.at(s.code); }
  Prefix encode(std::u32string_view text) const;
  std::u32string decode(std::span<const Symbol> prefix) const;

  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t word_count() const { return word_count_; }

 private:
  struct Node {
    std::map<std::uint32_t, int> children;  // symbol code -> node index
    std::optional<Utilities> utilities;
  };

  std::optional<int> walk(std::span<const Symbol> prefix) const;
  int walk_or_throw(std::span<const Symbol> prefix) const;

  std::vector<char32_t> alphabet_;  // sorted; index = symbol code
  std::vector<Node> nodes_;
  std::vector<std::string> warnings_;
  std::optional<double> zero_sum_total_;
  std::size_t word_count_ = 0;
};

std::shared_ptr<TrieLanguage> trie_language(std::vector<WordEntry> words);

// Word-list file: one UTF-8 word per line, optionally followed by a tab and
// "u1<TAB>u2" (or "u1 u2"). Words without utilities get (0, 0). Blank lines
// and lines starting with '#' are skipped.
std::vector<WordEntry> read_word_list(std::istream& in);
std::vector<WordEntry> read_word_list_file(const std::string& path);

// Two-language scheme: player 1 wants words of `first` only, player 2 words
// of `second` only, shared words are neutral. Words shorter than
// `min_length` are ignored. u1 = -u2 in {+1, 0, -1}.
std::vector<WordEntry> contested_word_list(const std::vector<std::u32string>& first,
                                           const std::vector<std::u32string>& second,
                                           std::size_t min_length = 3);

std::u32string utf8_to_u32(std::string_view text);
std::string u32_to_utf8(std::u32string_view text);

}  // namespace ughost
