#include "ughost/core/trie_language.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ughost {

TrieLanguage::TrieLanguage(std::vector<WordEntry> words) {
  std::stable_sort(words.begin(), words.end(), [](const WordEntry& a, const WordEntry& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });

  std::set<char32_t> letters;
  for (const WordEntry& e : words) letters.insert(e.word.begin(), e.word.end());
  alphabet_.assign(letters.begin(), letters.end());

  nodes_.emplace_back();
  for (const WordEntry& entry : words) {
    if (entry.word.empty()) {
      warnings_.push_back("empty word ignored");
      continue;
    }
    int node = 0;
    bool reachable = true;
    for (std::size_t i = 0; i < entry.word.size(); ++i) {
      if (nodes_[node].utilities) {
        warnings_.push_back("word \"" + u32_to_utf8(entry.word) + "\" extends \"" +
                            u32_to_utf8(entry.word.substr(0, i)) +
                            "\" and can never be reached; dropped");
        reachable = false;
        break;
      }
      std::uint32_t code = symbol_of(entry.word[i]).code;
      auto it = nodes_[node].children.find(code);
      if (it == nodes_[node].children.end()) {
        nodes_.emplace_back();
        int child = static_cast<int>(nodes_.size()) - 1;
        nodes_[node].children.emplace(code, child);
        node = child;
      } else {
        node = it->second;
      }
    }
    if (!reachable) continue;
    if (nodes_[node].utilities) {
      if (!(*nodes_[node].utilities == entry.utilities)) {
        throw std::invalid_argument("word \"" + u32_to_utf8(entry.word) +
                                    "\" listed twice with different utilities");
      }
      continue;
    }
    nodes_[node].utilities = entry.utilities;
    ++word_count_;
  }

  if (word_count_ == 0) throw EmptyLanguage("language has no words");

  // Prune letters that only occurred in dropped words.
  std::set<std::uint32_t> used;
  for (const Node& n : nodes_) {
    for (const auto& [code, child] : n.children) used.insert(code);
  }
  if (used.size() != alphabet_.size()) {
    std::vector<char32_t> kept;
    std::vector<std::uint32_t> remap(alphabet_.size(), 0);
    for (std::uint32_t code = 0; code < alphabet_.size(); ++code) {
      if (used.count(code)) {
        remap[code] = static_cast<std::uint32_t>(kept.size());
        kept.push_back(alphabet_[code]);
      }
    }
    for (Node& n : nodes_) {
      std::map<std::uint32_t, int> children;
      for (const auto& [code, child] : n.children) children.emplace(remap[code], child);
      n.children = std::move(children);
    }
    alphabet_ = std::move(kept);
  }

  std::optional<double> total;
  bool constant = true;
  for (const Node& n : nodes_) {
    if (!n.utilities) continue;
    double sum = n.utilities->first + n.utilities->second;
    if (!total) {
      total = sum;
    } else if (*total != sum) {
      constant = false;
    }
  }
  if (constant) zero_sum_total_ = total;
}

Symbol TrieLanguage::symbol_of(char32_t letter) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), letter);
  if (it == alphabet_.end() || *it != letter) {
    throw InvalidPrefix("letter U+" + std::to_string(static_cast<std::uint32_t>(letter)) +
                        " is not in the alphabet");
  }
  return Symbol{static_cast<std::uint32_t>(it - alphabet_.begin())};
}

Prefix TrieLanguage::encode(std::u32string_view text) const {
  Prefix out;
  out.reserve(text.size());
  for (char32_t c : text) out.push_back(symbol_of(c));
  return out;
}

std::u32string TrieLanguage::decode(std::span<const Symbol> prefix) const {
  std::u32string out;
  for (Symbol s : prefix) out.push_back(letter_of(s));
  return out;
}

std::optional<int> TrieLanguage::walk(std::span<const Symbol> prefix) const {
  int node = 0;
  for (Symbol s : prefix) {
    if (nodes_[node].utilities) return std::nullopt;  // game already over
    auto it = nodes_[node].children.find(s.code);
    if (it == nodes_[node].children.end()) return std::nullopt;
    node = it->second;
  }
  return node;
}

int TrieLanguage::walk_or_throw(std::span<const Symbol> prefix) const {
  auto node = walk(prefix);
  if (!node) throw InvalidPrefix("\"" + u32_to_utf8(decode(prefix)) + "\" starts no word");
  return *node;
}

bool TrieLanguage::is_prefix(std::span<const Symbol> prefix) const {
  for (Symbol s : prefix) {
    if (s.code >= alphabet_.size()) return false;
  }
  return walk(prefix).has_value();
}

std::vector<Symbol> TrieLanguage::legal_moves(std::span<const Symbol> prefix) const {
  for (Symbol s : prefix) {
    if (s.code >= alphabet_.size()) throw InvalidPrefix("symbol outside the alphabet");
  }
  const Node& node = nodes_[walk_or_throw(prefix)];
  std::vector<Symbol> out;
  out.reserve(node.children.size());
  for (const auto& [code, child] : node.children) out.push_back(Symbol{code});
  return out;
}

bool TrieLanguage::is_terminal(std::span<const Symbol> prefix) const {
  auto node = is_prefix(prefix) ? walk(prefix) : std::nullopt;
  return node && nodes_[*node].utilities.has_value();
}

Utilities TrieLanguage::utilities(std::span<const Symbol> word) const {
  if (!is_prefix(word)) throw InvalidPrefix("not a word of the language");
  const Node& node = nodes_[*walk(word)];
  if (!node.utilities) throw InvalidPrefix("\"" + u32_to_utf8(decode(word)) + "\" is not complete");
  return *node.utilities;
}

std::string TrieLanguage::state_key(std::span<const Symbol> prefix) const {
  // The trie node fixes both the subtree and the depth (hence the mover).
  return std::to_string(walk_or_throw(prefix));
}

SymbolText TrieLanguage::symbol_text(Symbol s) const {
  if (s.code >= alphabet_.size()) return {"?" + std::to_string(s.code), "-"};
  return {u32_to_utf8(std::u32string(1, alphabet_[s.code])), "-"};
}

std::shared_ptr<TrieLanguage> trie_language(std::vector<WordEntry> words) {
  return std::make_shared<TrieLanguage>(std::move(words));
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::vector<WordEntry> read_word_list(std::istream& in) {
  std::vector<WordEntry> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    WordEntry entry;
    auto tab = line.find('\t');
    entry.word = utf8_to_u32(trim(line.substr(0, tab)));
    if (tab != std::string::npos) {
      std::istringstream rest(line.substr(tab + 1));
      if (!(rest >> entry.utilities.first >> entry.utilities.second)) {
        throw std::invalid_argument("word list line " + std::to_string(line_no) +
                                    ": expected two utilities after the tab");
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<WordEntry> read_word_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list " + path);
  return read_word_list(in);
}

std::vector<WordEntry> contested_word_list(const std::vector<std::u32string>& first,
                                           const std::vector<std::u32string>& second,
                                           std::size_t min_length) {
  std::set<std::u32string> a;
  std::set<std::u32string> b;
  for (const auto& w : first) {
    if (w.size() >= min_length) a.insert(w);
  }
  for (const auto& w : second) {
    if (w.size() >= min_length) b.insert(w);
  }
  std::vector<WordEntry> out;
  for (const auto& w : a) {
    double u = b.count(w) ? 0.0 : 1.0;
    out.push_back({w, {u, -u}});
  }
  for (const auto& w : b) {
    if (!a.count(w)) out.push_back({w, {-1.0, 1.0}});
  }
  return out;
}

std::u32string utf8_to_u32(std::string_view text) {
  std::u32string out;
  for (std::size_t i = 0; i < text.size();) {
    auto byte = static_cast<unsigned char>(text[i]);
    int extra;
    char32_t cp;
    if (byte < 0x80) {
      cp = byte;
      extra = 0;
    } else if ((byte & 0xE0) == 0xC0) {
      cp = byte & 0x1F;
      extra = 1;
    } else if ((byte & 0xF0) == 0xE0) {
      cp = byte & 0x0F;
      extra = 2;
    } else if ((byte & 0xF8) == 0xF0) {
      cp = byte & 0x07;
      extra = 3;
    } else {
      throw std::invalid_argument("malformed UTF-8");
    }
    if (i + extra >= text.size()) {
      throw std::invalid_argument("truncated UTF-8 sequence");
    }
    for (int k = 1; k <= extra; ++k) {
      auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) throw std::invalid_argument("malformed UTF-8");
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string u32_to_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

}  // namespace ughost
