#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "ughost/core/play.hpp"
#include "ughost/core/random.hpp"
#include "ughost/core/solver.hpp"
#include "ughost/core/trie_language.hpp"

using namespace ughost;

namespace {

std::vector<WordEntry> words(std::initializer_list<std::pair<const char*, Utilities>> list) {
  std::vector<WordEntry> out;
  for (auto& [w, u] : list) out.push_back({utf8_to_u32(w), u});
  return out;
}

// Straight minimax over a word list, with no trie, no memo and no key: the
// reachable words are those with no proper prefix in the list.
struct Oracle {
  std::vector<std::pair<std::u32string, Utilities>> reachable;

  explicit Oracle(const std::vector<WordEntry>& list) {
    for (const auto& e : list) {
      if (e.word.empty()) continue;
      bool blocked = false;
      for (const auto& f : list) {
        if (!f.word.empty() && f.word.size() < e.word.size() &&
            e.word.compare(0, f.word.size(), f.word) == 0) {
          blocked = true;
        }
      }
      if (!blocked) reachable.emplace_back(e.word, e.utilities);
    }
  }

  // (u1, u2, best letter) with the same tie-break: own max, opponent min,
  // smallest letter.
  std::tuple<double, double, char32_t> value(const std::u32string& prefix) const {
    for (const auto& [w, u] : reachable) {
      if (w == prefix) return {u.first, u.second, 0};
    }
    std::vector<char32_t> next;
    for (const auto& [w, u] : reachable) {
      if (w.size() > prefix.size() && w.compare(0, prefix.size(), prefix) == 0) {
        next.push_back(w[prefix.size()]);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    const bool first = prefix.size() % 2 == 0;
    std::tuple<double, double, char32_t> best{0, 0, 0};
    bool have = false;
    for (char32_t c : next) {
      auto [a, b, unused] = value(prefix + c);
      (void)unused;
      double own = first ? a : b;
      double opp = first ? b : a;
      double best_own = first ? std::get<0>(best) : std::get<1>(best);
      double best_opp = first ? std::get<1>(best) : std::get<0>(best);
      if (!have || own > best_own || (own == best_own && opp < best_opp)) {
        best = {a, b, c};
        have = true;
      }
    }
    return best;
  }
};

std::vector<WordEntry> random_words(Rng& rng, int count, int max_len, int letters, bool zero_sum) {
  std::vector<WordEntry> out;
  std::map<std::u32string, bool> seen;
  while (static_cast<int>(out.size()) < count) {
    int len = 1 + static_cast<int>(rng.below(max_len));
    std::u32string w;
    for (int i = 0; i < len; ++i) w.push_back(U'a' + static_cast<char32_t>(rng.below(letters)));
    if (seen[w]) continue;
    seen[w] = true;
    double u1 = static_cast<double>(rng.below(5)) - 2.0;
    double u2 = zero_sum ? 3.0 - u1 : static_cast<double>(rng.below(5)) - 2.0;
    out.push_back({w, {u1, u2}});
  }
  return out;
}

Prefix enc(const TrieLanguage& lang, const char* text) { return lang.encode(utf8_to_u32(text)); }

}  // namespace

TEST_CASE("legal moves on a two-word language") {
  auto lang = trie_language(words({{"ab", {1, 0}}, {"ac", {0, 1}}}));
  auto at_a = legal_moves(enc(*lang, "a"), *lang);
  REQUIRE(at_a.size() == 2);
  CHECK(lang->letter_of(at_a[0]) == U'b');
  CHECK(lang->letter_of(at_a[1]) == U'c');

  auto root = legal_moves(Prefix{}, *lang);
  REQUIRE(root.size() == 1);
  CHECK(lang->letter_of(root[0]) == U'a');

  CHECK(legal_moves(enc(*lang, "ab"), *lang).empty());
  CHECK_THROWS_AS(legal_moves(Prefix{lang->symbol_of(U'b')}, *lang), InvalidPrefix);
}

TEST_CASE("words extending a shorter word are pruned with a warning") {
  auto lang = trie_language(words({{"ab", {0, 0}}, {"abc", {1, 1}}}));
  CHECK(lang->word_count() == 1);
  REQUIRE(lang->warnings().size() == 1);
  CHECK(lang->warnings()[0].find("abc") != std::string::npos);
  CHECK(lang->is_terminal(enc(*lang, "ab")));
  CHECK_THROWS_AS(lang->symbol_of(U'c'), InvalidPrefix);
}

TEST_CASE("empty language") {
  CHECK_THROWS_AS(trie_language({}), EmptyLanguage);
  CHECK_THROWS_AS(trie_language(words({{"", {0, 0}}})), EmptyLanguage);
}

TEST_CASE("second player picks the last letter") {
  auto lang = trie_language(words({{"ab", {1, -1}}, {"ac", {-1, 1}}}));
  GameValue v = solve(Prefix{}, *lang);
  CHECK(v.u1 == Payoff(-1));
  CHECK(v.u2 == Payoff(1));
  REQUIRE(v.principal_move);
  CHECK(lang->letter_of(*v.principal_move) == U'a');
  CHECK(lang->letter_of(best_move(enc(*lang, "a"), *lang)) == U'c');
}

TEST_CASE("constant utility") {
  auto lang = trie_language(words({{"xy", {4, 1}}, {"xz", {4, 1}}, {"q", {4, 1}}}));
  GameValue v = solve(Prefix{}, *lang);
  CHECK(v.u1 == Payoff(4));
  CHECK(v.u2 == Payoff(1));
}

TEST_CASE("terminal prefix has no principal move and best_move throws") {
  auto lang = trie_language(words({{"ab", {2, 3}}}));
  Prefix word = enc(*lang, "ab");
  GameValue v = solve(word, *lang);
  CHECK_FALSE(v.principal_move);
  CHECK(v.u1 == Payoff(2));
  CHECK_THROWS_AS(best_move(word, *lang), std::logic_error);
  CHECK(lang->letter_of(best_move(Prefix{}, *lang)) == U'a');
}

TEST_CASE("tie-break prefers minimizing the opponent, then the smaller letter") {
  // Player 1 chooses between b (1, 5), c (1, 2) and d (1, 2).
  auto lang = trie_language(words({{"b", {1, 5}}, {"c", {1, 2}}, {"d", {1, 2}}}));
  CHECK(lang->letter_of(best_move(Prefix{}, *lang)) == U'c');
}

TEST_CASE("payoff sentinel orders below every value") {
  Payoff loss = Payoff::loss();
  CHECK(loss < Payoff(-1e300));
  CHECK(loss == Payoff::loss());
  CHECK(loss.to_string() == "-inf");
  CHECK_THROWS_AS(loss.value(), std::logic_error);
  CHECK(Payoff(2) > Payoff(1));
}

TEST_CASE("alpha-beta requires a zero-sum language") {
  auto lang = trie_language(words({{"ab", {1, 1}}, {"ac", {0, 0}}}));
  CHECK_FALSE(lang->zero_sum_total());
  CHECK_THROWS_AS(Solver(*lang, {.memoize = true, .alpha_beta = true}), std::invalid_argument);
}

TEST_CASE("solver matches the brute-force oracle on random word lists") {
  Rng rng(20240101);
  for (int round = 0; round < 300; ++round) {
    auto list = random_words(rng, 2 + static_cast<int>(rng.below(14)), 5, 3, round % 2 == 0);
    auto lang = trie_language(list);
    Oracle oracle(list);
    auto [u1, u2, letter] = oracle.value(U"");
    GameValue v = solve(Prefix{}, *lang);
    INFO("round " << round);
    CHECK(v.u1 == Payoff(u1));
    CHECK(v.u2 == Payoff(u2));
    REQUIRE(v.principal_move);
    CHECK(lang->letter_of(*v.principal_move) == letter);
  }
}

TEST_CASE("memoized, unmemoized and alpha-beta solvers agree at every reachable prefix") {
  Rng rng(77);
  for (int round = 0; round < 200; ++round) {
    const bool zero_sum = round % 2 == 0;
    auto lang = trie_language(random_words(rng, 2 + static_cast<int>(rng.below(12)), 5, 3, zero_sum));
    Solver memo(*lang);
    Solver plain(*lang, {.memoize = false});
    std::optional<Solver> pruned;
    if (lang->zero_sum_total()) pruned.emplace(*lang, SolverOptions{.memoize = true, .alpha_beta = true});

    std::vector<Prefix> stack{Prefix{}};
    while (!stack.empty()) {
      Prefix p = stack.back();
      stack.pop_back();
      GameValue a = memo.solve(p);
      CHECK(a == plain.solve(p));
      CHECK(a == memo.solve(p));
      if (pruned) CHECK(a == pruned->solve(p));
      for (Symbol s : legal_moves(p, *lang)) {
        Prefix q = p;
        q.push_back(s);
        stack.push_back(q);
      }
    }
  }
}

TEST_CASE("legality closure and termination under random play") {
  Rng rng(5);
  for (int round = 0; round < 100; ++round) {
    auto lang = trie_language(random_words(rng, 3 + static_cast<int>(rng.below(10)), 5, 4, false));
    PlayResult r = play_out(Prefix{}, *lang, random_strategy(*lang, round), random_strategy(*lang, round + 1000));
    CHECK(lang->is_terminal(r.word));
    CHECK(r.trace.size() == r.word.size());
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].mover == mover_at(i));
      CHECK(r.trace[i].symbol == r.word[i]);
      CHECK_FALSE(legal_moves(std::span(r.word).first(i), *lang).empty());
    }
    CHECK(r.utilities == lang->utilities(r.word));
  }
}

TEST_CASE("play_out with first-legal strategies and solver strategies") {
  auto lang = trie_language(words({{"ab", {1, -1}}, {"ac", {-1, 1}}, {"b", {0, 0}}}));
  PlayResult first = play_out(Prefix{}, *lang, first_legal_strategy(*lang), first_legal_strategy(*lang));
  CHECK(lang->decode(first.word) == U"ab");

  auto solver = std::make_shared<Solver>(*lang);
  PlayResult best = play_out(Prefix{}, *lang, solver_strategy(solver), solver_strategy(solver));
  CHECK(lang->decode(best.word) == U"b");
  CHECK(best.utilities == Utilities{0, 0});
}

TEST_CASE("illegal strategy move names the player") {
  auto lang = trie_language(words({{"ab", {1, -1}}, {"ac", {-1, 1}}}));
  Strategy bad = [&](std::span<const Symbol>, Player) { return lang->symbol_of(U'a'); };
  try {
    play_out(Prefix{}, *lang, first_legal_strategy(*lang), bad);
    FAIL("expected StrategyIllegalMove");
  } catch (const StrategyIllegalMove& e) {
    CHECK(e.player() == Player::kSecond);
    CHECK(lang->letter_of(e.symbol()) == U'a');
  }
}

TEST_CASE("scripted strategy falls back after the script") {
  auto lang = trie_language(words({{"abc", {1, 0}}, {"abd", {0, 1}}}));
  Strategy s = scripted_strategy({lang->symbol_of(U'a'), lang->symbol_of(U'd')}, first_legal_strategy(*lang));
  PlayResult r = play_out(Prefix{}, *lang, s, first_legal_strategy(*lang));
  CHECK(lang->decode(r.word) == U"abd");
}

TEST_CASE("word list parsing") {
  std::istringstream in("# comment\n\nab\t1\t-1\nac\t-1 1\nb\n");
  auto list = read_word_list(in);
  REQUIRE(list.size() == 3);
  CHECK(list[0].word == U"ab");
  CHECK(list[0].utilities == Utilities{1, -1});
  CHECK(list[1].utilities == Utilities{-1, 1});
  CHECK(list[2].utilities == Utilities{0, 0});

  std::istringstream bad("ab\tx y\n");
  CHECK_THROWS(read_word_list(bad));
}

TEST_CASE("utf8 round trip") {
  std::string text = "caf\xc3\xa9 \xe2\x82\xac";
  CHECK(u32_to_utf8(utf8_to_u32(text)) == text);
  CHECK(utf8_to_u32(text).size() == 6);
  CHECK_THROWS(utf8_to_u32("\xc3"));
}

TEST_CASE("contested word list") {
  auto list = contested_word_list({U"cat", U"dog", U"sol"}, {U"sol", U"gato", U"el"});
  std::map<std::u32string, Utilities> by_word;
  for (auto& e : list) by_word[e.word] = e.utilities;
  CHECK(by_word.at(U"cat") == Utilities{1, -1});
  CHECK(by_word.at(U"gato") == Utilities{-1, 1});
  CHECK(by_word.at(U"sol") == Utilities{0, 0});
  CHECK_FALSE(by_word.count(U"el"));
  auto lang = trie_language(list);
  CHECK(lang->zero_sum_total() == 0.0);
}

TEST_CASE("duplicate word with different utilities is rejected") {
  CHECK_THROWS(trie_language(words({{"ab", {1, 0}}, {"ab", {0, 1}}})));
}

TEST_CASE("rng is reproducible and bounded") {
  Rng a(9);
  Rng b(9);
  for (int i = 0; i < 100; ++i) {
    auto x = a.below(7);
    CHECK(x == b.below(7));
    CHECK(x < 7);
  }
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
  // mt19937_64 output is fixed by the standard.
  Rng c(5489);
  CHECK(c.next() == 14514284786278117030ULL);
}
