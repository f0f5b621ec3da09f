#include "ughost/district/redistricting_language.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ughost::district {

RedistrictingLanguage::RedistrictingLanguage(std::vector<Districting> unlabeled_maps,
                                             std::vector<Atom> atoms, int k, Party first_party,
                                             std::vector<std::string> party_names)
    : atoms_(std::move(atoms)),
      k_(k),
      first_party_(first_party),
      party_names_(std::move(party_names)) {
  if (unlabeled_maps.empty()) throw std::invalid_argument("language needs at least one map");
  if (party_names_.size() != 2) throw std::invalid_argument("exactly two party names expected");
  const int n = atom_count();
  if (n == 0 || n > kMaxAtoms) throw std::invalid_argument("unsupported atom count");

  std::set<std::vector<int>> seen_unlabeled;
  std::set<std::vector<int>> labeled;
  for (const Districting& raw : unlabeled_maps) {
    if (raw.k != k_ || static_cast<int>(raw.assignment.size()) != n) {
      throw std::invalid_argument("map does not match the atom count or k");
    }
    Districting map = raw.canonical();
    if (!seen_unlabeled.insert(map.assignment).second) continue;
    unlabeled_.push_back(map);
    std::vector<int> perm(k_);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> assignment(n);
      for (int i = 0; i < n; ++i) assignment[i] = perm[map.assignment[i]];
      labeled.insert(std::move(assignment));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  for (const auto& assignment : labeled) {
    Districting d{assignment, k_};
    labeled_masks_.push_back(d.part_masks());
    labeled_.push_back(std::move(d));
  }

  std::optional<int> decided;
  bool constant = true;
  for (const Districting& map : unlabeled_) {
    SeatCount sc = seats(map, atoms_);
    int won = sc.seats_a + sc.seats_b;
    if (!decided) {
      decided = won;
    } else if (*decided != won) {
      constant = false;
    }
  }
  if (constant) zero_sum_total_ = static_cast<double>(*decided);
}

std::optional<RedistrictingLanguage::Partial> RedistrictingLanguage::partial(
    std::span<const Symbol> prefix) const {
  Partial p;
  p.by_district.assign(k_, 0);
  for (Symbol s : prefix) {
    if (s.code >= alphabet_size()) return std::nullopt;
    const AtomMask bit = AtomMask{1} << atom_of(s);
    if (p.assigned & bit) return std::nullopt;
    p.assigned |= bit;
    p.by_district[district_of(s)] |= bit;
  }
  return p;
}

bool RedistrictingLanguage::consistent(const Partial& p, std::size_t labeled_index) const {
  const auto& masks = labeled_masks_[labeled_index];
  for (int d = 0; d < k_; ++d) {
    if (p.by_district[d] & ~masks[d]) return false;
  }
  return true;
}

bool RedistrictingLanguage::is_prefix(std::span<const Symbol> prefix) const {
  auto p = partial(prefix);
  if (!p) return false;
  for (std::size_t i = 0; i < labeled_.size(); ++i) {
    if (consistent(*p, i)) return true;
  }
  return false;
}

std::vector<Symbol> RedistrictingLanguage::legal_moves(std::span<const Symbol> prefix) const {
  auto p = partial(prefix);
  if (!p) throw InvalidPrefix("prefix repeats an atom or leaves the alphabet");
  const int n = atom_count();
  const AtomMask all = n == kMaxAtoms ? ~AtomMask{0} : (AtomMask{1} << n) - 1;
  const AtomMask open = all & ~p->assigned;
  std::vector<AtomMask> allowed(k_, 0);
  bool any = false;
  for (std::size_t i = 0; i < labeled_.size(); ++i) {
    if (!consistent(*p, i)) continue;
    any = true;
    for (int d = 0; d < k_; ++d) allowed[d] |= labeled_masks_[i][d] & open;
  }
  if (!any) throw InvalidPrefix("no admissible map completes the prefix");
  std::vector<Symbol> out;
  for (int atom = 0; atom < n; ++atom) {
    for (int d = 0; d < k_; ++d) {
      if ((allowed[d] >> atom) & 1U) out.push_back(symbol(atom, d));
    }
  }
  return out;
}

bool RedistrictingLanguage::is_terminal(std::span<const Symbol> prefix) const {
  return static_cast<int>(prefix.size()) == atom_count() && is_prefix(prefix);
}

Utilities RedistrictingLanguage::utilities(std::span<const Symbol> word) const {
  if (!is_terminal(word)) throw InvalidPrefix("utilities requested for an incomplete map");
  Districting map{assignment(word), k_};
  SeatCount sc = seats(map, atoms_);
  auto seats_of = [&](Party party) {
    return static_cast<double>(party == Party::kA ? sc.seats_a : sc.seats_b);
  };
  return {seats_of(party_of(Player::kFirst)), seats_of(party_of(Player::kSecond))};
}

std::string RedistrictingLanguage::state_key(std::span<const Symbol> prefix) const {
  auto p = partial(prefix);
  if (!p) throw InvalidPrefix("prefix repeats an atom or leaves the alphabet");
  // The labeled map set is closed under relabeling, so only the grouping of
  // assigned atoms matters, not which label each group carries.
  std::vector<AtomMask> groups;
  for (AtomMask m : p->by_district) {
    if (m) groups.push_back(m);
  }
  std::sort(groups.begin(), groups.end());
  std::string key;
  key.reserve(groups.size() * sizeof(AtomMask));
  for (AtomMask m : groups) {
    for (int shift = 0; shift < 64; shift += 8) key.push_back(static_cast<char>((m >> shift) & 0xFF));
  }
  return key;
}

SymbolText RedistrictingLanguage::symbol_text(Symbol s) const {
  if (s.code >= alphabet_size()) return {"?", "?"};
  return {atoms_[atom_of(s)].name, std::to_string(district_of(s))};
}

std::string RedistrictingLanguage::player_name(Player p) const {
  return party_names_[party_of(p) == Party::kA ? 0 : 1];
}

std::optional<RedistrictingLanguage::Rejection> RedistrictingLanguage::check_move(
    std::span<const Symbol> prefix, Symbol s) const {
  if (s.code >= alphabet_size()) return Rejection::kOutOfRange;
  auto p = partial(prefix);
  if (!p) throw InvalidPrefix("prefix repeats an atom or leaves the alphabet");
  if ((p->assigned >> atom_of(s)) & 1U) return Rejection::kAtomTaken;
  p->assigned |= AtomMask{1} << atom_of(s);
  p->by_district[district_of(s)] |= AtomMask{1} << atom_of(s);
  for (std::size_t i = 0; i < labeled_.size(); ++i) {
    if (consistent(*p, i)) return std::nullopt;
  }
  return Rejection::kNoAdmissibleCompletion;
}

std::optional<Districting> RedistrictingLanguage::completion(std::span<const Symbol> prefix) const {
  auto p = partial(prefix);
  if (!p) return std::nullopt;
  for (std::size_t i = 0; i < labeled_.size(); ++i) {
    if (consistent(*p, i)) return labeled_[i];
  }
  return std::nullopt;
}

std::vector<int> RedistrictingLanguage::assignment(std::span<const Symbol> prefix) const {
  std::vector<int> out(atom_count(), -1);
  for (Symbol s : prefix) {
    if (s.code >= alphabet_size()) throw InvalidPrefix("symbol outside the alphabet");
    int& slot = out[atom_of(s)];
    if (slot >= 0) throw InvalidPrefix("atom " + atoms_[atom_of(s)].name + " assigned twice");
    slot = district_of(s);
  }
  return out;
}

int RedistrictingLanguage::unlabeled_index(std::span<const Symbol> word) const {
  if (!is_terminal(word)) throw InvalidPrefix("not a complete map");
  Districting canon = Districting{assignment(word), k_}.canonical();
  for (std::size_t i = 0; i < unlabeled_.size(); ++i) {
    if (unlabeled_[i] == canon) return static_cast<int>(i);
  }
  throw std::logic_error("complete word does not match any admissible map");
}

std::shared_ptr<RedistrictingLanguage> make_language(std::vector<Districting> maps,
                                                     std::vector<Atom> atoms, int k,
                                                     Party first_party,
                                                     std::vector<std::string> party_names) {
  return std::make_shared<RedistrictingLanguage>(std::move(maps), std::move(atoms), k, first_party,
                                                 std::move(party_names));
}

}  // namespace ughost::district
