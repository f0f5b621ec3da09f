#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ughost/core/language.hpp"
#include "ughost/district/districting.hpp"

namespace ughost::district {

enum class Party { kA, kB };

inline Party other_party(Party p) { return p == Party::kA ? Party::kB : Party::kA; }

// Alphabet [n] x [k]: symbol code = atom * k + district, so the symbol order
// is by atom, then district. A prefix is legal iff its atoms are distinct and
// some labeled admissible map agrees with every assignment in it (the map is
// the certificate that the move has an admissible completion). Utilities are
// the seats of the first and second movers' parties.
class RedistrictingLanguage final : public LanguageOracle {
 public:
  RedistrictingLanguage(std::vector<Districting> unlabeled_maps, std::vector<Atom> atoms, int k,
                        Party first_party = Party::kA,
                        std::vector<std::string> party_names = {"A", "B"});

  std::size_t alphabet_size() const override {
    return static_cast<std::size_t>(atom_count()) * k_;
  }
  bool is_prefix(std::span<const Symbol> prefix) const override;
  std::vector<Symbol> legal_moves(std::span<const Symbol> prefix) const override;
  bool is_terminal(std::span<const Symbol> prefix) const override;
  Utilities utilities(std::span<const Symbol> word) const override;
  std::optional<double> zero_sum_total() const override { return zero_sum_total_; }
  std::string state_key(std::span<const Symbol> prefix) const override;
  SymbolText symbol_text(Symbol s) const override;
  std::string player_name(Player p) const override;

  Symbol symbol(int atom, int district) const {
    return Symbol{static_cast<std::uint32_t>(atom * k_ + district)};
  }
  int atom_of(Symbol s) const { return static_cast<int>(s.code) / k_; }
  int district_of(Symbol s) const { return static_cast<int>(s.code) % k_; }

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int k() const { return k_; }
  Party first_party() const { return first_party_; }
  Party party_of(Player p) const {
    return p == Player::kFirst ? first_party_ : other_party(first_party_);
  }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Districting>& unlabeled_maps() const { return unlabeled_; }
  const std::vector<Districting>& labeled_maps() const { return labeled_; }
  bool label_symmetric() const { return true; }

  // Why a symbol cannot extend a legal prefix, or nullopt if it can.
  enum class Rejection { kOutOfRange, kAtomTaken, kNoAdmissibleCompletion };
  std::optional<Rejection> check_move(std::span<const Symbol> prefix, Symbol s) const;

  // A labeled map consistent with the prefix (the completion certificate).
  std::optional<Districting> completion(std::span<const Symbol> prefix) const;

  // Per-atom district (-1 unassigned); throws InvalidPrefix on duplicates or
  // out-of-range symbols.
  std::vector<int> assignment(std::span<const Symbol> prefix) const;

  // Index into unlabeled_maps() of the map a complete word spells.
  int unlabeled_index(std::span<const Symbol> word) const;

 private:
  struct Partial {
    std::vector<AtomMask> by_district;
    AtomMask assigned = 0;
  };
  std::optional<Partial> partial(std::span<const Symbol> prefix) const;
  bool consistent(const Partial& p, std::size_t labeled_index) const;

  std::vector<Districting> unlabeled_;
  std::vector<Districting> labeled_;
  std::vector<std::vector<AtomMask>> labeled_masks_;
  std::vector<Atom> atoms_;
  int k_;
  Party first_party_;
  std::vector<std::string> party_names_;
  std::optional<double> zero_sum_total_;
};

std::shared_ptr<RedistrictingLanguage> make_language(std::vector<Districting> maps,
                                                     std::vector<Atom> atoms, int k,
                                                     Party first_party = Party::kA,
                                                     std::vector<std::string> party_names = {
                                                         "A", "B"});

}  // namespace ughost::district
