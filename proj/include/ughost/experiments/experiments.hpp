#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ughost/district/redistricting_language.hpp"
#include "ughost/district/state_file.hpp"

namespace ughost::experiments {

using district::Districting;
using district::Party;
using district::SeatCount;
using district::StateGraph;

struct ExperimentRecord {
  std::string condition;  // random_map, max_A, min_A, ghost
  int x = 0;
  std::string statistic;  // mean, std, exact_expectation
  double value = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

// Seats won by A for one unanimous voter distribution, under the four
// conditions of the votes-seats experiment.
struct DrawOutcome {
  double random_map = 0.0;  // mean over all admissible maps
  int max_a = 0;
  int min_a = 0;
  int ghost = 0;  // A's seats under optimal play
};

// Unanimous counties: atom i votes A iff a_voters[i]. `ghost_first` moves first.
DrawOutcome evaluate_draw(const StateGraph& graph, const std::vector<Districting>& maps,
                          const std::vector<bool>& a_voters, Party ghost_first = Party::kA);

enum class Mode { kSampled, kExact };

struct DecominoOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  Mode mode = Mode::kSampled;
};

// Every x in 0..n. Sampled mode draws `trials` distributions per x, each
// from its own seeded stream, and reports mean and sample std. Exact mode
// averages over all C(n, x) distributions, with trials = C(n, x), seed = 0.
std::vector<ExperimentRecord> run_decomino(const district::StateInstance& shape,
                                           const DecominoOptions& options);

class NotTwoDistricts : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// I-cut-you-freeze with two districts: the first player picks the map
// maximizing its seats; ties go to the earlier map.
Districting icyf_k2(const std::vector<Districting>& maps, const std::vector<district::Atom>& atoms,
                    Party first_player);

struct GhostOutcome {
  Party first;
  Districting map;
  int map_index = 0;  // into NhReport::maps
  SeatCount seats;
  std::vector<std::string> moves;  // "<party> <atom> <district>"
};

struct IcyfOutcome {
  Party first;
  Districting map;
  int map_index = 0;
  SeatCount seats;
};

struct NhReport {
  std::string name;
  std::string party_a;
  std::string party_b;
  std::vector<Districting> maps;
  std::vector<SeatCount> map_seats;
  double share_a = 0.0;  // percent of all votes cast
  double share_b = 0.0;
  std::vector<GhostOutcome> ghost;  // A first, then B first
  std::vector<IcyfOutcome> icyf;
};

NhReport run_nh(const district::StateInstance& state);
std::string format_nh_report(const NhReport& report, const std::vector<district::Atom>& atoms);

// Percent of votes_a + votes_b + votes_other.
std::pair<double, double> vote_shares(const StateGraph& graph);

}  // namespace ughost::experiments
