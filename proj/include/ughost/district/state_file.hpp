#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>

#include "ughost/district/districting.hpp"
#include "ughost/district/state_graph.hpp"

namespace ughost::district {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& field,
             const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct GridShape {
  int rows = 0;
  int cols = 0;
};

struct StateInstance {
  std::string name;
  StateGraph graph;
  Constraints constraints;
  std::string party_a = "A";
  std::string party_b = "B";
  std::optional<GridShape> grid;
};

// Text format, '#' starts a comment:
//
//   name: New Hampshire
//   parties: Dem Rep
//   grid: 3x2                 # optional; generates atoms and rook edges
//   atoms:
//   # id name population votes_a votes_b [other=N] [x=F] [y=F]
//   0 Belknap 60088 13517 21650 other=2300
//   edges:                    # undirected pairs, or instead:
//   0 1
//   adjacency:                # neighbor lists; must be symmetric
//   0: 1 2
//   constraints:
//   k 2
//   balance population 0.10   # or: balance exact
//   contiguity true
//
// With `grid:`, the atoms section is optional and, if present, overrides
// per-atom data (ids must be in range); the edges section is not allowed.
StateInstance parse_state(std::istream& in, const std::string& source = "<input>");
StateInstance parse_state_string(const std::string& text, const std::string& source = "<input>");
StateInstance ingest_state(const std::string& path);

// Writes an instance back out in the same format.
std::string format_state(const StateInstance& instance);

}  // namespace ughost::district
