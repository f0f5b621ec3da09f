// Searches fixed decominoes for one whose exact 5+5 contiguous bipartitions
// number exactly seven and always separate the top-right cell (rightmost cell
// of the top row) from the bottom-left cell (leftmost cell of the bottom row).
// Prints the first match, in sorted cell order, as a state file.

#include <algorithm>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ughost/district/districting.hpp"
#include "ughost/district/state_file.hpp"

using Cell = std::pair<int, int>;  // (row, col), row 0 on top
using Shape = std::vector<Cell>;

namespace {

Shape normalize(Shape s) {
  int r0 = s[0].first;
  int c0 = s[0].second;
  for (auto [r, c] : s) {
    r0 = std::min(r0, r);
    c0 = std::min(c0, c);
  }
  for (auto& [r, c] : s) {
    r -= r0;
    c -= c0;
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::set<Shape> fixed_polyominoes(int size) {
  std::set<Shape> level{{{0, 0}}};
  for (int n = 2; n <= size; ++n) {
    std::set<Shape> next;
    for (const Shape& s : level) {
      for (auto [r, c] : s) {
        const Cell around[] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (Cell cell : around) {
          if (std::find(s.begin(), s.end(), cell) != s.end()) continue;
          Shape grown = s;
          grown.push_back(cell);
          next.insert(normalize(std::move(grown)));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

ughost::district::StateInstance to_instance(const Shape& shape) {
  using namespace ughost::district;
  std::vector<Atom> atoms;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(shape.size()); ++i) {
    auto [r, c] = shape[i];
    Atom a;
    a.id = i;
    a.name = "r" + std::to_string(r) + "c" + std::to_string(c);
    a.population = 1;
    a.position = Position{static_cast<double>(c), static_cast<double>(r)};
    atoms.push_back(a);
    for (int j = 0; j < i; ++j) {
      auto [r2, c2] = shape[j];
      if (std::abs(r - r2) + std::abs(c - c2) == 1) edges.emplace_back(j, i);
    }
  }
  StateInstance inst;
  inst.name = "decomino";
  inst.graph = StateGraph(std::move(atoms), edges);
  inst.constraints.k = 2;
  inst.constraints.balance = BalanceRule::kExactSize;
  inst.constraints.contiguity = true;
  return inst;
}

// Shape cells are sorted by (row, col).
int top_right(const Shape& s) {
  int best = 0;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    if (s[i].first == s[0].first) best = i;
  }
  return best;
}

int bottom_left(const Shape& s) {
  const int last_row = s.back().first;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    if (s[i].first == last_row) return i;
  }
  return static_cast<int>(s.size()) - 1;
}

}  // namespace

int main() {
  using namespace ughost::district;
  const auto shapes = fixed_polyominoes(10);
  std::cerr << shapes.size() << " fixed decominoes\n";
  int matches = 0;
  const Shape* first = nullptr;
  for (const Shape& shape : shapes) {
    StateInstance inst = to_instance(shape);
    std::vector<Districting> maps;
    try {
      maps = enumerate_maps(inst.graph, inst.constraints);
    } catch (const NoAdmissibleMap&) {
      continue;
    }
    if (maps.size() != 7) continue;
    const int tr = top_right(shape);
    const int bl = bottom_left(shape);
    bool separated = std::all_of(maps.begin(), maps.end(), [&](const Districting& m) {
      return m.assignment[tr] != m.assignment[bl];
    });
    if (!separated) continue;
    if (!first) first = &shape;
    ++matches;
  }
  std::cerr << matches << " match\n";
  if (!first) return 1;
  StateInstance inst = to_instance(*first);
  std::cerr << "top-right atom " << top_right(*first) << ", bottom-left atom "
            << bottom_left(*first) << "\n";
  std::cout << format_state(inst);
  return 0;
}
