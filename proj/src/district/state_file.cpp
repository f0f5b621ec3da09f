#include "ughost/district/state_file.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace ughost::district {

ParseError::ParseError(const std::string& source, int line, const std::string& field,
                       const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + field + ": " + message),
      line_(line),
      field_(field) {}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

enum class Section { kNone, kAtoms, kEdges, kAdjacency, kConstraints };

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  StateInstance run(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      std::string text = trim(raw.substr(0, raw.find('#')));
      if (text.empty()) continue;
      handle(text);
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ParseError(source_, line_, field, message);
  }

  std::int64_t to_int(const std::string& token, const std::string& field) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      fail(field, "expected an integer, got \"" + token + "\"");
    }
    return v;
  }

  double to_double(const std::string& token, const std::string& field) const {
    try {
      std::size_t used = 0;
      double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      fail(field, "expected a number, got \"" + token + "\"");
    }
  }

  void handle(const std::string& text) {
    auto colon = text.find(':');
    if (colon != std::string::npos) {
      std::string key = trim(std::string_view(text).substr(0, colon));
      std::string value = trim(std::string_view(text).substr(colon + 1));
      if (key == "atoms" || key == "edges" || key == "adjacency" || key == "constraints") {
        if (!value.empty()) fail(key, "section header takes no value");
        section_ = key == "atoms"       ? Section::kAtoms
                   : key == "edges"     ? Section::kEdges
                   : key == "adjacency" ? Section::kAdjacency
                                        : Section::kConstraints;
        return;
      }
      if (key == "name") {
        instance_.name = value;
        return;
      }
      if (key == "parties") {
        auto parts = split_ws(value);
        if (parts.size() != 2) fail("parties", "expected two party names");
        instance_.party_a = parts[0];
        instance_.party_b = parts[1];
        return;
      }
      if (key == "grid") {
        auto x = value.find_first_of("xX");
        if (x == std::string::npos) fail("grid", "expected RxC");
        GridShape g{static_cast<int>(to_int(trim(value.substr(0, x)), "grid")),
                    static_cast<int>(to_int(trim(value.substr(x + 1)), "grid"))};
        if (g.rows <= 0 || g.cols <= 0) fail("grid", "dimensions must be positive");
        instance_.grid = g;
        return;
      }
      if (section_ != Section::kConstraints && section_ != Section::kAdjacency) {
        fail(key, "unknown directive");
      }
    }
    switch (section_) {
      case Section::kAtoms:
        atom_line(text);
        break;
      case Section::kEdges:
        edge_line(text);
        break;
      case Section::kAdjacency:
        adjacency_line(text);
        break;
      case Section::kConstraints:
        constraint_line(text);
        break;
      case Section::kNone:
        fail("line", "content outside any section");
    }
  }

  void atom_line(const std::string& text) {
    auto tok = split_ws(text);
    if (tok.size() < 5) fail("atoms", "expected: id name population votes_a votes_b");
    Atom a;
    a.id = static_cast<int>(to_int(tok[0], "atoms.id"));
    a.name = tok[1];
    a.population = to_int(tok[2], "atoms.population");
    a.votes_a = to_int(tok[3], "atoms.votes_a");
    a.votes_b = to_int(tok[4], "atoms.votes_b");
    Position pos;
    bool has_x = false;
    bool has_y = false;
    for (std::size_t i = 5; i < tok.size(); ++i) {
      auto eq = tok[i].find('=');
      if (eq == std::string::npos) fail("atoms", "optional fields are key=value, got \"" + tok[i] + "\"");
      std::string key = tok[i].substr(0, eq);
      std::string value = tok[i].substr(eq + 1);
      if (key == "other") {
        a.votes_other = to_int(value, "atoms.other");
      } else if (key == "x") {
        pos.x = to_double(value, "atoms.x");
        has_x = true;
      } else if (key == "y") {
        pos.y = to_double(value, "atoms.y");
        has_y = true;
      } else {
        fail("atoms", "unknown field \"" + key + "\"");
      }
    }
    if (has_x != has_y) fail("atoms", "x and y must be given together");
    if (has_x) a.position = pos;
    atoms_.push_back(std::move(a));
    atom_lines_.push_back(line_);
  }

  void edge_line(const std::string& text) {
    auto tok = split_ws(text);
    if (tok.size() != 2) fail("edges", "expected two atom ids");
    edges_.emplace_back(static_cast<int>(to_int(tok[0], "edges")),
                        static_cast<int>(to_int(tok[1], "edges")));
  }

  // "id: n1 n2 ..." lists every neighbor of `id`; both directions must appear.
  void adjacency_line(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) fail("adjacency", "expected \"id: neighbor ...\"");
    int from = static_cast<int>(to_int(trim(std::string_view(text).substr(0, colon)), "adjacency"));
    for (const std::string& tok : split_ws(text.substr(colon + 1))) {
      int to = static_cast<int>(to_int(tok, "adjacency"));
      if (!arcs_.emplace(from, to).second) fail("adjacency", "neighbor listed twice");
    }
  }

  void constraint_line(const std::string& text) {
    std::string normalized = text;
    if (auto colon = normalized.find(':'); colon != std::string::npos) normalized[colon] = ' ';
    auto tok = split_ws(normalized);
    Constraints& c = instance_.constraints;
    if (tok[0] == "k") {
      if (tok.size() != 2) fail("constraints.k", "expected one value");
      c.k = static_cast<int>(to_int(tok[1], "constraints.k"));
      has_k_ = true;
    } else if (tok[0] == "balance") {
      if (tok.size() == 2 && tok[1] == "exact") {
        c.balance = BalanceRule::kExactSize;
      } else if (tok.size() == 3 && tok[1] == "population") {
        c.balance = BalanceRule::kPopulationDeviation;
        c.tolerance = to_double(tok[2], "constraints.balance");
      } else {
        fail("constraints.balance", "expected \"exact\" or \"population <tolerance>\"");
      }
    } else if (tok[0] == "contiguity") {
      if (tok.size() != 2 || (tok[1] != "true" && tok[1] != "false")) {
        fail("constraints.contiguity", "expected true or false");
      }
      c.contiguity = tok[1] == "true";
    } else {
      fail("constraints", "unknown key \"" + tok[0] + "\"");
    }
  }

  StateInstance finish() {
    if (!has_k_) fail("constraints.k", "missing");
    for (auto [from, to] : arcs_) {
      if (!arcs_.count({to, from})) {
        throw ValidationError("adjacency is not symmetric: " + std::to_string(from) + " lists " +
                              std::to_string(to) + " but " + std::to_string(to) + " does not list " +
                              std::to_string(from));
      }
      if (from < to) edges_.emplace_back(from, to);
      if (from == to) edges_.emplace_back(from, to);
    }
    if (instance_.grid) {
      if (!edges_.empty()) fail("edges", "edges are generated by the grid directive");
      StateGraph grid = grid_graph(instance_.grid->rows, instance_.grid->cols);
      std::vector<Atom> atoms = grid.atoms();
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        Atom a = atoms_[i];
        if (a.id < 0 || a.id >= static_cast<int>(atoms.size())) {
          line_ = atom_lines_[i];
          fail("atoms.id", "id " + std::to_string(a.id) + " outside the grid");
        }
        if (!a.position) a.position = atoms[a.id].position;
        atoms[a.id] = std::move(a);
      }
      instance_.graph = StateGraph(std::move(atoms), grid.edges());
    } else {
      instance_.graph = StateGraph(std::move(atoms_), edges_);
    }
    instance_.constraints.validate(instance_.graph.size());
    if (instance_.name.empty()) instance_.name = source_;
    return std::move(instance_);
  }

  std::string source_;
  int line_ = 0;
  Section section_ = Section::kNone;
  StateInstance instance_;
  std::vector<Atom> atoms_;
  std::vector<int> atom_lines_;
  std::vector<std::pair<int, int>> edges_;
  std::set<std::pair<int, int>> arcs_;
  bool has_k_ = false;
};

}  // namespace

StateInstance parse_state(std::istream& in, const std::string& source) {
  return Parser(source).run(in);
}

StateInstance parse_state_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_state(in, source);
}

StateInstance ingest_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "file", "cannot open");
  return parse_state(in, path);
}

std::string format_state(const StateInstance& instance) {
  std::ostringstream out;
  out << "name: " << instance.name << "\n";
  out << "parties: " << instance.party_a << " " << instance.party_b << "\n";
  if (instance.grid) out << "grid: " << instance.grid->rows << "x" << instance.grid->cols << "\n";
  out << "atoms:\n";
  for (const Atom& a : instance.graph.atoms()) {
    out << a.id << " " << a.name << " " << a.population << " " << a.votes_a << " " << a.votes_b;
    if (a.votes_other) out << " other=" << a.votes_other;
    if (a.position) out << " x=" << a.position->x << " y=" << a.position->y;
    out << "\n";
  }
  if (!instance.grid) {
    out << "edges:\n";
    for (auto [a, b] : instance.graph.edges()) out << a << " " << b << "\n";
  }
  const Constraints& c = instance.constraints;
  out << "constraints:\n";
  out << "k " << c.k << "\n";
  if (c.balance == BalanceRule::kExactSize) {
    out << "balance exact\n";
  } else {
    out << "balance population " << c.tolerance << "\n";
  }
  out << "contiguity " << (c.contiguity ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace ughost::district
