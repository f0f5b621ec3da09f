#include "ughost/balanced/audit.hpp"

#include <algorithm>
#include <sstream>

namespace ughost::balanced {

namespace {

struct Snapshot {
  std::vector<int> S;
  int f = 0;
  int l = 0;
  int e = 0;
  int A = 0;
  int B = 0;
  int W = 0;
  int w1 = 0;
};

// Deliberately separate from select_S: rank every bin by a single key and
// take the first j.
Snapshot snapshot(const State& s) {
  const int k = s.config.bins();
  const int cap = s.config.capacity();
  std::vector<std::pair<long, int>> ranked;
  Snapshot out;
  for (int b = 0; b < k; ++b) {
    const Bin& bin = s.bins[b];
    const bool leads = bin.white > bin.black;
    if (leads) {
      ++out.l;
      out.W += bin.white;
    }
    if (bin.total() == 0) ++out.e;
    // Leading bins first by most white, then the rest by fewest balls.
    long key = leads ? static_cast<long>(cap - bin.white) : static_cast<long>(cap + 1 + bin.total());
    ranked.emplace_back(key * k + b, b);
  }
  std::sort(ranked.begin(), ranked.end());
  for (int i = 0; i < s.config.j; ++i) out.S.push_back(ranked[i].second);
  for (int b : out.S) {
    out.f += std::min(s.bins[b].white, s.config.m + 1);
    out.w1 = std::max(out.w1, s.bins[b].white);
    if (s.bins[b].total() == 0) ++out.A;
  }
  out.B = out.e - out.A;
  return out;
}

std::string describe(const State& s) {
  std::ostringstream out;
  out << "round " << s.round() << " bins";
  for (const Bin& b : s.bins) out << " (" << b.white << "w," << b.black << "b)";
  return out.str();
}

}  // namespace

AuditRow audit_row(const State& before, const Move& move) {
  Snapshot snap = snapshot(before);
  AuditRow row;
  row.round = before.round();
  row.mover = before.mover();
  row.move = move;
  row.S = snap.S;
  row.f = snap.f;
  row.l = snap.l;
  row.e = snap.e;
  row.A = snap.A;
  row.B = snap.B;
  row.W = snap.W;
  row.w1 = snap.w1;
  return row;
}

void write_audit_csv(std::ostream& out, const std::vector<AuditRow>& rows) {
  out << "round,mover,bin,color,f,l,e,A,B,W,w1\n";
  for (const AuditRow& r : rows) {
    out << r.round << ',' << (r.mover == Player::kFirst ? "P1" : "P2") << ',' << r.move.bin << ','
        << color_name(r.move.color) << ',' << r.f << ',' << r.l << ',' << r.e << ',' << r.A << ','
        << r.B << ',' << r.W << ',' << r.w1 << '\n';
  }
}

void InvariantMonitor::violation(const std::string& what, const State& s) {
  ++violations_;
  if (examples_.size() < 10) examples_.push_back(what + " at " + describe(s));
}

void InvariantMonitor::after_mirror_reply(const State& s) {
  ++mirror_checks;
  if (s.remaining_white != s.remaining_black) violation("mirror (i): remaining colors differ", s);
  const int k = config_.bins();
  for (int b = 0; b < k; ++b) {
    const int other = (b + config_.j) % k;
    if (s.bins[b].white != s.bins[other].black) {
      violation("mirror (ii): bin " + std::to_string(b) + " white != bin " + std::to_string(other) +
                    " black",
                s);
      return;
    }
  }
}

void InvariantMonitor::round_transition(const State& before_p2, const State& before_p1,
                                    const State& after_p1) {
  const int r = before_p2.round();
  const int f_r = snapshot(before_p2).f;
  const int f_next = snapshot(after_p1).f;
  const int j = config_.j;
  const int m = config_.m;

  ++monotone_checks;
  if (f_next < f_r) {
    violation("f decreased from " + std::to_string(f_r) + " to " + std::to_string(f_next), before_p2);
  }

  const Snapshot at_p1 = snapshot(before_p1);
  const bool short_bin = std::any_of(at_p1.S.begin(), at_p1.S.end(), [&](int b) {
    return before_p1.bins[b].white < m + 1;
  });
  if (short_bin && before_p1.remaining_white > 0) {
    ++strict_checks;
    if (f_next < f_r + 1) {
      violation("f did not strictly increase (" + std::to_string(f_r) + " -> " +
                    std::to_string(f_next) + ")",
                before_p2);
    }
  }

  // Early game: r > 2j, m > 2r and at most j black balls so far. While
  // m > 2r P1 is always inside the table's precondition and plays white, so
  // every black ball on the board is P2's.
  int blacks = 0;
  for (const Bin& b : before_p1.bins) blacks += b.black;
  if (r > 2 * j && m > 2 * r && blacks <= j) {
    ++early_game_checks;
    // f(r+1) >= (1 + (j-1)/(2j-1)) (r-j) + 1, scaled by 2j-1.
    const long lhs = static_cast<long>(2 * j - 1) * f_next;
    const long rhs = static_cast<long>(3 * j - 2) * (r - j) + (2 * j - 1);
    if (lhs < rhs) violation("early-game bound fails: f = " + std::to_string(f_next), after_p1);
  }
}

void InvariantMonitor::final_state(const State& s) {
  ++final_checks;
  const Snapshot snap = snapshot(s);
  int p1 = 0;
  for (const Bin& b : s.bins) p1 += b.white >= config_.m + 1 ? 1 : 0;
  if (snap.f == config_.j * (config_.m + 1) && p1 < config_.j) {
    violation("f reached j(m+1) but P1 holds " + std::to_string(p1) + " bins", s);
  }
}

}  // namespace ughost::balanced
