// Tables behind each `qf` subcommand. The tool in tools/qf.cpp only parses
// flags, picks the output stream and maps outcomes to exit codes.
#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "qf/floquet.hpp"
#include "qf/free_group.hpp"
#include "qf/quasiperiodic.hpp"
#include "qf/table.hpp"
#include "qf/trace_map.hpp"

namespace qf {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitDiverged = 3,
};

/// A table plus the step at which the computation left the finite range.
struct RunResult {
  Table table;
  std::optional<std::size_t> diverged_at;
};

inline Table bands_table(double ratio, const GridSpec& grid) {
  Table t{{"beta", "half_trace", "in_band"}, {}};
  for (double b : grid.points()) {
    t.add_row({b, kicked_half_trace(ratio, b), flag_cell(in_band(ratio, b))});
  }
  return t;
}

inline constexpr int kMaxPeriods = 100;

inline Table band_edges_table(double ratio, int periods) {
  if (periods < 1 || periods > kMaxPeriods) {
    throw std::invalid_argument("periods must be in [1, 100]");
  }
  Table t{{"kind", "lower", "center", "upper"}, {}};
  const double hi = 2.0 * std::numbers::pi * periods;
  for (const Band& b : find_bands(ratio, 0.0, hi)) {
    t.add_row({to_string(b.kind), b.lower, b.center, b.upper});
  }
  return t;
}

inline Table fibonacci_scan_table(const ScanFamily& fam, const GridSpec& grid) {
  Table t{{"omega_T", "invariant", "in_band_1", "in_band_2", "overlap",
           "commutative", "quasi_floquet"},
          {}};
  const auto pts = grid.points();
  for (const ScanRecord& r : band_overlap_scan(fam, pts)) {
    t.add_row({r.omega_t, r.invariant, flag_cell(r.in_band_1),
               flag_cell(r.in_band_2), flag_cell(r.overlap),
               flag_cell(r.commutative), flag_cell(r.quasi_floquet)});
  }
  return t;
}

inline constexpr std::size_t kMaxOrbitSteps = 1'000'000;

inline RunResult orbit_table(const FibonacciKickedParams& p,
                             const PhasePoint& start, std::size_t steps) {
  if (steps > kMaxOrbitSteps) {
    throw std::invalid_argument("orbit length must be <= 1e6");
  }
  const PhaseOrbit orbit = phase_orbit(p, start, steps);
  RunResult out{{{"step", "letter", "x", "p", "Q"}, {}}, orbit.diverged_at};
  for (const OrbitStep& s : orbit.steps) {
    out.table.add_row({static_cast<long long>(s.step),
                       static_cast<long long>(s.letter), s.point.x, s.point.p,
                       optional_cell(s.q)});
  }
  return out;
}

/// Word lengths grow as Fibonacci numbers; 30 already gives 1.3e6 letters.
inline constexpr unsigned kMaxWordIndex = 30;

inline Table words_table(unsigned n) {
  if (n > kMaxWordIndex) throw std::invalid_argument("n must be <= 30");
  Table t{{"n", "word_text", "length"}, {}};
  for (unsigned k = 0; k <= n; ++k) {
    const Word w = fibonacci_word(k);
    t.add_row({static_cast<long long>(k), w.to_string(),
               static_cast<long long>(w.length())});
  }
  return t;
}

inline constexpr std::size_t kMaxTraceSteps = 10'000'000;

inline RunResult trace_rec_table(const TraceTriple& start, std::size_t steps) {
  if (steps > kMaxTraceSteps) {
    throw std::invalid_argument("trace recursion length must be <= 1e7");
  }
  const TraceOrbit o = orbit(start, steps);
  RunResult out{{{"step", "x", "y", "z", "invariant"}, {}}, o.escaped_at};
  for (std::size_t k = 0; k < o.states.size(); ++k) {
    const TraceTriple& s = o.states[k];
    out.table.add_row(
        {static_cast<long long>(k), s.x, s.y, s.z, conserved_cubic(s)});
  }
  return out;
}

}  // namespace qf
