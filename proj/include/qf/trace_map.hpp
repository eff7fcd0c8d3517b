// Fibonacci trace map on half-traces.
//
// For g3 = g1 g2 the triple (x, y, z) = (tr g1, tr g2, tr g3) / 2 evolves
// under the Fibonacci automorphism as
//
//   (x, y, z) -> (y, z, 2 y z - x)
//
// and conserves the half-trace of the commutator g1 g2 g1^-1 g2^-1,
//
//   I(x, y, z) = 2 (x^2 + y^2 + z^2) - 4 x y z - 1.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qf/symplectic.hpp"

namespace qf {

/// Orbits stop once an entry exceeds this magnitude.
inline constexpr double kTraceEscapeThreshold = 1e100;

struct TraceTriple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double max_abs() const {
    return std::max({std::abs(x), std::abs(y), std::abs(z)});
  }

  friend bool operator==(const TraceTriple&, const TraceTriple&) = default;
};

/// Half-traces of (g1, g2, g1 g2).
inline TraceTriple trace_triple(const SymplecticMatrix& g1,
                                const SymplecticMatrix& g2) {
  return {g1.half_trace(), g2.half_trace(), (g1 * g2).half_trace()};
}

inline constexpr TraceTriple step(const TraceTriple& t) {
  return {t.y, t.z, 2.0 * t.y * t.z - t.x};
}

/// Inverse of `step`.
inline constexpr TraceTriple unstep(const TraceTriple& t) {
  return {2.0 * t.x * t.y - t.z, t.x, t.y};
}

inline constexpr double conserved_cubic(const TraceTriple& t) {
  return 2.0 * (t.x * t.x + t.y * t.y + t.z * t.z) - 4.0 * t.x * t.y * t.z -
         1.0;
}

struct TraceOrbit {
  std::vector<TraceTriple> states;  // states[k] after k steps
  /// First step whose state exceeded kTraceEscapeThreshold (not stored).
  std::optional<std::size_t> escaped_at;
};

inline TraceOrbit orbit(const TraceTriple& start, std::size_t steps) {
  TraceOrbit out;
  out.states.reserve(steps + 1);
  TraceTriple t = start;
  for (std::size_t k = 0; k <= steps; ++k) {
    if (!(t.max_abs() <= kTraceEscapeThreshold)) {
      out.escaped_at = k;
      break;
    }
    out.states.push_back(t);
    t = step(t);
  }
  return out;
}

/// Point-cloud sample of the level set I(x, y, z) = level over an (x, y)
/// grid. For fixed (x, y) the surface is a quadratic in z,
///   2 z^2 - 4 x y z + 2 (x^2 + y^2) - 1 - level = 0,
/// so each grid node contributes zero, one or two exact points.
inline std::vector<TraceTriple> sample_level_set(double level, double lo,
                                                 double hi, std::size_t nodes) {
  std::vector<TraceTriple> out;
  if (nodes < 2 || !(lo < hi)) return out;
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = lo + h * static_cast<double>(i);
    for (std::size_t j = 0; j < nodes; ++j) {
      const double y = lo + h * static_cast<double>(j);
      // z^2 - 2 x y z + c = 0
      const double c = x * x + y * y - 0.5 * (1.0 + level);
      const double disc = x * x * y * y - c;
      if (disc < 0.0) continue;
      const double r = std::sqrt(disc);
      out.push_back({x, y, x * y + r});
      if (r > 0.0) out.push_back({x, y, x * y - r});
    }
  }
  return out;
}

}  // namespace qf
