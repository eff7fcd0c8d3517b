// The Fibonacci-kicked oscillator.
//
// Two interval propagators, each a positive kick u followed by oscillation
// for T1 or T2 (transfer-matrix form):
//
//   lambda_i = [[cos wTi, sin wTi / w], [-w sin wTi, cos wTi]] [[1, 0], [u, 1]]
//
// are sequenced by the letters of the Fibonacci word (y1 -> lambda_1,
// y2 -> lambda_2). The half-trace of K = (l1 l2)(l2 l1)^-1 is conserved by
// the Fibonacci automorphism; K = identity exactly when w (T1 - T2) is a
// multiple of pi.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qf/floquet.hpp"
#include "qf/free_group.hpp"
#include "qf/symplectic.hpp"

namespace qf {

inline constexpr double kGoldenRatio = std::numbers::phi;

/// Phase-space points beyond this magnitude end an orbit.
inline constexpr double kOrbitDivergence = 1e50;

struct FibonacciKickedParams {
  double mass = 1.0;
  double omega = 1.0;
  double kick = 0.0;
  double t1 = 1.0;
  double t2 = kGoldenRatio;

  /// T1 = t, T2 = ratio * t (golden ratio by default).
  static FibonacciKickedParams fibonacci(double mass, double omega, double kick,
                                         double t,
                                         double ratio = kGoldenRatio) {
    return {mass, omega, kick, t, ratio * t};
  }
};

struct IntervalPropagators {
  SymplecticMatrix first;
  SymplecticMatrix second;
};

namespace detail {

inline void validate(const FibonacciKickedParams& p) {
  require_positive(p.mass, "mass");
  require_positive(p.omega, "omega");
  if (!(p.kick >= 0.0)) throw std::domain_error("kick must be non-negative");
  if (!(p.t1 >= 0.0 && p.t2 >= 0.0)) {
    throw std::domain_error("interval durations must be non-negative");
  }
}

inline SymplecticMatrix kicked_interval(const FibonacciKickedParams& p,
                                        double t) {
  const SymplecticMatrix g = oscillator_propagator({p.mass, p.omega}, t) *
                             delta_kick({p.mass * p.kick, KickSign::positive});
  return to_transfer_matrix(g, p.mass);
}

}  // namespace detail

/// (lambda_1, lambda_2) in transfer-matrix form.
inline IntervalPropagators interval_propagators(const FibonacciKickedParams& p) {
  detail::validate(p);
  return {detail::kicked_interval(p, p.t1), detail::kicked_interval(p, p.t2)};
}

/// (l1 l2)(l2 l1)^-1 by exact products.
inline SymplecticMatrix commutator_matrix(const SymplecticMatrix& l1,
                                          const SymplecticMatrix& l2) {
  return (l1 * l2) * (l2 * l1).inverse();
}

/// Half-trace of the commutator of the two interval propagators.
inline double nielsen_invariant(const FibonacciKickedParams& p) {
  const auto [l1, l2] = interval_propagators(p);
  return commutator_matrix(l1, l2).half_trace();
}

inline constexpr double kCommutativityTolerance = 1e-7;

struct CommutativityReport {
  double invariant_value = 1.0;
  bool is_commutative = true;
  double commutator_deviation = 0.0;  // max-norm of K - identity
};

/// An invariant of 1 is necessary but not sufficient for commuting
/// propagators, so the matrix deviation is checked as well.
inline CommutativityReport commutativity(const FibonacciKickedParams& p) {
  const auto [l1, l2] = interval_propagators(p);
  const SymplecticMatrix k = commutator_matrix(l1, l2);
  CommutativityReport r;
  r.invariant_value = k.half_trace();
  r.commutator_deviation = max_abs_diff(k, SymplecticMatrix::identity());
  r.is_commutative =
      std::abs(r.invariant_value - 1.0) <= kCommutativityTolerance &&
      r.commutator_deviation <= kCommutativityTolerance;
  return r;
}

/// Values of wT in [lo, hi] where w (ratio - 1) T is a multiple of pi, i.e.
/// wT = m pi / |ratio - 1| (m pi tau for the golden ratio). m = 0 is skipped
/// unless `include_zero`.
inline std::vector<double> commutative_points(double ratio, double lo,
                                              double hi,
                                              bool include_zero = false) {
  using std::numbers::pi;
  if (!(lo <= hi)) throw std::invalid_argument("commutative_points: lo > hi");
  if (ratio == 1.0) {
    throw std::invalid_argument(
        "commutative_points: equal intervals commute for every wT");
  }
  const double spacing = pi / std::abs(ratio - 1.0);
  std::vector<double> out;
  const auto m_first = static_cast<long long>(std::ceil(lo / spacing));
  const auto m_last = static_cast<long long>(std::floor(hi / spacing));
  for (long long m = m_first; m <= m_last; ++m) {
    if (m == 0 && !include_zero) continue;
    out.push_back(static_cast<double>(m) * spacing);
  }
  return out;
}

/// Parameter family scanned over wT: T1 = wT / w, T2 = t_ratio * T1.
struct ScanFamily {
  double mass = 1.0;
  double omega = 1.0;
  double kick = 2.0;
  double t_ratio = kGoldenRatio;
};

struct ScanRecord {
  double omega_t = 0.0;
  double invariant = 1.0;
  bool in_band_1 = false;
  bool in_band_2 = false;
  bool overlap = false;
  bool commutative = false;
  bool quasi_floquet = false;
};

/// Superimposes the band structures at wT and t_ratio * wT and marks the
/// commutative points. Each commutative point flags the single grid node
/// whose cell [x_i - left/2, x_i + right/2) contains it.
inline std::vector<ScanRecord> band_overlap_scan(const ScanFamily& fam,
                                                 std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("band_overlap_scan: grid must be ascending");
  }
  detail::require_positive(fam.omega, "omega");
  const double ratio = fam.kick / (2.0 * fam.omega);

  std::vector<ScanRecord> out;
  out.reserve(grid.size());
  for (double wt : grid) {
    ScanRecord r;
    r.omega_t = wt;
    const auto p = FibonacciKickedParams::fibonacci(
        fam.mass, fam.omega, fam.kick, wt / fam.omega, fam.t_ratio);
    r.invariant = nielsen_invariant(p);
    r.in_band_1 = in_band(ratio, wt);
    r.in_band_2 = in_band(ratio, fam.t_ratio * wt);
    r.overlap = r.in_band_1 && r.in_band_2;
    out.push_back(r);
  }
  if (grid.empty() || fam.t_ratio == 1.0) return out;

  const std::size_t n = grid.size();
  const auto half_left = [&](std::size_t i) {
    if (n == 1) return 0.0;
    return 0.5 * (i == 0 ? grid[1] - grid[0] : grid[i] - grid[i - 1]);
  };
  const auto half_right = [&](std::size_t i) {
    if (n == 1) return 0.0;
    return 0.5 * (i + 1 == n ? grid[i] - grid[i - 1] : grid[i + 1] - grid[i]);
  };
  const double lo = grid.front() - half_left(0);
  const double hi = grid.back() + half_right(n - 1);
  for (double point : commutative_points(fam.t_ratio, lo, hi)) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), point);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == n || (i > 0 && point - grid[i - 1] < grid[i] - point)) --i;
    if (point >= grid[i] - half_left(i) &&
        (point < grid[i] + half_right(i) || n == 1)) {
      out[i].commutative = true;
    }
  }
  for (auto& r : out) r.quasi_floquet = r.overlap && r.commutative;
  return out;
}

/// Positive quadratic form Q(x, p) = xx x^2 + 2 xp x p + pp p^2.
struct QuadraticForm {
  double xx = 1.0;
  double xp = 0.0;
  double pp = 1.0;

  double operator()(const PhasePoint& v) const {
    return xx * v.x * v.x + 2.0 * xp * v.x * v.p + pp * v.p * v.p;
  }
};

/// Invariant ellipse of an elliptic matrix g, or nullopt otherwise.
///
/// With g v = mu v (|mu| = 1) and J = [[0, 1], [-1, 0]], the row vector v^T J
/// is a left eigenvector for conj(mu), so Q(x) = |v^T J x|^2 satisfies
/// Q(g x) = Q(x). v is normalized to unit length.
inline std::optional<QuadraticForm> invariant_form(const SymplecticMatrix& g) {
  if (classify(g).tag != MatrixClass::elliptic) return std::nullopt;
  const double h = g.half_trace();
  const std::complex<double> mu{h, std::sqrt(std::max(0.0, 1.0 - h * h))};
  // (a - mu) v1 + b v2 = 0  or  c v1 + (d - mu) v2 = 0
  std::complex<double> v1{g.b, 0.0};
  std::complex<double> v2 = mu - g.a;
  const std::complex<double> w1 = mu - g.d;
  const std::complex<double> w2{g.c, 0.0};
  if (std::norm(w1) + std::norm(w2) > std::norm(v1) + std::norm(v2)) {
    v1 = w1;
    v2 = w2;
  }
  const double scale = std::sqrt(std::norm(v1) + std::norm(v2));
  v1 /= scale;
  v2 /= scale;
  // v^T J x = -v2 x + v1 p
  return QuadraticForm{std::norm(v2), -std::real(v2 * std::conj(v1)),
                       std::norm(v1)};
}

struct OrbitStep {
  std::size_t step = 0;
  int letter = 0;  // 1 or 2; 0 for the starting point
  PhasePoint point;
  std::optional<double> q;  // present when lambda_1 is elliptic
};

struct PhaseOrbit {
  std::vector<OrbitStep> steps;
  std::optional<QuadraticForm> form;
  /// Product matrix after the last emitted step.
  SymplecticMatrix cumulative;
  /// First step whose point exceeded kOrbitDivergence (not emitted).
  std::optional<std::size_t> diverged_at;
};

/// Shortest Fibonacci word with at least n letters.
inline Word fibonacci_word_covering(std::size_t n) {
  unsigned k = 0;
  Word w = fibonacci_word(0);
  while (w.length() < n) w = fibonacci_word(++k);
  return w;
}

/// Phase-space orbit along the Fibonacci sequence of interval propagators.
///
/// The propagators are the phase-space forms of (lambda_1, lambda_2). Step j
/// emits C_j (x0, p0) where C_j = evaluate(first j letters of the Fibonacci
/// word), built incrementally as C_j = C_(j-1) * g(letter j). Q is the
/// invariant form of the first propagator.
inline PhaseOrbit phase_orbit(const FibonacciKickedParams& p,
                              const PhasePoint& start, std::size_t n) {
  const auto [l1, l2] = interval_propagators(p);
  const SymplecticMatrix g1 = from_transfer_matrix(l1, p.mass);
  const SymplecticMatrix g2 = from_transfer_matrix(l2, p.mass);

  PhaseOrbit out;
  out.form = invariant_form(g1);
  const auto q_of = [&out](const PhasePoint& v) -> std::optional<double> {
    if (!out.form) return std::nullopt;
    return (*out.form)(v);
  };
  out.steps.reserve(n + 1);
  out.steps.push_back({0, 0, start, q_of(start)});

  const Word word = fibonacci_word_covering(n);
  SymplecticMatrix acc = SymplecticMatrix::identity();
  for (std::size_t j = 1; j <= n; ++j) {
    const Letter& l = word[j - 1];
    const SymplecticMatrix next = acc * (l.generator == Generator::y1 ? g1 : g2);
    const PhasePoint v = next * start;
    if (!(std::abs(v.x) <= kOrbitDivergence &&
          std::abs(v.p) <= kOrbitDivergence)) {
      out.diverged_at = j;
      break;
    }
    acc = next;
    out.steps.push_back(
        {j, l.generator == Generator::y1 ? 1 : 2, v, q_of(v)});
  }
  out.cumulative = acc;
  return out;
}

/// Action of a hyperbolic period on wavefunctions:
/// psi(x) -> amplitude * psi(scale * x), scale = exp(-kappa T),
/// amplitude = exp(-kappa T / 2). Iterating it concentrates any state
/// toward a delta distribution up to normalization.
struct Dilatation {
  double scale = 1.0;
  double amplitude = 1.0;
};

struct QuantumDescriptor {
  EffectivePropagator propagator;
  std::optional<Dilatation> dilatation;  // hyperbolic periods only
};

/// Effective quantum propagator over one full period (or full word). Valid
/// only at the period boundary, never at intermediate times.
inline QuantumDescriptor effective_quantum_descriptor(
    const SymplecticMatrix& g_period, double period) {
  QuantumDescriptor out{floquet_index(g_period, period), std::nullopt};
  if (out.propagator.kind == PropagatorKind::hyperbolic) {
    const double kt = out.propagator.rate * period;
    out.dilatation = Dilatation{std::exp(-kt), std::exp(-0.5 * kt)};
  }
  return out;
}

}  // namespace qf
