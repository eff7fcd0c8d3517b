// Symplectic 2x2 propagators for quadratic Hamiltonians.
//
// Phase-space vectors are columns (x, p). A propagator g acts as
// (x, p) -> g * (x, p). When several time intervals are composed, the
// earliest interval is the RIGHTMOST factor: interval 1 followed by
// interval 2 gives g2 * g1.
//
// Sign conventions follow the closed forms used throughout the library:
//
//   oscillator   [[cos wt, sin wt / (m w)], [-m w sin wt, cos wt]]
//   hyperbolic   [[cosh kt, sinh kt / (m k)], [m k sinh kt, cosh kt]]
//   dilatation   diag(exp(kt), exp(-kt))
//   free         [[1, -t], [0, 1]]          (note the minus sign)
//   delta kick   [[1, 0], [-+u', 1]]         (negative / positive kick)
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace qf {

/// Largest |det - 1| accepted for a value claimed to be symplectic.
inline constexpr double kDetTolerance = 1e-9;

/// |half_trace| within this distance of 1 classifies as parabolic.
inline constexpr double kClassTolerance = 1e-9;

/// A point (x, p) of the two-dimensional phase space.
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Real 2x2 matrix [[a, b], [c, d]] with unit determinant.
///
/// Arithmetic (`*`, `inverse`) does not re-check the determinant; products
/// of very long words lose the invariant through rounding alone and callers
/// that need the guarantee go through `multiply`, which checks it.
struct SymplecticMatrix {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  static constexpr SymplecticMatrix identity() { return {}; }

  /// Builds a matrix from its entries, rejecting |det - 1| > kDetTolerance.
  static SymplecticMatrix from_entries(double a, double b, double c, double d) {
    SymplecticMatrix g{a, b, c, d};
    if (!(std::abs(g.det() - 1.0) <= kDetTolerance)) {
      throw std::domain_error("matrix is not symplectic: det = " +
                              std::to_string(g.det()));
    }
    return g;
  }

  constexpr double det() const { return a * d - b * c; }
  constexpr double trace() const { return a + d; }
  constexpr double half_trace() const { return 0.5 * (a + d); }

  /// Inverse of a unit-determinant matrix: [[d, -b], [-c, a]].
  constexpr SymplecticMatrix inverse() const { return {d, -b, -c, a}; }

  constexpr double max_abs_entry() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }

  friend constexpr SymplecticMatrix operator*(const SymplecticMatrix& l,
                                              const SymplecticMatrix& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }

  friend constexpr PhasePoint operator*(const SymplecticMatrix& g,
                                        const PhasePoint& v) {
    return {g.a * v.x + g.b * v.p, g.c * v.x + g.d * v.p};
  }

  friend bool operator==(const SymplecticMatrix&,
                         const SymplecticMatrix&) = default;
};

/// Entrywise max-norm distance.
inline double max_abs_diff(const SymplecticMatrix& l,
                           const SymplecticMatrix& r) {
  return std::max({std::abs(l.a - r.a), std::abs(l.b - r.b),
                   std::abs(l.c - r.c), std::abs(l.d - r.d)});
}

/// Harmonic oscillator H = P^2/(2m) + m w^2 X^2 / 2.
struct OscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
};

/// Repulsive oscillator H = (P^2/m - m k^2 X^2) / 2.
struct HyperbolicParams {
  double mass = 1.0;
  double kappa = 1.0;
};

enum class KickSign { negative, positive };

/// Zero-duration impulse of strength u' (u' = m u in transfer-matrix units).
struct KickStrength {
  double strength = 0.0;
  KickSign sign = KickSign::positive;
};

enum class MatrixClass { elliptic, hyperbolic, parabolic, identity };

struct Classification {
  MatrixClass tag = MatrixClass::identity;
  double half_trace = 1.0;
};

inline std::string to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::elliptic: return "elliptic";
    case MatrixClass::hyperbolic: return "hyperbolic";
    case MatrixClass::parabolic: return "parabolic";
    case MatrixClass::identity: return "identity";
  }
  return "unknown";
}

namespace detail {

inline void require_positive(double value, const char* what) {
  if (!(value > 0.0)) {
    throw std::domain_error(std::string(what) + " must be positive");
  }
}

inline void require_symplectic(const SymplecticMatrix& g, const char* where) {
  if (!(std::abs(g.det() - 1.0) <= kDetTolerance)) {
    throw std::runtime_error(std::string(where) +
                             ": determinant drifted from 1 (det = " +
                             std::to_string(g.det()) + ")");
  }
}

}  // namespace detail

inline SymplecticMatrix oscillator_propagator(const OscillatorParams& p,
                                              double t) {
  detail::require_positive(p.mass, "mass");
  detail::require_positive(p.omega, "omega");
  const double mw = p.mass * p.omega;
  const double c = std::cos(p.omega * t);
  const double s = std::sin(p.omega * t);
  return {c, s / mw, -mw * s, c};
}

inline SymplecticMatrix hyperbolic_propagator(const HyperbolicParams& p,
                                              double t) {
  detail::require_positive(p.mass, "mass");
  detail::require_positive(p.kappa, "kappa");
  const double mk = p.mass * p.kappa;
  const double ch = std::cosh(p.kappa * t);
  const double sh = std::sinh(p.kappa * t);
  return {ch, sh / mk, mk * sh, ch};
}

inline SymplecticMatrix dilatation_propagator(double kappa, double t) {
  return {std::exp(kappa * t), 0.0, 0.0, std::exp(-kappa * t)};
}

/// Free particle. The upper-right entry is -t, not +t.
inline SymplecticMatrix free_propagator(double mass, double t) {
  detail::require_positive(mass, "mass");
  return {1.0, -t, 0.0, 1.0};
}

inline SymplecticMatrix delta_kick(const KickStrength& k) {
  if (!(k.strength >= 0.0)) {
    throw std::domain_error("kick strength must be non-negative");
  }
  const double lower = k.sign == KickSign::negative ? -k.strength : k.strength;
  return {1.0, 0.0, lower, 1.0};
}

inline bool is_identity(const SymplecticMatrix& g,
                        double tol = kClassTolerance) {
  return max_abs_diff(g, SymplecticMatrix::identity()) <= tol;
}

inline Classification classify(const SymplecticMatrix& g) {
  const double h = g.half_trace();
  if (is_identity(g)) return {MatrixClass::identity, h};
  const double excess = std::abs(h) - 1.0;
  if (std::abs(excess) <= kClassTolerance) return {MatrixClass::parabolic, h};
  return {excess < 0.0 ? MatrixClass::elliptic : MatrixClass::hyperbolic, h};
}

/// Eigenvalues from the characteristic polynomial l^2 - tr l + det.
inline std::pair<std::complex<double>, std::complex<double>> eigenvalues(
    const SymplecticMatrix& g) {
  const double h = g.half_trace();
  const double disc = h * h - g.det();
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    // Larger magnitude first; the partner comes from the product det.
    const double big = h >= 0.0 ? h + r : h - r;
    const double small = big != 0.0 ? g.det() / big : 0.0;
    return {big, small};
  }
  const double im = std::sqrt(-disc);
  return {{h, im}, {h, -im}};
}

/// Position/momentum propagator -> position/velocity transfer matrix:
/// M = diag(sqrt m, 1/sqrt m) g diag(1/sqrt m, sqrt m).
inline SymplecticMatrix to_transfer_matrix(const SymplecticMatrix& g,
                                           double mass) {
  detail::require_positive(mass, "mass");
  return {g.a, g.b * mass, g.c / mass, g.d};
}

/// Inverse of `to_transfer_matrix`.
inline SymplecticMatrix from_transfer_matrix(const SymplecticMatrix& m_t,
                                             double mass) {
  detail::require_positive(mass, "mass");
  return {m_t.a, m_t.b / mass, m_t.c * mass, m_t.d};
}

/// Energies of the two fundamental column solutions.
struct FundamentalEnergies {
  double first = 0.0;
  double second = 0.0;
};

/// Oscillator started from h(0) = diag(1, m w): both columns carry m w^2 / 2.
inline FundamentalEnergies fundamental_energies(const OscillatorParams& p) {
  detail::require_positive(p.mass, "mass");
  detail::require_positive(p.omega, "omega");
  const double e = 0.5 * p.mass * p.omega * p.omega;
  return {e, e};
}

/// Repulsive oscillator started from h(0) = diag(1, m k): the position column
/// sits at -m k^2 / 2, the momentum column at +m k^2 / 2.
inline FundamentalEnergies fundamental_energies(const HyperbolicParams& p) {
  detail::require_positive(p.mass, "mass");
  detail::require_positive(p.kappa, "kappa");
  const double e = 0.5 * p.mass * p.kappa * p.kappa;
  return {-e, e};
}

/// Ordered product gs[0] * gs[1] * ... * gs[n-1].
///
/// With column vectors the last factor acts first, so a chronological list of
/// interval propagators must be passed latest-first. Throws std::domain_error
/// on an empty list and std::runtime_error if the product drifts off the
/// group (|det - 1| > kDetTolerance); products are never re-normalized.
inline SymplecticMatrix multiply(std::span<const SymplecticMatrix> gs) {
  if (gs.empty()) throw std::domain_error("multiply: empty factor list");
  SymplecticMatrix acc = gs.front();
  for (const auto& g : gs.subspan(1)) acc = acc * g;
  detail::require_symplectic(acc, "multiply");
  return acc;
}

inline SymplecticMatrix multiply(std::initializer_list<SymplecticMatrix> gs) {
  return multiply(std::span<const SymplecticMatrix>(gs.begin(), gs.size()));
}

}  // namespace qf
