// Floquet analysis of the periodically kicked oscillator.
//
// One period is a positive delta kick of strength u followed by free
// oscillation at frequency w for time T. In transfer-matrix form
//
//   M = [[cos wT, sin wT / w], [-w sin wT, cos wT]] * [[1, 0], [u, 1]]
//
// and with beta = wT, r = u / (2 w) the half-trace is
//
//   h(beta) = cos beta + r sin beta = sqrt(1 + r^2) cos(beta - atan r).
//
// |h| <= 1 is a Floquet band (stable), |h| > 1 a gap (exponential growth).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qf/symplectic.hpp"

namespace qf {

struct KickedSystemParams {
  double mass = 1.0;
  double omega = 1.0;
  double kick = 0.0;  // u; the phase-space kick is u' = m u
  double period = 1.0;

  /// u / (2 w), the single shape parameter of the half-trace curve.
  double ratio() const { return kick / (2.0 * omega); }
  double beta() const { return omega * period; }
};

namespace detail {

inline void validate(const KickedSystemParams& p) {
  require_positive(p.mass, "mass");
  require_positive(p.omega, "omega");
  require_positive(p.period, "period");
  if (!(p.kick >= 0.0)) throw std::domain_error("kick must be non-negative");
}

/// Bisection on a bracket with f(lo), f(hi) of opposite sign. Runs until the
/// midpoint no longer moves or 200 halvings, whichever comes first.
template <class F>
double bisect(F&& f, double lo, double hi) {
  const bool lo_negative = f(lo) < 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// One-period transfer matrix: oscillation block times positive kick block.
inline SymplecticMatrix kicked_monodromy(const KickedSystemParams& p) {
  detail::validate(p);
  const SymplecticMatrix g =
      oscillator_propagator({p.mass, p.omega}, p.period) *
      delta_kick({p.mass * p.kick, KickSign::positive});
  return to_transfer_matrix(g, p.mass);
}

inline double kicked_half_trace(double ratio, double beta) {
  return std::cos(beta) + ratio * std::sin(beta);
}

/// Band membership with the parabolic tolerance on the boundary.
inline bool in_band(double ratio, double beta) {
  return std::abs(kicked_half_trace(ratio, beta)) <= 1.0 + kClassTolerance;
}

struct HalfTracePoint {
  double beta = 0.0;
  double half_trace = 0.0;
};

inline std::vector<HalfTracePoint> half_trace_curve(
    const KickedSystemParams& p, std::span<const double> betas) {
  detail::validate(p);
  std::vector<HalfTracePoint> out;
  out.reserve(betas.size());
  for (double b : betas) out.push_back({b, kicked_half_trace(p.ratio(), b)});
  return out;
}

enum class SpectrumKind { band, gap };

inline std::string to_string(SpectrumKind k) {
  return k == SpectrumKind::band ? "band" : "gap";
}

/// A band or gap interval in beta = wT.
struct Band {
  SpectrumKind kind = SpectrumKind::band;
  double lower = 0.0;
  double center = 0.0;
  double upper = 0.0;
  bool degenerate = false;  // width below kDegenerateWidth

  double width() const { return upper - lower; }
};

inline constexpr double kDegenerateWidth = 1e-8;
inline constexpr double kMaxBandRange = 100.0 * 2.0 * std::numbers::pi;

/// Partitions [lo, hi] into alternating bands and gaps of h(beta).
///
/// h is monotone between consecutive extrema atan(r) + k pi, so each such
/// segment brackets at most one root of h - 1 and one of h + 1; those roots
/// are the edges, refined by bisection. When sqrt(1 + r^2) rounds to 1 the
/// curve only touches +-1 at its extrema and every touching point is emitted
/// as a zero-width gap so the list keeps alternating.
///
/// Band centers are the zeros of h inside the band. Gap centers are the
/// extrema of h inside the gap. Intervals cut by the range ends fall back to
/// the midpoint when no such point lies inside.
inline std::vector<Band> find_bands(double ratio, double lo, double hi) {
  using std::numbers::pi;
  if (!(lo < hi)) throw std::invalid_argument("find_bands: empty beta range");
  if (hi - lo > kMaxBandRange) {
    throw std::invalid_argument("find_bands: beta range wider than 100 periods");
  }
  const auto h = [ratio](double b) { return kicked_half_trace(ratio, b); };
  const double peak = std::atan(ratio);
  const double amplitude = std::hypot(1.0, ratio);
  const bool touching = amplitude - 1.0 <= 1e-15;
  constexpr double merge = 1e-12;

  struct Edge {
    double beta;
    bool tangent;
  };
  std::vector<Edge> edges;
  const auto k_first = static_cast<long long>(std::floor((lo - peak) / pi)) - 1;
  const auto k_last = static_cast<long long>(std::ceil((hi - peak) / pi)) + 1;
  for (long long k = k_first; k <= k_last; ++k) {
    const double s0 = peak + static_cast<double>(k) * pi;
    if (touching) {
      edges.push_back({s0, true});
      continue;
    }
    const double s1 = s0 + pi;
    // h(s0) = +-amplitude (+ for even k), h(s1) the opposite.
    for (double target : {1.0, -1.0}) {
      edges.push_back(
          {detail::bisect([&](double b) { return h(b) - target; }, s0, s1),
           false});
    }
  }

  std::vector<Edge> points{{lo, false}};
  std::sort(edges.begin(), edges.end(),
            [](const Edge& l, const Edge& r) { return l.beta < r.beta; });
  for (const Edge& e : edges) {
    if (e.beta < lo - merge || e.beta > hi + merge) continue;
    if (std::abs(e.beta - points.back().beta) <= merge) {
      points.back().tangent = points.back().tangent || e.tangent;
    } else {
      points.push_back({std::min(e.beta, hi), e.tangent});
    }
  }
  if (hi - points.back().beta > merge) {
    points.push_back({hi, false});
  } else {
    points.back().beta = hi;
  }

  const auto gap_center = [&](double a, double b) {
    const double k = std::ceil((a - peak) / pi);
    const double extremum = peak + k * pi;
    return extremum <= b ? extremum : 0.5 * (a + b);
  };
  const auto band_center = [&](double a, double b) {
    if (h(a) * h(b) < 0.0) return detail::bisect(h, a, b);
    return 0.5 * (a + b);
  };

  std::vector<Band> out;
  const auto emit = [&out](SpectrumKind kind, double a, double c, double b) {
    const bool degenerate = b - a < kDegenerateWidth;
    if (!out.empty() && out.back().kind == kind && !degenerate &&
        !out.back().degenerate) {
      out.back().upper = b;  // adjacent pieces of one interval
      return;
    }
    out.push_back({kind, a, c, b, degenerate});
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double a = points[i].beta;
    if (points[i].tangent) emit(SpectrumKind::gap, a, a, a);
    if (i + 1 == points.size()) break;
    const double b = points[i + 1].beta;
    if (std::abs(h(0.5 * (a + b))) <= 1.0) {
      emit(SpectrumKind::band, a, band_center(a, b), b);
    } else {
      emit(SpectrumKind::gap, a, gap_center(a, b), b);
    }
  }
  return out;
}

inline std::vector<Band> find_bands(const KickedSystemParams& p, double lo,
                                    double hi) {
  detail::validate(p);
  return find_bands(p.ratio(), lo, hi);
}

enum class PropagatorKind { elliptic, hyperbolic, parabolic };

inline std::string to_string(PropagatorKind k) {
  switch (k) {
    case PropagatorKind::elliptic: return "elliptic";
    case PropagatorKind::hyperbolic: return "hyperbolic";
    case PropagatorKind::parabolic: return "parabolic";
  }
  return "unknown";
}

/// Parameters of the effective one-period propagator.
///
/// Elliptic: rate is the Floquet index Omega in [0, 2 pi / T), eigenvalues
/// exp(+-i Omega T), phase_factor exp(-i Omega T / 2).
/// Hyperbolic: rate is kappa > 0 with cosh(kappa T) = |h|; phase_factor 1.
/// Parabolic: rate 0, phase_factor 1.
struct EffectivePropagator {
  PropagatorKind kind = PropagatorKind::elliptic;
  double rate = 0.0;
  double period = 1.0;
  std::complex<double> phase_factor{1.0, 0.0};
  double half_trace = 1.0;
};

/// Extracts the Floquet index (or dilatation rate) of a monodromy matrix.
///
/// cos(Omega T) = h fixes Omega up to sign. The sign of sin(Omega T) is read
/// from -c, the lower-left entry (a rotation by +wt has c = -m w sin wt);
/// when c vanishes, from b. The identity maps to Omega = 0 and -identity to
/// Omega T = pi, both elliptic.
inline EffectivePropagator floquet_index(const SymplecticMatrix& g,
                                         double period) {
  using std::numbers::pi;
  detail::require_positive(period, "period");
  const double h = g.half_trace();
  EffectivePropagator eff;
  eff.period = period;
  eff.half_trace = h;

  const auto set_elliptic = [&](double angle) {
    eff.kind = PropagatorKind::elliptic;
    eff.rate = angle / period;
    eff.phase_factor = std::polar(1.0, -0.5 * angle);
  };

  if (is_identity(g)) {
    set_elliptic(0.0);
  } else if (max_abs_diff(g, {-1.0, 0.0, 0.0, -1.0}) <= kClassTolerance) {
    set_elliptic(pi);
  } else if (std::abs(h) < 1.0 - kClassTolerance) {
    double angle = std::acos(h);
    const double sine_sign = g.c != 0.0 ? -g.c : g.b;
    if (sine_sign < 0.0) angle = 2.0 * pi - angle;
    set_elliptic(angle);
  } else if (std::abs(h) > 1.0 + kClassTolerance) {
    eff.kind = PropagatorKind::hyperbolic;
    eff.rate = std::acosh(std::abs(h)) / period;
  } else {
    eff.kind = PropagatorKind::parabolic;
  }
  return eff;
}

/// N Omega = winding * 2 pi / T + reduced_index with reduced_index in
/// [0, 2 pi / T).
struct FloquetPhase {
  double reduced_index = 0.0;
  std::uint64_t winding = 0;
};

inline FloquetPhase floquet_state_phase(std::uint64_t n,
                                        const EffectivePropagator& eff) {
  using std::numbers::pi;
  if (eff.kind != PropagatorKind::elliptic) {
    throw std::domain_error(
        "no Floquet quantum numbers: propagator is not elliptic");
  }
  const double zone = 2.0 * pi / eff.period;
  const double turns = static_cast<double>(n) * eff.rate / zone;
  double whole = std::floor(turns);
  double frac = turns - whole;
  if (frac >= 1.0) {
    frac -= 1.0;
    whole += 1.0;
  }
  return {frac * zone, static_cast<std::uint64_t>(whole)};
}

/// Character of the discrete time-translation irrep: D(nT) = exp(i n Omega T).
inline std::complex<double> irrep_character(double omega, double period,
                                            long long n) {
  return std::polar(1.0, static_cast<double>(n) * omega * period);
}

struct IrrepCheck {
  bool homomorphism = false;
  bool completeness = false;
  /// (1 / |BZ|) * integral over the zone of conj(D(nT)) D(mT).
  std::complex<double> completeness_integral;
};

/// Checks D(nT) D(mT) = D((n + m) T) at `omega` and the zone average
/// (1/|BZ|) int conj(D(nT)) D(mT) dOmega = delta_nm by the periodic
/// trapezoid rule with `panels` nodes.
inline IrrepCheck irrep_check(double omega, double period, long long n,
                              long long m, std::size_t panels = 10000) {
  using std::numbers::pi;
  detail::require_positive(period, "period");
  const double zone = 2.0 * pi / period;
  if (!(omega >= 0.0 && omega < zone)) {
    throw std::domain_error("Floquet index outside the Brillouin zone");
  }
  if (panels == 0) throw std::invalid_argument("panels must be positive");

  IrrepCheck out;
  const auto product = irrep_character(omega, period, n) *
                       irrep_character(omega, period, m);
  out.homomorphism =
      std::abs(product - irrep_character(omega, period, n + m)) <= 1e-12;

  std::complex<double> sum{0.0, 0.0};
  const double h = zone / static_cast<double>(panels);
  for (std::size_t j = 0; j < panels; ++j) {
    const double w = h * static_cast<double>(j);
    sum += std::conj(irrep_character(w, period, n)) *
           irrep_character(w, period, m);
  }
  out.completeness_integral = sum / static_cast<double>(panels);
  const double expected = n == m ? 1.0 : 0.0;
  out.completeness = std::abs(out.completeness_integral - expected) <= 1e-6;
  return out;
}

}  // namespace qf
