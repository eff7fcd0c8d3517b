// Shared generators and comparison helpers for the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qf/free_group.hpp"
#include "qf/symplectic.hpp"

namespace qf::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// |a - b| <= tol * max(|a|, |b|, 1).
inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

/// Unit-mass rotation by `angle` composed with a transfer-form kick `u`.
inline SymplecticMatrix kicked_rotation(double angle, double u) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return SymplecticMatrix{c, s, -s, c} * SymplecticMatrix{1.0, 0.0, u, 1.0};
}

/// Shear/scale element with entries of order `spread`.
inline SymplecticMatrix random_symplectic(Rng& rng, double spread = 1.0) {
  const double s = std::exp(uniform(rng, -spread, spread));
  const double shear = uniform(rng, -spread, spread);
  const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return SymplecticMatrix{s, 0.0, 0.0, 1.0 / s} *
         SymplecticMatrix{1.0, shear, 0.0, 1.0} * kicked_rotation(angle, 0.0);
}

/// Elliptic element q R(angle) q^-1 with a random conjugator q.
inline SymplecticMatrix random_elliptic(Rng& rng, double spread = 0.5) {
  const SymplecticMatrix q = random_symplectic(rng, spread);
  const double angle = uniform(rng, 0.1, 2.0 * std::numbers::pi - 0.1);
  return q * kicked_rotation(angle, 0.0) * q.inverse();
}

/// Near-commuting elliptic pair (rotation times a small kick) under a common
/// conjugation. Word evaluations of such pairs stay bounded, which keeps
/// commutator traces of long words accurate in double precision.
inline std::pair<SymplecticMatrix, SymplecticMatrix> bounded_pair(
    Rng& rng, double max_kick = 0.05) {
  const SymplecticMatrix q = random_symplectic(rng, 0.3);
  const auto one = [&] {
    return q *
           kicked_rotation(uniform(rng, 0.0, 2.0 * std::numbers::pi),
                           uniform(rng, -max_kick, max_kick)) *
           q.inverse();
  };
  const SymplecticMatrix g1 = one();
  return {g1, one()};
}

inline std::vector<Letter> random_letters(Rng& rng, std::size_t n) {
  std::vector<Letter> out(n);
  std::uniform_int_distribution<int> pick(0, 3);
  for (auto& l : out) {
    const int k = pick(rng);
    l = Letter{k < 2 ? Generator::y1 : Generator::y2, (k % 2) == 1};
  }
  return out;
}

inline Word random_word(Rng& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  return Word::reduce(random_letters(rng, len(rng)));
}

/// Independent Fibonacci numbers 1, 1, 2, 3, ... indexed from 0.
inline std::vector<std::uint64_t> fibonacci_numbers(std::size_t count) {
  std::vector<std::uint64_t> f;
  for (std::size_t i = 0; i < count; ++i) {
    f.push_back(i < 2 ? 1 : f[i - 1] + f[i - 2]);
  }
  return f;
}

}  // namespace qf::testing
