// Copyright 2026 The loglab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * Exponential sums and the arc decomposition.
 *
 *   S(a)     = sum_{p <= X} ln p e(a [p ln p])
 *   Theta(a) = sum_{m <= N} w(m) e(a m),   w(m) = 1 / (1 + ln y(m))
 *
 * The ternary count is the constant term of S^3 e(-N a). S^3 is a
 * trigonometric polynomial of degree 3M (M = largest frequency), so the
 * average over any uniform grid of Q > 3M points reproduces it exactly. The
 * grid is split at ||a|| <= tau into the major part gamma1 and the rest gamma2.
 *
 * The remaining functions measure, numerically, the quantities that the
 * asymptotic argument bounds: the major-arc gap |S - Theta|, the Fourier
 * expansion of e(-x{y}), S1 and S2 on the minor arcs, van der Corput's second
 * derivative estimate and the sum-versus-integral comparison.
 */

#ifndef LOGLAB_EXPSUMS_HPP
#define LOGLAB_EXPSUMS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "loglab/error.hpp"
#include "loglab/numeric.hpp"
#include "loglab/primes.hpp"
#include "loglab/sequences.hpp"
#include "loglab/transform.hpp"

namespace loglab {

inline constexpr double kTauExponent = -23.0 / 25.0;
inline constexpr double kHExponent = 1.0 / 25.0;

inline double arc_tau(double X) { return std::pow(X, kTauExponent); }
inline double arc_H(double X) { return std::pow(X, kHExponent); }

struct ArcPartition {
  double X = 0.0;
  double tau = 0.0;
  double H = 0.0;
  std::uint64_t Q = 0;

  // Boundary points (||a|| == tau) belong to the major arc.
  [[nodiscard]] bool is_major(std::uint64_t j) const {
    const std::uint64_t d = std::min(j % Q, Q - j % Q);
    return static_cast<double>(d) <= tau * static_cast<double>(Q);
  }
};

// Smallest power of two Q with Q >= 3 * maxfreq + 1.
inline std::uint64_t circle_grid_size(std::int64_t maxfreq) {
  if (maxfreq < 0) throw domain_error("circle_grid_size: negative maxfreq");
  return std::bit_ceil(static_cast<std::uint64_t>(3 * maxfreq + 1));
}

// Partition for scale X over a grid large enough for frequencies up to maxfreq.
inline ArcPartition make_partition(double X, std::int64_t maxfreq) {
  if (!(X >= 2.0)) throw domain_error("make_partition: X must be >= 2");
  return {X, arc_tau(X), arc_H(X), circle_grid_size(maxfreq)};
}

struct SpectrumSample {
  double alpha = 0.0;
  complex svalue;
  complex thetavalue;
};

inline complex s_alpha(double alpha, const FlooredImage& image) {
  compensated_complex_sum acc;
  for (const auto& e : image.entries()) acc.add(e.w * unit_exp_times(alpha, static_cast<double>(e.f)));
  return acc.value();
}

// Theta(alpha) over m <= nmax (defaults to the whole series). The phase is
// advanced by rotation inside blocks and re-anchored exactly at block starts.
inline complex theta_alpha(double alpha, const WeightSeries& weights, std::uint64_t nmax = 0) {
  if (nmax == 0) nmax = weights.nmax();
  if (nmax > weights.nmax()) throw range_error("theta_alpha: nmax exceeds the weight series");
  constexpr std::uint64_t kBlock = 256;
  const auto w = weights.values();
  const complex step = unit_exp(alpha - std::nearbyint(alpha));
  compensated_complex_sum acc;
  for (std::uint64_t m0 = 1; m0 <= nmax; m0 += kBlock) {
    const std::uint64_t m1 = std::min(nmax + 1, m0 + kBlock);
    complex z = unit_exp_times(alpha, static_cast<double>(m0));
    double re = 0.0;
    double im = 0.0;
    for (std::uint64_t m = m0; m < m1; ++m) {
      re += w[m] * z.real();
      im += w[m] * z.imag();
      z = {z.real() * step.real() - z.imag() * step.imag(), z.real() * step.imag() + z.imag() * step.real()};
    }
    acc.add({re, im});
  }
  return acc.value();
}

inline SpectrumSample spectrum_sample(double alpha, const FlooredImage& image, const WeightSeries& weights) {
  return {alpha, s_alpha(alpha, image), theta_alpha(alpha, weights)};
}

struct MajorArcDeviation {
  double X = 0.0;
  double tau = 0.0;
  double deviation = 0.0;   // max |S - Theta| over the grid
  double normalized = 0.0;  // deviation / X
  double alpha_at_max = 0.0;
};

// max |S(a) - Theta(a)| over `samples` equally spaced points of [-tau, tau]
// (plus a = 0 when the grid misses it). The image should hold the primes
// <= X and the weights should run to N = [X ln X].
inline MajorArcDeviation major_arc_deviation(double X, const FlooredImage& image, const WeightSeries& weights,
                                             std::size_t samples) {
  if (samples < 3) throw domain_error("major_arc_deviation: need at least 3 samples");
  MajorArcDeviation out;
  out.X = X;
  out.tau = arc_tau(X);
  const auto span = static_cast<double>(samples - 1);
  std::vector<double> alphas;
  // S and Theta have real coefficients, so |S - Theta| is even in alpha and
  // the grid is symmetric: only the nonnegative half is evaluated.
  for (std::size_t i = 0; i < samples; ++i) {
    const double num = 2.0 * static_cast<double>(i) - span;
    if (num >= 0.0) alphas.push_back(out.tau * num / span);
  }
  if (alphas.front() != 0.0) alphas.insert(alphas.begin(), 0.0);
  for (const double a : alphas) {
    const double d = std::abs(s_alpha(a, image) - theta_alpha(a, weights));
    if (d > out.deviation) {
      out.deviation = d;
      out.alpha_at_max = a;
    }
  }
  out.normalized = out.deviation / X;
  return out;
}

// ---------------------------------------------------------------------------
// Circle identity on a uniform grid
// ---------------------------------------------------------------------------

// S(j / Q) for j in [0, Q).
struct SpectrumGrid {
  std::int64_t maxfreq = 0;
  std::vector<complex> values;
};

inline SpectrumGrid make_spectrum_grid(const FlooredImage& image, std::uint64_t Q) {
  if (Q < static_cast<std::uint64_t>(3 * image.maxfreq() + 1)) throw grid_too_small("spectrum grid: Q < 3M + 1");
  if (!std::has_single_bit(Q)) throw domain_error("spectrum grid: Q must be a power of two");
  SpectrumGrid grid{image.maxfreq(), std::vector<complex>(Q)};
  for (const auto& e : image.entries()) grid.values[static_cast<std::size_t>(e.f)] += e.w;
  fft(grid.values, +1);
  return grid;
}

struct CircleIntegrals {
  complex gamma1;  // major arc
  complex gamma2;  // minor arc
  [[nodiscard]] complex total() const { return gamma1 + gamma2; }
};

inline CircleIntegrals circle_integrals(std::int64_t N, const SpectrumGrid& grid, const ArcPartition& partition) {
  const std::uint64_t Q = partition.Q;
  if (Q != grid.values.size()) throw domain_error("circle_integrals: grid and partition sizes differ");
  if (Q < static_cast<std::uint64_t>(3 * grid.maxfreq + 1)) throw grid_too_small("circle_integrals: Q < 3M + 1");
  if (N < 0) throw domain_error("circle_integrals: N must be >= 0");
  compensated_complex_sum major;
  compensated_complex_sum minor;
  const auto n_mod = static_cast<std::uint64_t>(N) % Q;
  const double q = static_cast<double>(Q);
  for (std::uint64_t j = 0; j < Q; ++j) {
    const complex s = grid.values[j];
    const auto phase = static_cast<unsigned __int128>(n_mod) * j % Q;
    const complex term = s * s * s * unit_exp(-static_cast<double>(phase) / q);
    if (partition.is_major(j)) {
      major.add(term);
    } else {
      minor.add(term);
    }
  }
  return {major.value() / q, minor.value() / q};
}

inline CircleIntegrals circle_integrals(std::int64_t N, const FlooredImage& image, const ArcPartition& partition) {
  if (partition.Q < static_cast<std::uint64_t>(3 * image.maxfreq() + 1)) {
    throw grid_too_small("circle_integrals: Q < 3M + 1");
  }
  return circle_integrals(N, make_spectrum_grid(image, partition.Q), partition);
}

// ---------------------------------------------------------------------------
// Fourier expansion of e(-x{y})
// ---------------------------------------------------------------------------

// c_h(x) = (1 - e(-x)) / (2 pi i (h + x)); c_0(0) = 1 by continuity.
inline complex fourier_coeff_ch(double x, std::int64_t h) {
  const double denom = static_cast<double>(h) + x;
  if (denom == 0.0) {
    if (x == 0.0) return {1.0, 0.0};
    throw pole_error("fourier_coeff_ch: h + x = 0");
  }
  const complex num = complex{1.0, 0.0} - unit_exp(-x);
  return num / complex{0.0, 2.0 * std::numbers::pi * denom};
}

// |e(-x{y}) - sum_{|h| <= H} c_h(x) e(h y)|.
inline double buriev_expansion_residual(double x, double y, std::int64_t H) {
  if (H < 3) throw domain_error("buriev_expansion_residual: H must be >= 3");
  const double fy = frac(y);
  const complex lhs = unit_exp(-x * fy);
  compensated_complex_sum acc;
  for (std::int64_t h = -H; h <= H; ++h) acc.add(fourier_coeff_ch(x, h) * unit_exp_times(fy, static_cast<double>(h)));
  return std::abs(lhs - acc.value());
}

// min(1, 1 / (H ||t||)), equal to 1 at integers.
inline double min_cap(double H, double dist) { return dist * H <= 1.0 ? 1.0 : 1.0 / (H * dist); }

inline double buriev_bound(double y, double H) { return min_cap(H, dist_to_int(y)); }

// ---------------------------------------------------------------------------
// Minor-arc quantities
// ---------------------------------------------------------------------------

// S2 = sum_{n <= X} min(1, 1 / (H ||n ln n||)) with certified ||n ln n||.
inline double s2_sum(double X, double H) {
  if (!(X >= 2.0)) throw domain_error("s2_sum: X must be >= 2");
  if (!(H >= 1.0)) throw domain_error("s2_sum: H must be >= 1");
  const auto nmax = static_cast<std::uint64_t>(std::floor(X));
  compensated_sum acc;
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    const auto cf = floor_nlogn(n);
    acc.add(min_cap(H, std::min(cf.fraction, 1.0 - cf.fraction)));
  }
  return acc.value();
}

struct GridMax {
  double value = 0.0;
  double alpha = 0.0;
};

// max over an `points`-point grid of [tau, H + 1] of
// |sum_{n <= X} Lambda(n) e(alpha n ln n)|. Endpoints are always included.
inline GridMax s1_sup(std::span<const PrimePower> powers, double tau, double H, std::size_t points) {
  if (points < 1000) throw domain_error("s1_sup: grid needs at least 1000 points");
  std::vector<dd> phases;
  phases.reserve(powers.size());
  for (const auto& pp : powers) phases.push_back(nlogn_dd(pp.n));

  GridMax best;
  const double lo = tau;
  const double hi = H + 1.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double alpha = i + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    compensated_complex_sum acc;
    for (std::size_t k = 0; k < powers.size(); ++k) {
      const dd t = detail::two_prod(alpha, phases[k].hi);
      const double arg = (t.hi - std::nearbyint(t.hi)) + t.lo + alpha * phases[k].lo;
      acc.add(powers[k].lambda * unit_exp(arg));
    }
    const double v = std::abs(acc.value());
    if (v > best.value) best = {v, alpha};
  }
  return best;
}

inline GridMax s1_sup(double X, double H, std::size_t points) {
  if (!(X >= 2.0)) throw domain_error("s1_sup: X must be >= 2");
  const auto xi = static_cast<std::uint64_t>(std::floor(X));
  const auto table = sieve(xi);
  const auto powers = prime_powers(table, xi);
  return s1_sup(powers, arc_tau(X), H, points);
}

namespace detail {

// |sum_{a < n <= b} e(h n ln n)| with n ln n given in double-double.
inline double vdc_abs_sum(std::span<const dd> nlogn, double h) {
  compensated_complex_sum acc;
  for (const auto& v : nlogn) {
    const dd t = two_prod(h, v.hi);
    acc.add(unit_exp((t.hi - std::nearbyint(t.hi)) + t.lo + h * v.lo));
  }
  return std::abs(acc.value());
}

inline double vdc_denominator(std::uint64_t a, std::uint64_t b, std::int64_t h) {
  const double lambda = std::abs(static_cast<double>(h)) / static_cast<double>(a);
  return static_cast<double>(b - a) * std::sqrt(lambda) + 1.0 / std::sqrt(lambda);
}

inline void check_vdc_args(std::uint64_t a, std::uint64_t b, std::int64_t h) {
  if (a < 2 || b <= a) throw domain_error("vdc_ratio: need 2 <= a < b");
  if (b > 2 * a) throw domain_error("vdc_ratio: need b <= 2a");
  if (h == 0) throw domain_error("vdc_ratio: h must be nonzero");
}

}  // namespace detail

// |sum_{a < n <= b} e(h n ln n)| / ((b - a) lambda^(1/2) + lambda^(-1/2)),
// lambda = |h| / a.
inline double vdc_ratio(std::uint64_t a, std::uint64_t b, std::int64_t h) {
  detail::check_vdc_args(a, b, h);
  std::vector<dd> v;
  v.reserve(b - a);
  for (std::uint64_t n = a + 1; n <= b; ++n) v.push_back(nlogn_dd(n));
  return detail::vdc_abs_sum(v, static_cast<double>(h)) / detail::vdc_denominator(a, b, h);
}

// max over 1 <= h <= hmax of vdc_ratio(a, b, h).
inline double vdc_max_ratio(std::uint64_t a, std::uint64_t b, std::int64_t hmax) {
  detail::check_vdc_args(a, b, 1);
  std::vector<dd> v;
  v.reserve(b - a);
  for (std::uint64_t n = a + 1; n <= b; ++n) v.push_back(nlogn_dd(n));
  double best = 0.0;
  for (std::int64_t h = 1; h <= hmax; ++h) {
    best = std::max(best, detail::vdc_abs_sum(v, static_cast<double>(h)) / detail::vdc_denominator(a, b, h));
  }
  return best;
}

// |sum_{1 < m <= y} e(m alpha) - int_1^y e(alpha t) dt|.
inline double sum_vs_integral_residual(double alpha, double ymax) {
  if (!(ymax >= 2.0)) throw domain_error("sum_vs_integral_residual: ymax must be >= 2");
  if (!(std::abs(alpha) < 1.0)) throw domain_error("sum_vs_integral_residual: need |alpha| < 1");
  const auto top = static_cast<std::uint64_t>(std::floor(ymax));
  compensated_complex_sum sum;
  for (std::uint64_t m = 2; m <= top; ++m) sum.add(unit_exp_times(alpha, static_cast<double>(m)));
  complex integral;
  if (alpha == 0.0) {
    integral = ymax - 1.0;
  } else {
    // (e(a y) - e(a)) / (2 pi i a) = e(a (y + 1) / 2) sin(pi a (y - 1)) / (pi a)
    const double x = std::numbers::pi * alpha;
    integral = unit_exp(0.5 * alpha * (ymax + 1.0)) * (std::sin(x * (ymax - 1.0)) / x);
  }
  return std::abs(sum.value() - integral);
}

// ---------------------------------------------------------------------------
// Empirical constants
// ---------------------------------------------------------------------------

// S1 / (X^(24/25) ln^3 X) with H = X^(1/25).
inline double s1_normalized(double X, std::size_t points = 1001) {
  const double L = std::log(X);
  return s1_sup(X, arc_H(X), points).value / (std::pow(X, 24.0 / 25.0) * L * L * L);
}

// S2 / (X^(24/25) ln^2 X) with H = X^(1/25).
inline double s2_normalized(double X) {
  const double L = std::log(X);
  return s2_sum(X, arc_H(X)) / (std::pow(X, 24.0 / 25.0) * L * L);
}

// Largest ratio residual / min(1, 1/(H ||y||)) over `samples` draws of
// x in [0, 1), y in [0, 1000).
template <typename Rng>
double buriev_constant(std::int64_t H, std::size_t samples, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::uniform_real_distribution<double> uy(0.0, 1000.0);
  double c = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    c = std::max(c, buriev_expansion_residual(x, y, H) / buriev_bound(y, static_cast<double>(H)));
  }
  return c;
}

}  // namespace loglab

#endif  // LOGLAB_EXPSUMS_HPP
