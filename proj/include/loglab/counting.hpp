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

// Representation counts for N = [p1 ln p1] + [p2 ln p2] + [p3 ln p3] over
// ordered prime triples, their log-weighted sum, the smooth convolutions
// Psi_k, and the two-term scanner.

#ifndef LOGLAB_COUNTING_HPP
#define LOGLAB_COUNTING_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "loglab/error.hpp"
#include "loglab/numeric.hpp"
#include "loglab/sequences.hpp"
#include "loglab/transform.hpp"

namespace loglab {

struct RepReport {
  std::int64_t N = 0;
  std::uint64_t R = 0;     // ordered triples
  double gamma = 0.0;      // sum of ln p1 ln p2 ln p3 over those triples
  double mainterm = 0.0;   // X^2 / (1 + ln X), X ln X = N
  double ratio = 0.0;      // gamma / mainterm
  bool complete = true;    // the image held every prime that could take part
};

// How gamma_brute treats an image that may not reach N.
enum class coverage_policy {
  strict,     // throw coverage_error unless every admissible prime is present
  truncated,  // count only the image's primes, whatever N is
  x_cutoff,   // strict, and additionally drop primes p > X where X ln X = N
};

// X^2 / (1 + ln X) with X ln X = N.
inline double main_term(double N) {
  if (!(N >= 1.0)) throw domain_error("main_term: N must be >= 1");
  const double X = solve_ylogy(N).y;
  return X * X / (1.0 + std::log(X));
}

// True when the image contains every prime with [p ln p] <= N - 2.
inline bool covers(const FlooredImage& image, std::int64_t N) { return N < 3 || image.covered_freq() >= N - 2; }

inline RepReport gamma_brute(std::int64_t N, const FlooredImage& image,
                             coverage_policy policy = coverage_policy::strict) {
  if (N < 1) throw domain_error("gamma_brute: N must be >= 1");
  RepReport rep;
  rep.N = N;
  rep.complete = covers(image, N);
  if (!rep.complete && policy != coverage_policy::truncated) {
    throw coverage_error("gamma_brute: image covers frequencies up to " + std::to_string(image.covered_freq()) +
                         " does not reach N - 2 = " + std::to_string(N - 2));
  }
  rep.mainterm = main_term(static_cast<double>(N));

  const auto entries = image.entries();
  double pmax = static_cast<double>(image.xmax());
  if (policy == coverage_policy::x_cutoff) pmax = solve_ylogy(static_cast<double>(N)).y;

  std::size_t usable = 0;
  while (usable < entries.size() && static_cast<double>(entries[usable].p) <= pmax) ++usable;
  if (usable == 0 || N < 3) return rep;

  const std::int64_t top = entries[usable - 1].f;
  std::vector<double> by_freq(static_cast<std::size_t>(top) + 1, -1.0);
  for (std::size_t i = 0; i < usable; ++i) by_freq[static_cast<std::size_t>(entries[i].f)] = entries[i].w;

  compensated_sum gamma;
  for (std::size_t i = 0; i < usable && entries[i].f <= N - 2; ++i) {
    for (std::size_t j = 0; j < usable && entries[i].f + entries[j].f <= N - 1; ++j) {
      const std::int64_t f3 = N - entries[i].f - entries[j].f;
      if (f3 > top) continue;
      const double w3 = by_freq[static_cast<std::size_t>(f3)];
      if (w3 < 0.0) continue;
      ++rep.R;
      gamma.add(entries[i].w * entries[j].w * w3);
    }
  }
  rep.gamma = gamma.value();
  rep.ratio = rep.gamma / rep.mainterm;
  return rep;
}

inline constexpr int kFastResidualChecks = 32;
inline constexpr double kFastRelTol = 1e-6;
inline constexpr std::uint64_t kFastCheckSeed = 42;

// R(N) and gamma(N) for every 1 <= N <= nmax from the image's primes, by
// transform. Entry i describes N = i + 1. Counts for N > covered_freq() + 2 include
// only the image's primes and are flagged incomplete.
inline std::vector<RepReport> gamma_all_fast(const FlooredImage& image, std::int64_t nmax,
                                             int residual_checks = kFastResidualChecks) {
  if (image.empty()) throw domain_error("gamma_all_fast: empty image");
  if (nmax < 1 || nmax > 3 * image.maxfreq()) {
    throw range_error("gamma_all_fast: nmax must lie in [1, 3 * maxfreq]");
  }
  const auto count = static_cast<double>(image.size());
  if (count * count * count >= static_cast<double>(ntt_field::kModulus)) {
    throw capacity_error("gamma_all_fast: pi(xmax)^3 exceeds the exact transform's modulus");
  }

  const auto counts = exact_convolution_power(image.count_spectrum(), 3);
  const auto gammas = convolution_power(image.weight_spectrum(), 3);

  std::vector<RepReport> out(static_cast<std::size_t>(nmax));
  for (std::int64_t N = 1; N <= nmax; ++N) {
    auto& rep = out[static_cast<std::size_t>(N - 1)];
    rep.N = N;
    rep.R = counts[static_cast<std::size_t>(N)];
    rep.gamma = rep.R == 0 ? 0.0 : gammas[static_cast<std::size_t>(N)];
    rep.mainterm = main_term(static_cast<double>(N));
    rep.ratio = rep.gamma / rep.mainterm;
    rep.complete = covers(image, N);
  }

  std::mt19937_64 rng(kFastCheckSeed);
  std::uniform_int_distribution<std::int64_t> pick(1, nmax);
  for (int c = 0; c < residual_checks; ++c) {
    const std::int64_t N = pick(rng);
    const auto brute = gamma_brute(N, image, coverage_policy::truncated);
    const auto& fast = out[static_cast<std::size_t>(N - 1)];
    const bool ok = brute.R == fast.R &&
                    std::abs(brute.gamma - fast.gamma) <= kFastRelTol * std::abs(brute.gamma);
    if (!ok) {
      throw precision_error("gamma_all_fast: transform disagrees with enumeration at N = " + std::to_string(N));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smooth convolutions
// ---------------------------------------------------------------------------

// Psi_k(n) for 0 <= n <= nmax: the sum over m1 + ... + mk = n (mi >= 1) of
// w(m1)...w(mk). Built by k - 1 truncated FFT convolutions.
inline std::vector<double> psi_k_all(const WeightSeries& weights, int k, std::uint64_t nmax) {
  if (k < 1) throw domain_error("psi_k: k must be >= 1");
  if (nmax > weights.nmax()) throw range_error("psi_k: nmax exceeds the weight series");
  const auto w = weights.values().first(nmax + 1);
  std::vector<double> cur(w.begin(), w.end());
  if (k == 1) return cur;

  const std::size_t len = std::bit_ceil(2 * (nmax + 1) - 1);
  std::vector<complex> fw(len);
  for (std::size_t i = 0; i <= nmax; ++i) fw[i] = w[i];
  fft(fw, -1);

  std::vector<complex> buf(len);
  const double scale = 1.0 / static_cast<double>(len);
  for (int step = 2; step <= k; ++step) {
    if (step == 2) {
      for (std::size_t i = 0; i < len; ++i) buf[i] = fw[i] * fw[i];
    } else {
      std::fill(buf.begin(), buf.end(), complex{});
      for (std::size_t i = 0; i <= nmax; ++i) buf[i] = cur[i];
      fft(buf, -1);
      for (std::size_t i = 0; i < len; ++i) buf[i] *= fw[i];
    }
    fft(buf, +1);
    for (std::size_t i = 0; i <= nmax; ++i) cur[i] = buf[i].real() * scale;
    // Psi_k vanishes below k exactly; clear rounding noise there.
    for (std::size_t i = 0; i < std::min<std::size_t>(static_cast<std::size_t>(step), nmax + 1); ++i) cur[i] = 0.0;
  }
  return cur;
}

// Psi_k(N). The last convolution step is a direct dot product.
inline double psi_k(const WeightSeries& weights, int k, std::uint64_t N) {
  if (k < 1) throw domain_error("psi_k: k must be >= 1");
  if (N < 1 || N > weights.nmax()) throw range_error("psi_k: N outside [1, nmax]");
  if (k == 1) return weights.at(N);
  if (N < static_cast<std::uint64_t>(k)) return 0.0;
  const auto prev = psi_k_all(weights, k - 1, N - 1);
  compensated_sum acc;
  for (std::uint64_t m = 1; m < N; ++m) acc.add(weights.at(m) * prev[N - m]);
  return acc.value();
}

// ---------------------------------------------------------------------------
// Two-term scanner
// ---------------------------------------------------------------------------

// All N in [2, nmax] with no representation [p ln p] + [q ln q] = N.
inline std::vector<std::int64_t> binary_scan(const FlooredImage& image, std::int64_t nmax) {
  if (nmax < 2) return {};
  if (image.covered_freq() < nmax - 1) {
    throw coverage_error("binary_scan: image covers frequencies up to " + std::to_string(image.covered_freq()) +
                         " does not reach nmax - 1 = " + std::to_string(nmax - 1));
  }
  std::vector<bool> hit(static_cast<std::size_t>(nmax) + 1, false);
  const auto entries = image.entries();
  for (std::size_t i = 0; i < entries.size() && entries[i].f <= nmax - 1; ++i) {
    for (std::size_t j = i; j < entries.size() && entries[i].f + entries[j].f <= nmax; ++j) {
      hit[static_cast<std::size_t>(entries[i].f + entries[j].f)] = true;
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t N = 2; N <= nmax; ++N) {
    if (!hit[static_cast<std::size_t>(N)]) out.push_back(N);
  }
  return out;
}

}  // namespace loglab

#endif  // LOGLAB_COUNTING_HPP
