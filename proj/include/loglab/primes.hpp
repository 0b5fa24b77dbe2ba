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

#ifndef LOGLAB_PRIMES_HPP
#define LOGLAB_PRIMES_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loglab/error.hpp"
#include "loglab/numeric.hpp"

namespace loglab {

// All primes up to xmax, their logarithms and the running Chebyshev theta.
// Immutable once built.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t xmax, std::vector<std::uint64_t> primes)
      : xmax_(xmax), primes_(std::move(primes)) {
    logweights_.reserve(primes_.size());
    theta_prefix_.reserve(primes_.size());
    compensated_sum acc;
    for (const auto p : primes_) {
      const double w = std::log(static_cast<double>(p));
      logweights_.push_back(w);
      acc.add(w);
      theta_prefix_.push_back(acc.value());
    }
  }

  [[nodiscard]] std::uint64_t xmax() const { return xmax_; }
  [[nodiscard]] std::size_t size() const { return primes_.size(); }
  [[nodiscard]] bool empty() const { return primes_.empty(); }
  [[nodiscard]] std::span<const std::uint64_t> primes() const { return primes_; }
  [[nodiscard]] std::span<const double> logweights() const { return logweights_; }

  // Number of listed primes <= x.
  [[nodiscard]] std::size_t pi(double x) const {
    if (x < 2.0) return 0;
    const auto bound = static_cast<std::uint64_t>(std::floor(x));
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), bound) -
                                    primes_.begin());
  }

  // theta(primes[i]) = sum of ln p over the first i+1 primes.
  [[nodiscard]] double theta_prefix(std::size_t i) const { return theta_prefix_.at(i); }

 private:
  std::uint64_t xmax_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<double> logweights_;
  std::vector<double> theta_prefix_;
};

inline constexpr std::uint64_t kDefaultSieveBudgetBytes = std::uint64_t{3} << 30;

// Approximate resident size of a PrimeTable for xmax, from pi(x) < 1.26 x / ln x.
inline std::uint64_t sieve_footprint_bytes(std::uint64_t xmax) {
  const double x = static_cast<double>(std::max<std::uint64_t>(xmax, 3));
  const double count = 1.26 * x / std::log(x);
  return static_cast<std::uint64_t>(count * 3.0 * sizeof(double)) + xmax / 16 + 1;
}

// Segmented sieve of Eratosthenes over odd numbers, one bit per odd.
inline PrimeTable sieve(std::uint64_t xmax, std::uint64_t budget_bytes = kDefaultSieveBudgetBytes) {
  if (xmax < 2) throw domain_error("sieve: xmax must be >= 2");
  if (sieve_footprint_bytes(xmax) > budget_bytes) {
    throw capacity_error("sieve: xmax = " + std::to_string(xmax) + " exceeds the memory budget");
  }

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(1.26 * static_cast<double>(xmax) /
                                          std::log(static_cast<double>(std::max<std::uint64_t>(xmax, 3)))) + 1);
  primes.push_back(2);

  // Base primes up to sqrt(xmax) with a plain byte sieve.
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(xmax)));
  while (root * root > xmax) --root;
  while ((root + 1) * (root + 1) <= xmax) ++root;
  std::vector<std::uint64_t> base;
  {
    std::vector<std::uint8_t> composite(root + 1, 0);
    for (std::uint64_t i = 3; i <= root; i += 2) {
      if (composite[i]) continue;
      base.push_back(i);
      for (std::uint64_t j = i * i; j <= root; j += 2 * i) composite[j] = 1;
    }
  }

  // Odd numbers 2k+1, k in [1, kmax]; segment covers a fixed number of k.
  constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 18;
  const std::uint64_t kmax = (xmax - 1) / 2;
  std::vector<std::uint64_t> bits(kSegmentOdds / 64);
  for (std::uint64_t k0 = 1; k0 <= kmax; k0 += kSegmentOdds) {
    const std::uint64_t k1 = std::min(kmax + 1, k0 + kSegmentOdds);  // exclusive
    std::fill(bits.begin(), bits.end(), 0);
    const std::uint64_t lo_val = 2 * k0 + 1;
    const std::uint64_t hi_val = 2 * (k1 - 1) + 1;
    for (const auto p : base) {
      if (p * p > hi_val) break;
      std::uint64_t start = std::max(p * p, (lo_val + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t m = start; m <= hi_val; m += 2 * p) {
        const std::uint64_t idx = (m - 1) / 2 - k0;
        bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
      }
    }
    for (std::uint64_t k = k0; k < k1; ++k) {
      const std::uint64_t idx = k - k0;
      if (!((bits[idx >> 6] >> (idx & 63)) & 1)) primes.push_back(2 * k + 1);
    }
  }
  return PrimeTable(xmax, std::move(primes));
}

// theta(x) = sum_{p <= x} ln p.
inline double chebyshev_theta(const PrimeTable& table, double x) {
  if (x > static_cast<double>(table.xmax())) {
    throw range_error("chebyshev_theta: x exceeds the table's xmax");
  }
  const std::size_t k = table.pi(x);
  return k == 0 ? 0.0 : table.theta_prefix(k - 1);
}

// Lambda(n): ln p when n = p^k, else 0.
inline double mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  std::uint64_t p = 0;
  if (n % 2 == 0) {
    p = 2;
  } else {
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = n;
  }
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

struct PrimePower {
  std::uint64_t n;
  double lambda;  // Lambda(n) = ln p
};

// Every prime power p^k <= x (k >= 1), ascending in n.
inline std::vector<PrimePower> prime_powers(const PrimeTable& table, std::uint64_t x) {
  if (x > table.xmax()) throw range_error("prime_powers: x exceeds the table's xmax");
  std::vector<PrimePower> out;
  const auto primes = table.primes();
  const auto logs = table.logweights();
  for (std::size_t i = 0; i < primes.size() && primes[i] <= x; ++i) {
    std::uint64_t q = primes[i];
    while (true) {
      out.push_back({q, logs[i]});
      if (q > x / primes[i]) break;
      q *= primes[i];
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
  return out;
}

// psi(x) = sum_{n <= x} Lambda(n).
inline double chebyshev_psi(const PrimeTable& table, double x) {
  if (x < 2.0) return 0.0;
  compensated_sum acc;
  for (const auto& pp : prime_powers(table, static_cast<std::uint64_t>(std::floor(x)))) acc.add(pp.lambda);
  return acc.value();
}

}  // namespace loglab

#endif  // LOGLAB_PRIMES_HPP
