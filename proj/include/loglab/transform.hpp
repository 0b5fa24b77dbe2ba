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

// Fast convolution backends.
//
// fft() is a radix-2 complex transform with twiddles evaluated directly (no
// recurrences), used for real-weighted sums. ntt() works modulo the prime
// 2^64 - 2^32 + 1 and gives exact integer convolutions as long as every true
// coefficient is below the modulus.

#ifndef LOGLAB_TRANSFORM_HPP
#define LOGLAB_TRANSFORM_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "loglab/error.hpp"
#include "loglab/numeric.hpp"

namespace loglab {

namespace detail {

template <typename T>
void bit_reverse(std::span<T> a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

}  // namespace detail

// In-place unnormalized DFT: a[k] <- sum_j a[j] e(sign * j k / n).
inline void fft(std::span<complex> a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || !std::has_single_bit(n)) throw domain_error("fft: length must be a power of two");
  if (n == 1) return;
  detail::bit_reverse(a);

  std::vector<complex> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    tw[k] = unit_exp(static_cast<double>(sign) * static_cast<double>(k) / static_cast<double>(n));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const complex w = tw[j * stride];
        const complex x = a[i + j + half];
        // Plain multiply; std::complex operator* adds NaN/inf recovery.
        const complex v{x.real() * w.real() - x.imag() * w.imag(),
                        x.real() * w.imag() + x.imag() * w.real()};
        const complex u = a[i + j];
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

// Linear convolution of real sequences, truncated to out_len entries.
inline std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                                    std::size_t out_len) {
  if (a.empty() || b.empty()) return std::vector<double>(out_len, 0.0);
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t len = std::bit_ceil(full);
  std::vector<complex> fa(len), fb(len);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft(fa, -1);
  fft(fb, -1);
  for (std::size_t i = 0; i < len; ++i) fa[i] *= fb[i];
  fb = {};
  fft(fa, +1);
  std::vector<double> out(out_len, 0.0);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t i = 0; i < std::min(out_len, full); ++i) out[i] = fa[i].real() * scale;
  return out;
}

// k-fold self-convolution of a real sequence, all (k (n-1) + 1) entries.
inline std::vector<double> convolution_power(std::span<const double> a, int k) {
  if (k < 1) throw domain_error("convolution_power: k must be >= 1");
  if (a.empty()) return {};
  const std::size_t full = static_cast<std::size_t>(k) * (a.size() - 1) + 1;
  const std::size_t len = std::bit_ceil(full);
  std::vector<complex> fa(len);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  fft(fa, -1);
  for (auto& z : fa) {
    complex p = z;
    for (int i = 1; i < k; ++i) p *= z;
    z = p;
  }
  fft(fa, +1);
  std::vector<double> out(full);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t i = 0; i < full; ++i) out[i] = fa[i].real() * scale;
  return out;
}

// ---------------------------------------------------------------------------
// Number-theoretic transform modulo 2^64 - 2^32 + 1
// ---------------------------------------------------------------------------

namespace ntt_field {

inline constexpr std::uint64_t kModulus = 0xFFFFFFFF00000001ULL;
inline constexpr std::uint64_t kGenerator = 7;
inline constexpr int kMaxLog2 = 32;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  // a, b < p so the true sum is < 2p; handle the wrap past 2^64 as well.
  if (s < a || s >= kModulus) return s - kModulus;
  return s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + (kModulus - b); }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kModulus);
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

}  // namespace ntt_field

// In-place NTT; inverse includes the 1/n scaling.
inline void ntt(std::span<std::uint64_t> a, bool inverse) {
  using namespace ntt_field;
  const std::size_t n = a.size();
  if (n == 0 || !std::has_single_bit(n)) throw domain_error("ntt: length must be a power of two");
  if (std::countr_zero(n) > kMaxLog2) throw capacity_error("ntt: length exceeds 2^32");
  if (n == 1) return;
  detail::bit_reverse(a);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t wlen = pow(kGenerator, (kModulus - 1) / len);
    if (inverse) wlen = pow(wlen, kModulus - 2);
    const std::size_t half = len / 2;
    std::vector<std::uint64_t> w(half);
    w[0] = 1;
    for (std::size_t j = 1; j < half; ++j) w[j] = mul(w[j - 1], wlen);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint64_t u = a[i + j];
        const std::uint64_t v = mul(a[i + j + half], w[j]);
        a[i + j] = add(u, v);
        a[i + j + half] = sub(u, v);
      }
    }
  }
  if (inverse) {
    const std::uint64_t inv_n = pow(static_cast<std::uint64_t>(n) % kModulus, kModulus - 2);
    for (auto& x : a) x = mul(x, inv_n);
  }
}

// Exact k-fold self-convolution of nonnegative integers. The caller must
// ensure (sum a)^k < 2^64 - 2^32 + 1 so no coefficient wraps.
inline std::vector<std::uint64_t> exact_convolution_power(std::span<const std::uint64_t> a, int k) {
  if (k < 1) throw domain_error("exact_convolution_power: k must be >= 1");
  if (a.empty()) return {};
  const std::size_t full = static_cast<std::size_t>(k) * (a.size() - 1) + 1;
  const std::size_t len = std::bit_ceil(full);
  std::vector<std::uint64_t> fa(len, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % ntt_field::kModulus;
  ntt(fa, false);
  for (auto& z : fa) {
    std::uint64_t p = z;
    for (int i = 1; i < k; ++i) p = ntt_field::mul(p, z);
    z = p;
  }
  ntt(fa, true);
  fa.resize(full);
  return fa;
}

}  // namespace loglab

#endif  // LOGLAB_TRANSFORM_HPP
