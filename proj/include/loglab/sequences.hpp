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

// The two coefficient sequences behind the exponential sums:
//
//   FlooredImage   p -> ([p ln p], ln p) over the primes of a PrimeTable
//   WeightSeries   m -> 1 / (1 + ln y(m)),  y ln y = m
//
// plus the on-disk cache for FlooredImage. Cache layout, all little-endian:
//
//   "LGL1"  u32 version  u64 xmax  u64 count
//   count x { u64 p, u64 f, f64 w }
//   u64 CRC-64/XZ of every preceding byte

#ifndef LOGLAB_SEQUENCES_HPP
#define LOGLAB_SEQUENCES_HPP

#include <boost/crc.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "loglab/error.hpp"
#include "loglab/numeric.hpp"
#include "loglab/primes.hpp"

namespace loglab {

struct ImageEntry {
  std::uint64_t p = 0;
  std::int64_t f = 0;  // [p ln p]
  double w = 0.0;      // ln p

  friend bool operator==(const ImageEntry&, const ImageEntry&) = default;
};

class FlooredImage {
 public:
  FlooredImage() = default;
  FlooredImage(std::uint64_t xmax, std::vector<ImageEntry> entries)
      : xmax_(xmax), entries_(std::move(entries)) {
    if (xmax_ >= 1) covered_freq_ = floor_nlogn(xmax_ + 1).value - 1;
  }

  [[nodiscard]] std::uint64_t xmax() const { return xmax_; }
  [[nodiscard]] std::span<const ImageEntry> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::int64_t maxfreq() const { return entries_.empty() ? 0 : entries_.back().f; }

  // Every prime with [p ln p] <= covered_freq() is in the image: primes above
  // xmax have [p ln p] >= [(xmax + 1) ln (xmax + 1)].
  [[nodiscard]] std::int64_t covered_freq() const { return covered_freq_; }

  // a[f] = sum of ln p over primes with [p ln p] = f, for f in [0, maxfreq].
  [[nodiscard]] std::vector<double> weight_spectrum() const {
    std::vector<double> a(static_cast<std::size_t>(maxfreq()) + 1, 0.0);
    for (const auto& e : entries_) a[static_cast<std::size_t>(e.f)] += e.w;
    return a;
  }

  // Same support as weight_spectrum() with every prime counted once.
  [[nodiscard]] std::vector<std::uint64_t> count_spectrum() const {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(maxfreq()) + 1, 0);
    for (const auto& e : entries_) ++a[static_cast<std::size_t>(e.f)];
    return a;
  }

  friend bool operator==(const FlooredImage&, const FlooredImage&) = default;

 private:
  std::uint64_t xmax_ = 0;
  std::vector<ImageEntry> entries_;
  std::int64_t covered_freq_ = 0;
};

inline FlooredImage build_floored_image(const PrimeTable& table) {
  if (table.empty()) throw domain_error("build_floored_image: empty prime table");
  std::vector<ImageEntry> entries;
  entries.reserve(table.size());
  const auto primes = table.primes();
  const auto logs = table.logweights();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto cf = floor_nlogn(primes[i]);
    if (!entries.empty() && cf.value <= entries.back().f) {
      throw error("build_floored_image: floors not strictly increasing at p = " + std::to_string(primes[i]));
    }
    entries.push_back({primes[i], cf.value, logs[i]});
  }
  return {table.xmax(), std::move(entries)};
}

// Largest integer x with [x ln x] <= nmax. Every prime p with [p ln p] <= nmax
// lies in [2, x].
inline std::uint64_t coverage_bound(std::uint64_t nmax) {
  if (nmax < 1) return 1;
  auto x = static_cast<std::uint64_t>(solve_ylogy(static_cast<double>(nmax) + 1.0).y);
  x = std::max<std::uint64_t>(x, 1);
  while (x > 1 && floor_nlogn(x).value > static_cast<std::int64_t>(nmax)) --x;
  while (floor_nlogn(x + 1).value <= static_cast<std::int64_t>(nmax)) ++x;
  return x;
}

// Image of every prime with [p ln p] <= nmax.
inline FlooredImage build_covering_image(std::uint64_t nmax) {
  const std::uint64_t x = std::max<std::uint64_t>(coverage_bound(nmax), 2);
  return build_floored_image(sieve(x));
}

// ---------------------------------------------------------------------------
// Smooth weights
// ---------------------------------------------------------------------------

// values()[m] = 1 / (1 + ln y(m)) for 1 <= m <= nmax; values()[0] = 0 so that
// the vector is directly the coefficient array of Theta.
class WeightSeries {
 public:
  WeightSeries() = default;
  WeightSeries(std::uint64_t nmax, std::vector<double> values) : nmax_(nmax), values_(std::move(values)) {}

  [[nodiscard]] std::uint64_t nmax() const { return nmax_; }
  [[nodiscard]] double at(std::uint64_t m) const {
    if (m < 1 || m > nmax_) throw range_error("WeightSeries::at: index outside [1, nmax]");
    return values_[m];
  }
  [[nodiscard]] std::span<const double> values() const { return values_; }

 private:
  std::uint64_t nmax_ = 0;
  std::vector<double> values_;
};

inline WeightSeries build_weight_series(std::uint64_t nmax) {
  if (nmax < 1) throw domain_error("build_weight_series: nmax must be >= 1");
  std::vector<double> w(nmax + 1, 0.0);
  double y = 1.0;
  for (std::uint64_t m = 1; m <= nmax; ++m) {
    // dy/dt = 1 / (1 + ln y) gives a first-order warm start.
    const double hint = m == 1 ? 0.0 : y + 1.0 / (1.0 + std::log(y));
    y = solve_ylogy(static_cast<double>(m), hint).y;
    w[m] = 1.0 / (1.0 + std::log(y));
  }
  return {nmax, std::move(w)};
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

inline constexpr std::array<char, 4> kCacheMagic{'L', 'G', 'L', '1'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderBytes = 4 + 4 + 8 + 8;
inline constexpr std::size_t kCacheRecordBytes = 8 + 8 + 8;

using crc64_xz = boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, 0xFFFFFFFFFFFFFFFFULL,
                                    0xFFFFFFFFFFFFFFFFULL, true, true>;

inline std::uint64_t crc64(std::span<const std::uint8_t> bytes) {
  crc64_xz crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

namespace detail {

inline void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t off, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[off + i]) << (8 * i);
  return v;
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_cache(const FlooredImage& image) {
  std::vector<std::uint8_t> out;
  out.reserve(kCacheHeaderBytes + kCacheRecordBytes * image.size() + 8);
  out.insert(out.end(), kCacheMagic.begin(), kCacheMagic.end());
  detail::put_le(out, kCacheVersion, 4);
  detail::put_le(out, image.xmax(), 8);
  detail::put_le(out, image.size(), 8);
  for (const auto& e : image.entries()) {
    detail::put_le(out, e.p, 8);
    detail::put_le(out, static_cast<std::uint64_t>(e.f), 8);
    detail::put_le(out, std::bit_cast<std::uint64_t>(e.w), 8);
  }
  detail::put_le(out, crc64(out), 8);
  return out;
}

// Parses and validates a cache image. `spot_checks` floors are re-certified
// (0 selects max(1, count / 1000)).
inline FlooredImage decode_cache(std::span<const std::uint8_t> bytes, std::size_t spot_checks = 0) {
  if (bytes.size() < kCacheHeaderBytes + 8) throw corrupt_cache("cache: file too short");
  if (!std::equal(kCacheMagic.begin(), kCacheMagic.end(), bytes.begin())) throw corrupt_cache("cache: bad magic");
  const auto version = static_cast<std::uint32_t>(detail::get_le(bytes, 4, 4));
  if (version != kCacheVersion) {
    throw corrupt_cache("cache: version " + std::to_string(version) + " != " + std::to_string(kCacheVersion));
  }
  const std::uint64_t xmax = detail::get_le(bytes, 8, 8);
  const std::uint64_t count = detail::get_le(bytes, 16, 8);
  if (count > (bytes.size() - kCacheHeaderBytes - 8) / kCacheRecordBytes ||
      bytes.size() != kCacheHeaderBytes + count * kCacheRecordBytes + 8) {
    throw corrupt_cache("cache: size does not match record count");
  }
  const std::size_t payload = bytes.size() - 8;
  if (crc64(bytes.first(payload)) != detail::get_le(bytes, payload, 8)) {
    throw corrupt_cache("cache: checksum mismatch");
  }

  std::vector<ImageEntry> entries(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t off = kCacheHeaderBytes + i * kCacheRecordBytes;
    entries[i].p = detail::get_le(bytes, off, 8);
    entries[i].f = static_cast<std::int64_t>(detail::get_le(bytes, off + 8, 8));
    entries[i].w = std::bit_cast<double>(detail::get_le(bytes, off + 16, 8));
    if (entries[i].p > xmax || (i > 0 && (entries[i].p <= entries[i - 1].p || entries[i].f <= entries[i - 1].f))) {
      throw corrupt_cache("cache: entries out of order at record " + std::to_string(i));
    }
  }

  if (count > 0) {
    const std::size_t checks = spot_checks ? spot_checks : std::max<std::size_t>(1, count / 1000);
    std::mt19937_64 rng(count ^ (xmax << 1));
    std::uniform_int_distribution<std::uint64_t> pick(0, count - 1);
    for (std::size_t c = 0; c < checks; ++c) {
      const auto& e = entries[pick(rng)];
      if (floor_nlogn(e.p).value != e.f || e.w != std::log(static_cast<double>(e.p))) {
        throw corrupt_cache("cache: spot check failed at p = " + std::to_string(e.p));
      }
    }
  }
  return {xmax, std::move(entries)};
}

inline void save_cache(const FlooredImage& image, const std::filesystem::path& path) {
  const auto bytes = encode_cache(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cache: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw io_error("cache: write failed for " + path.string());
}

inline FlooredImage load_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cache: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw io_error("cache: read failed for " + path.string());
  return decode_cache(bytes);
}

}  // namespace loglab

#endif  // LOGLAB_SEQUENCES_HPP
