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


#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "loglab/transform.hpp"

namespace {

std::vector<double> direct(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TEST(Fft, RoundTrip) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<loglab::complex> a(256), b;
  for (auto& z : a) z = {g(rng), g(rng)};
  b = a;
  loglab::fft(b, -1);
  loglab::fft(b, +1);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(b[i] / 256.0 - a[i]), 0.0, 1e-12);
}

TEST(Fft, DeltaIsFlat) {
  std::vector<loglab::complex> a(16);
  a[0] = 1.0;
  loglab::fft(a, -1);
  for (const auto& z : a) EXPECT_NEAR(std::abs(z - loglab::complex(1.0, 0.0)), 0.0, 1e-15);
}

TEST(Convolve, MatchesDirect) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const std::size_t n : {1u, 7u, 64u, 333u}) {
    std::vector<double> a(n), b(n + 5);
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    const auto want = direct(a, b);
    const auto got = loglab::convolve(a, b, want.size());
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
  }
}

TEST(ConvolutionPower, Cube) {
  const std::vector<double> a{0.0, 1.0, 2.0, 0.5};
  const auto want = direct(direct(a, a), a);
  const auto got = loglab::convolution_power(a, 3);
  ASSERT_GE(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Ntt, FieldArithmetic) {
  using namespace loglab::ntt_field;
  EXPECT_EQ(pow(kGenerator, kModulus - 1), 1u);
  EXPECT_EQ(mul(kModulus - 1, kModulus - 1), 1u);
  EXPECT_EQ(add(kModulus - 1, 2), 1u);
  EXPECT_EQ(sub(0, 1), kModulus - 1);
}

TEST(Ntt, ExactCubeOfIndicator) {
  std::mt19937_64 rng(4);
  std::vector<std::uint64_t> a(300);
  for (auto& v : a) v = rng() % 2;
  std::vector<double> ad(a.begin(), a.end());
  const auto want = direct(direct(ad, ad), ad);
  const auto got = loglab::exact_convolution_power(a, 3);
  ASSERT_GE(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(got[i], static_cast<std::uint64_t>(want[i]));
}

TEST(Ntt, RoundTrip) {
  std::vector<std::uint64_t> a(64), b;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i * i + 3;
  b = a;
  loglab::ntt(b, false);
  loglab::ntt(b, true);
  EXPECT_EQ(a, b);
}

}  // namespace
