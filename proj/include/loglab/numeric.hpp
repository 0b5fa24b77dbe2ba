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
 * Certified elementary numerics.
 *
 * floor_nlogn() returns the exact integer part of n*ln(n). Evaluation runs in
 * three stages and stops at the first one whose error enclosure does not
 * contain an integer:
 *
 *   1. hardware double, accepted when n*ln(n) is farther than 10^6 ulp from
 *      the nearest integer;
 *   2. double-double (about 106 significant bits), ln(n) obtained by one
 *      Newton correction of std::log against a double-double exp;
 *   3. 256-bit MPFR with directed rounding, which yields a rigorous interval.
 *
 * If stage 3 still straddles an integer the call throws escalation_failure.
 * For n >= 2, n*ln(n) is transcendental, so that never happens in practice.
 *
 * solve_ylogy() inverts g(y) = y ln y on [1, inf) with safeguarded Halley
 * steps inside a shrinking bracket.
 */

#ifndef LOGLAB_NUMERIC_HPP
#define LOGLAB_NUMERIC_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "loglab/error.hpp"

namespace loglab {

using complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Compensated summation
// ---------------------------------------------------------------------------

// Neumaier's variant of Kahan summation. Result depends only on the order of
// add() calls.
class compensated_sum {
 public:
  constexpr compensated_sum() = default;
  constexpr explicit compensated_sum(double init) : sum_(init) {}

  constexpr void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  constexpr compensated_sum& operator+=(double x) {
    add(x);
    return *this;
  }

  [[nodiscard]] constexpr double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class compensated_complex_sum {
 public:
  void add(complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  compensated_complex_sum& operator+=(complex z) {
    add(z);
    return *this;
  }
  [[nodiscard]] complex value() const { return {re_.value(), im_.value()}; }

 private:
  compensated_sum re_;
  compensated_sum im_;
};

// ---------------------------------------------------------------------------
// Double-double arithmetic
// ---------------------------------------------------------------------------

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace detail {

constexpr dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

constexpr dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator+(dd a, dd b) {
  dd s = detail::two_sum(a.hi, b.hi);
  dd t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, double b) {
  dd p = detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, dd b) {
  dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, double b) {
  const double q1 = a.hi / b;
  const dd r = a - detail::two_prod(q1, b);
  const double q2 = (r.hi + r.lo) / b;
  return detail::quick_two_sum(q1, q2);
}

inline dd ldexp(dd a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

// Largest integer <= a.hi + a.lo, returned as a double.
inline double floor(dd a) {
  double f = std::floor(a.hi);
  if (f == a.hi) f += std::floor(a.lo);
  return f;
}

// exp(x) for a double argument to roughly 100 bits.
inline dd exp_dd(double x) {
  constexpr dd kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
  const double k = std::nearbyint(x / kLn2.hi);
  const dd r = dd(x) - kLn2 * k;
  constexpr int kSquarings = 8;
  const dd s = ldexp(r, -kSquarings);

  // expm1(s) by Horner: s * (1 + s/2 * (1 + s/3 * (...))). |s| < 1.4e-3.
  constexpr int kTerms = 12;
  dd t = 1.0;
  for (int i = kTerms; i >= 2; --i) t = dd(1.0) + (s * t) / static_cast<double>(i);
  t = s * t;

  // (1 + t)^2 - 1 = t * (t + 2) keeps the small quantity explicit.
  for (int i = 0; i < kSquarings; ++i) t = t * (t + dd(2.0));
  return ldexp(t + dd(1.0), static_cast<int>(k));
}

inline dd log_dd(double x) {
  const double y0 = std::log(x);
  const dd e = exp_dd(y0);
  const dd diff = dd(x) - e;
  return dd(y0) + diff / e.hi;
}

// n * ln(n) in double-double. Exact integers up to 2^53.
inline dd nlogn_dd(std::uint64_t n) {
  const double x = static_cast<double>(n);
  return log_dd(x) * x;
}

// ---------------------------------------------------------------------------
// Elementary maps
// ---------------------------------------------------------------------------

// ||t||: distance from t to the nearest integer, in [0, 1/2].
inline double dist_to_int(double t) {
  const double f = t - std::floor(t);
  return std::min(f, 1.0 - f);
}

// Fractional part {t} in [0, 1).
inline double frac(double t) {
  const double f = t - std::floor(t);
  return f < 1.0 ? f : 0.0;
}

// e(y) = exp(2 pi i y). Exact at multiples of 1/4.
inline complex unit_exp(double y) {
  double r = y - std::nearbyint(y);  // [-1/2, 1/2]
  const double q = std::nearbyint(4.0 * r);
  r -= q / 4.0;  // [-1/8, 1/8]
  const double angle = 2.0 * std::numbers::pi * r;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (static_cast<int>(q)) {
    case 1: return {-s, c};
    case -1: return {s, -c};
    case 2:
    case -2: return {-c, -s};
    default: return {c, s};
  }
}

// e(alpha * k) for an integer k < 2^53, with alpha * k formed exactly.
inline complex unit_exp_times(double alpha, double k) {
  const double p = alpha * k;
  const double err = std::fma(alpha, k, -p);
  return unit_exp((p - std::nearbyint(p)) + err);
}

inline double ulp(double x) {
  x = std::abs(x);
  return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

// ---------------------------------------------------------------------------
// Certified floor of n ln n
// ---------------------------------------------------------------------------

enum class floor_stage : std::uint8_t { exact, hardware, double_double, mpfr256 };

struct CertifiedFloor {
  std::uint64_t n = 0;
  std::int64_t value = 0;  // [n ln n]
  double slack = 0.0;      // lower bound on the distance from n ln n to any integer
  double width = 0.0;      // width of the enclosing interval
  double fraction = 0.0;   // {n ln n}, to the accuracy of the certifying stage
  floor_stage stage = floor_stage::exact;
};

inline constexpr double kHardwareGuardUlps = 1e6;
inline constexpr double kDoubleDoubleRelErr = 1e-26;
inline constexpr mpfr_prec_t kMpfrBits = 256;
inline constexpr std::uint64_t kMaxFloorArgument = std::uint64_t{1} << 53;

namespace detail {

class mpfr_value {
 public:
  explicit mpfr_value(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~mpfr_value() { mpfr_clear(v_); }
  mpfr_value(const mpfr_value&) = delete;
  mpfr_value& operator=(const mpfr_value&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

inline bool certify_hardware(std::uint64_t n, CertifiedFloor& out) {
  const double x = static_cast<double>(n);
  const double v = x * std::log(x);
  const double fl = std::floor(v);
  const double dist = std::min(v - fl, fl + 1.0 - v);
  const double u = ulp(v);
  if (!(dist > kHardwareGuardUlps * u)) return false;
  // libm log is good to a couple of ulp; 4 ulp on the product is generous.
  const double err = 4.0 * u;
  out.value = static_cast<std::int64_t>(fl);
  out.width = 2.0 * err;
  out.slack = dist - err;
  out.fraction = v - fl;
  out.stage = floor_stage::hardware;
  return true;
}

inline bool certify_double_double(std::uint64_t n, CertifiedFloor& out) {
  const dd v = nlogn_dd(n);
  const double fl = floor(v);
  const double f = (v.hi - fl) + v.lo;
  const double dist = std::min(f, 1.0 - f);
  const double err = std::max(std::abs(v.hi) * kDoubleDoubleRelErr, 1e-300);
  if (!(dist > 4.0 * err)) return false;
  out.value = static_cast<std::int64_t>(fl);
  out.width = 2.0 * err;
  out.slack = dist - err;
  out.fraction = f;
  out.stage = floor_stage::double_double;
  return true;
}

inline bool certify_mpfr(std::uint64_t n, CertifiedFloor& out) {
  mpfr_value lo(kMpfrBits), hi(kMpfrBits), flo(kMpfrBits), fhi(kMpfrBits);
  mpfr_value tmp(kMpfrBits);
  const auto un = static_cast<unsigned long>(n);
  mpfr_set_ui(lo.get(), un, MPFR_RNDN);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_mul_ui(lo.get(), lo.get(), un, MPFR_RNDD);
  mpfr_set_ui(hi.get(), un, MPFR_RNDN);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_mul_ui(hi.get(), hi.get(), un, MPFR_RNDU);
  mpfr_floor(flo.get(), lo.get());
  mpfr_floor(fhi.get(), hi.get());
  if (mpfr_cmp(flo.get(), fhi.get()) != 0 || mpfr_cmp(flo.get(), lo.get()) == 0) return false;

  mpfr_sub(tmp.get(), lo.get(), flo.get(), MPFR_RNDD);
  const double below = mpfr_get_d(tmp.get(), MPFR_RNDD);
  mpfr_add_ui(tmp.get(), fhi.get(), 1, MPFR_RNDN);
  mpfr_sub(tmp.get(), tmp.get(), hi.get(), MPFR_RNDD);
  const double above = mpfr_get_d(tmp.get(), MPFR_RNDD);
  mpfr_sub(tmp.get(), hi.get(), lo.get(), MPFR_RNDU);
  const double width = mpfr_get_d(tmp.get(), MPFR_RNDU);
  if (!(std::min(below, above) > width)) return false;

  out.value = static_cast<std::int64_t>(mpfr_get_si(flo.get(), MPFR_RNDN));
  out.width = width;
  out.slack = std::min(below, above);
  out.fraction = below;
  out.stage = floor_stage::mpfr256;
  return true;
}

}  // namespace detail

// [n ln n] for 1 <= n <= 2^53.
inline CertifiedFloor floor_nlogn(std::uint64_t n) {
  if (n < 1) throw domain_error("floor_nlogn: n must be >= 1");
  if (n > kMaxFloorArgument) throw domain_error("floor_nlogn: n exceeds 2^53");
  CertifiedFloor out;
  out.n = n;
  if (n == 1) return out;  // 1 ln 1 = 0 exactly
  if (detail::certify_hardware(n, out)) return out;
  if (detail::certify_double_double(n, out)) return out;
  if (detail::certify_mpfr(n, out)) return out;
  throw escalation_failure("floor_nlogn: interval straddles an integer at 256 bits for n = " +
                           std::to_string(n));
}

// ---------------------------------------------------------------------------
// Inverse of y ln y
// ---------------------------------------------------------------------------

struct InverseLogPoint {
  double t = 0.0;
  double y = 1.0;
  double residual = 0.0;  // |y ln y - t|
};

inline constexpr double kSolverRelTol = 1e-12;
inline constexpr int kSolverMaxIter = 200;

// Solve y ln y = t for y >= 1. A positive finite `hint` seeds the iteration.
inline InverseLogPoint solve_ylogy(double t, double hint = 0.0) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw domain_error("solve_ylogy: t must be finite and >= 0");
  if (t == 0.0) return {0.0, 1.0, 0.0};

  double lo = 1.0;
  double hi = std::max(std::numbers::e, t);
  double y;
  if (hint > 1.0 && hint <= hi) {
    y = hint;
  } else if (t < std::numbers::e) {
    y = 1.0 + t / (1.0 + 0.5 * t);
  } else {
    // y = t / W(t), with the two-term asymptotic for W.
    const double l1 = std::log(t);
    const double l2 = std::log(std::max(l1, 1.0));
    const double w = l1 - l2 + l2 / l1;
    y = t / std::max(w, 1.0);
  }
  y = std::clamp(y, lo, hi);

  const double tol = kSolverRelTol * std::max(1.0, t);
  for (int it = 0; it < kSolverMaxIter; ++it) {
    const double ly = std::log(y);
    const double g = y * ly - t;
    if (g == 0.0) break;
    if (g < 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    const double g1 = ly + 1.0;
    const double g2 = 1.0 / y;
    const double newton = g / g1;
    const double denom = 1.0 - 0.5 * newton * g2 / g1;
    double next = y - (denom > 0.5 ? newton / denom : newton);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - y);
    y = next;
    if (std::abs(g) <= tol && step <= 4.0 * ulp(y)) break;
    if (hi - lo <= 2.0 * ulp(y)) break;
  }
  return {t, y, std::abs(y * std::log(y) - t)};
}

// 1 / (1 + ln y(t)): the smooth density matching the primes' [p ln p] image.
inline double weight_at(double t) { return 1.0 / (1.0 + std::log(solve_ylogy(t).y)); }

}  // namespace loglab

#endif  // LOGLAB_NUMERIC_HPP
