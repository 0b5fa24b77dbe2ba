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


// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loglab/cli.hpp"
#include "loglab/counting.hpp"
#include "loglab/expsums.hpp"

namespace {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

// Pinned tolerances and limits.
constexpr double kOracleRelTol = 1e-6;
constexpr double kOracleSeconds = 60;
constexpr double kMassRelTol = 1e-9;
constexpr double kPsi1RelTol = 1e-12;
constexpr double kPsi3Seconds = 300;
constexpr double kMajorArcSeconds = 600;
constexpr double kLedgerFactor = 4.0;
constexpr double kBurievSpread = 2.0;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome oracle_equivalence() {
  const auto t0 = clock_type::now();
  const auto img = loglab::build_floored_image(loglab::sieve(200));
  const std::int64_t top = 3 * loglab::floor_nlogn(199).value;
  const auto fast = loglab::gamma_all_fast(img, top);
  const auto grid = loglab::make_spectrum_grid(img, loglab::circle_grid_size(img.maxfreq()));
  double worst_fast = 0.0, worst_circle = 0.0;
  bool counts_ok = true;
  for (std::int64_t N = 1; N <= top; ++N) {
    const auto b = loglab::gamma_brute(N, img, loglab::coverage_policy::truncated);
    const auto& f = fast[static_cast<std::size_t>(N - 1)];
    counts_ok = counts_ok && f.R == b.R;
    const double X = std::max(2.0, loglab::solve_ylogy(static_cast<double>(N)).y);
    const auto ci = loglab::circle_integrals(N, grid, loglab::make_partition(X, img.maxfreq()));
    const double scale = std::max(b.gamma, 1e-300);
    worst_fast = std::max(worst_fast, b.gamma == 0 ? std::abs(f.gamma) : std::abs(f.gamma - b.gamma) / scale);
    const double c = ci.total().real();
    // when there is no solution the grid sum is pure rounding; compare absolutely
    worst_circle = std::max(worst_circle, b.gamma == 0 ? std::abs(c) : std::abs(c - b.gamma) / scale);
  }
  const double secs = seconds_since(t0);
  const bool pass = counts_ok && worst_fast <= kOracleRelTol && worst_circle <= kOracleRelTol && secs < kOracleSeconds;
  return {pass, "N<=" + std::to_string(top) + " fast " + fmt("%.2e", worst_fast) + " circle " +
                    fmt("%.2e", worst_circle) + " counts " + (counts_ok ? "exact" : "MISMATCH") + " " +
                    fmt("%.1fs", secs)};
}

Outcome mass_identities() {
  bool pass = true;
  std::string detail;
  for (const std::uint64_t x : {100, 1000, 10000}) {
    const auto table = loglab::sieve(x);
    const auto img = loglab::build_floored_image(table);
    const auto all = loglab::gamma_all_fast(img, 3 * img.maxfreq());
    std::uint64_t R = 0;
    loglab::compensated_sum G;
    for (const auto& r : all) {
      R += r.R;
      G.add(r.gamma);
    }
    const std::uint64_t pi = table.size();
    const double th = loglab::chebyshev_theta(table, static_cast<double>(x));
    const double rel = std::abs(G.value() - th * th * th) / (th * th * th);
    const bool ok = R == pi * pi * pi && rel <= kMassRelTol;
    pass = pass && ok;
    detail += "x=" + std::to_string(x) + (R == pi * pi * pi ? " R exact" : " R MISMATCH") + " gamma " +
              fmt("%.1e", rel) + "; ";
  }
  return {pass, detail};
}

Outcome psi1_closed_form() {
  const std::uint64_t nmax = 1000000;
  const auto w = loglab::build_weight_series(nmax);
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::uint64_t> pick(1, nmax);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto N = pick(rng);
    const double y = loglab::solve_ylogy(static_cast<double>(N)).y;
    const double want = 1.0 / (1.0 + std::log(y));
    worst = std::max(worst, std::abs(loglab::psi_k(w, 1, N) - want) / want);
  }
  return {worst <= kPsi1RelTol, "max rel " + fmt("%.2e", worst) + " over 100 N"};
}

Outcome psi3_trend() {
  const auto t0 = clock_type::now();
  const std::uint64_t top = 10000000;
  const auto w = loglab::build_weight_series(top);
  const auto psi = loglab::psi_k_all(w, 3, top);
  std::vector<double> gaps;
  std::string detail = "ratios";
  for (const std::uint64_t N : {10000, 100000, 1000000, 10000000}) {
    const double ratio = psi[N] / loglab::main_term(static_cast<double>(N));
    gaps.push_back(std::abs(ratio - 1.0));
    detail += " " + fmt("%.4f", ratio);
  }
  bool pass = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) pass = pass && gaps[i] < gaps[i - 1];
  const double secs = seconds_since(t0);
  pass = pass && secs < kPsi3Seconds;
  return {pass, detail + " " + fmt("%.1fs", secs)};
}

Outcome existence() {
  const std::int64_t lo = 100, hi = 20000;
  const auto img = loglab::build_covering_image(static_cast<std::uint64_t>(hi));
  const auto all = loglab::gamma_all_fast(img, hi);
  std::vector<std::int64_t> missing;
  for (std::int64_t N = lo; N <= hi; ++N) {
    if (all[static_cast<std::size_t>(N - 1)].R == 0) missing.push_back(N);
  }
  std::string detail = std::to_string(missing.size()) + " N in [100, 20000] with R = 0";
  if (!missing.empty()) {
    detail += ":";
    for (const auto N : missing) detail += " " + std::to_string(N);
  }
  return {missing.empty(), detail};
}

Outcome major_arc_trend() {
  const auto t0 = clock_type::now();
  std::vector<double> norm;
  std::string detail = "normalized";
  for (const int e : {12, 14, 16, 18}) {
    const auto xi = std::uint64_t{1} << e;
    const auto X = static_cast<double>(xi);
    const auto img = loglab::build_floored_image(loglab::sieve(xi));
    const auto w = loglab::build_weight_series(static_cast<std::uint64_t>(std::floor(X * std::log(X))));
    norm.push_back(loglab::major_arc_deviation(X, img, w, 1001).normalized);
    detail += " " + fmt("%.4g", norm.back());
  }
  bool pass = true;
  for (std::size_t i = 1; i < norm.size(); ++i) pass = pass && norm[i] < norm[i - 1];
  const double secs = seconds_since(t0);
  return {pass && secs < kMajorArcSeconds, detail + " " + fmt("%.1fs", secs)};
}

Outcome bound_ledgers() {
  std::vector<double> s1, s2, vdc;
  for (const int e : {12, 14, 16}) {
    const auto xi = std::uint64_t{1} << e;
    const auto X = static_cast<double>(xi);
    s1.push_back(loglab::s1_normalized(X));
    s2.push_back(loglab::s2_normalized(X));
    vdc.push_back(loglab::vdc_max_ratio(xi / 2, xi, 32));
  }
  bool pass = true;
  std::string detail;
  const auto check = [&](const char* name, const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    const bool ok = m <= kLedgerFactor * v.front();
    pass = pass && ok;
    detail += std::string(name) + " " + fmt("%.3g", v[0]) + "/" + fmt("%.3g", v[1]) + "/" + fmt("%.3g", v[2]) + "; ";
  };
  check("s1", s1);
  check("s2", s2);
  check("vdc", vdc);
  return {pass, detail};
}

Outcome certified_floors() {
  using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::uint64_t> pick(1, 10000000);
  std::uint64_t mismatches = 0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const auto n = pick(rng);
    const big x(n);
    const auto want = static_cast<std::int64_t>(floor(x * log(x)));
    if (loglab::floor_nlogn(n).value != want) ++mismatches;
  }
  return {mismatches == 0, std::to_string(samples) + " samples, " + std::to_string(mismatches) + " mismatches"};
}

Outcome buriev_constant() {
  std::mt19937_64 rng(kSeed);
  std::vector<double> c;
  for (const std::int64_t H : {8, 64, 512}) c.push_back(loglab::buriev_constant(H, 10000, rng));
  const double lo = *std::min_element(c.begin(), c.end());
  const double hi = *std::max_element(c.begin(), c.end());
  return {lo > 0 && hi <= kBurievSpread * lo,
          "C(8)=" + fmt("%.4f", c[0]) + " C(64)=" + fmt("%.4f", c[1]) + " C(512)=" + fmt("%.4f", c[2])};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto base = fs::temp_directory_path() / "loglab_acceptance_det";
  fs::remove_all(base);
  const std::vector<std::string> configs{
      "sieve --xmax 100000",
      "image --xmax 20000",
      "gamma --xmax 300 --all",
      "gamma --n 1000",
      "psik --nmax 100000 --k 3",
      "expsum --xmax 2000 --alpha-grid 32",
      "arcs --nmax 300",
      "lemmas --xmax 4096 --samples 2000 --seed 7",
      "scan-binary --nmax 5000",
  };
  int same = 0;
  std::string bad;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (const char* format : {"csv", "json"}) {
      std::string report[2];
      for (int r = 0; r < 2; ++r) {
        const auto dir = base / (std::to_string(i) + format + std::to_string(r));
        const std::string cmd = std::string(LOGLAB_CLI_PATH) + " " + configs[i] + " --format " + format +
                                " --outdir " + dir.string() + " --cache-dir " + (base / "cache").string() +
                                " >/dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) report[r] = "<failed " + std::to_string(r) + ">";
        else report[r] = slurp(dir / (std::string("report.") + format));
      }
      if (report[0] == report[1] && !report[0].empty()) {
        ++same;
      } else {
        bad += " [" + configs[i] + " " + format + "]";
      }
    }
  }
  fs::remove_all(base);
  const int total = static_cast<int>(configs.size()) * 2;
  return {same == total, std::to_string(same) + "/" + std::to_string(total) + " identical" + bad};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle-equivalence", oracle_equivalence},
      {"mass-identities", mass_identities},
      {"psi1-closed-form", psi1_closed_form},
      {"psi3-trend", psi3_trend},
      {"existence", existence},
      {"major-arc-trend", major_arc_trend},
      {"bound-ledgers", bound_ledgers},
      {"certified-floors", certified_floors},
      {"buriev-constant", buriev_constant},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %-20s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
