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

// Experiment driver behind the `loglab` executable. run() executes one
// command and writes report.{csv,json}, meta.json and any plot-data files
// into config.outdir.

#ifndef LOGLAB_CLI_HPP
#define LOGLAB_CLI_HPP

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "loglab/counting.hpp"
#include "loglab/error.hpp"
#include "loglab/expsums.hpp"
#include "loglab/primes.hpp"
#include "loglab/report.hpp"
#include "loglab/sequences.hpp"

namespace loglab {

inline constexpr std::string_view kVersion = "0.1.0";

enum class command { sieve, image, gamma, psik, expsum, arcs, lemmas, scan_binary };
enum class report_format { csv, json };

inline constexpr std::array<std::pair<command, std::string_view>, 8> kCommandNames{{
    {command::sieve, "sieve"},
    {command::image, "image"},
    {command::gamma, "gamma"},
    {command::psik, "psik"},
    {command::expsum, "expsum"},
    {command::arcs, "arcs"},
    {command::lemmas, "lemmas"},
    {command::scan_binary, "scan-binary"},
}};

inline std::string_view command_name(command c) {
  for (const auto& [k, name] : kCommandNames) {
    if (k == c) return name;
  }
  return "?";
}

inline command parse_command(std::string_view name) {
  for (const auto& [k, n] : kCommandNames) {
    if (n == name) return k;
  }
  throw usage_error("unknown command: " + std::string(name));
}

struct RunConfig {
  command cmd = command::gamma;
  std::uint64_t xmax = 0;  // 0: command default
  std::uint64_t nmax = 0;
  std::uint64_t n = 0;
  int k = 3;
  std::uint64_t alpha_grid = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 42;
  bool all = false;
  std::filesystem::path outdir = ".";
  report_format format = report_format::csv;
  std::optional<std::filesystem::path> cache_dir;  // LOGLAB_CACHE_DIR, else outdir/cache

  [[nodiscard]] nlohmann::ordered_json echo() const {
    nlohmann::ordered_json j;
    j["command"] = std::string(command_name(cmd));
    j["xmax"] = xmax;
    j["nmax"] = nmax;
    j["n"] = n;
    j["k"] = k;
    j["alpha_grid"] = alpha_grid;
    j["samples"] = samples;
    j["seed"] = seed;
    j["all"] = all;
    j["format"] = format == report_format::csv ? "csv" : "json";
    return j;
  }
};

inline void validate(const RunConfig& c) {
  if (c.k < 1) throw usage_error("--k must be positive");
  if (c.seed == 0) throw usage_error("--seed must be positive");
  switch (c.cmd) {
    case command::gamma:
      if (c.n == 0 && c.nmax == 0 && !(c.all && c.xmax > 0)) {
        throw usage_error("gamma needs --n N, --nmax N, or --xmax X --all");
      }
      break;
    case command::arcs:
      if (c.n == 0 && c.nmax == 0) throw usage_error("arcs needs --n N or --nmax N");
      break;
    case command::scan_binary:
      if (c.nmax == 0) throw usage_error("scan-binary needs --nmax");
      break;
    default:
      break;
  }
  if (c.xmax == 1) throw usage_error("--xmax must be >= 2");
}

inline std::filesystem::path cache_directory(const RunConfig& c) {
  if (c.cache_dir) return *c.cache_dir;
  if (const char* env = std::getenv("LOGLAB_CACHE_DIR"); env && *env) return env;
  return c.outdir / "cache";
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, std::uint64_t xmax) {
  return dir / ("image_" + std::to_string(xmax) + ".lgl");
}

// Cached image when present (validated on load), otherwise sieve and build.
inline FlooredImage load_or_build_image(const RunConfig& c, std::uint64_t xmax) {
  const auto path = cache_file(cache_directory(c), xmax);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return load_cache(path);
  return build_floored_image(sieve(xmax));
}

// Exit status for an exception escaping run(): 2 usage, 3 io, 4 computation.
inline int exit_code(const std::exception& e) {
  if (dynamic_cast<const usage_error*>(&e)) return 2;
  if (dynamic_cast<const io_error*>(&e)) return 3;
  return 4;
}

namespace detail {

inline std::int64_t i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// 10, 100, ... below top, then top itself.
inline std::vector<std::uint64_t> decade_ladder(std::uint64_t top) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 10; v < top; v *= 10) out.push_back(v);
  out.push_back(top);
  return out;
}

inline Table run_sieve(const RunConfig& c) {
  const std::uint64_t xmax = c.xmax ? c.xmax : 1000000;
  const auto table = sieve(xmax);
  Table t{"sieve", {"x", "pi", "theta", "psi"}, {}};
  for (const auto x : decade_ladder(xmax)) {
    const auto xd = static_cast<double>(x);
    t.add_row({i64(x), i64(table.pi(xd)), chebyshev_theta(table, xd),
               chebyshev_psi(table, xd)});
  }
  t.summary["xmax"] = xmax;
  t.summary["count"] = table.size();
  return t;
}

inline Table run_image(const RunConfig& c) {
  const std::uint64_t xmax = c.xmax ? c.xmax : 100000;
  const auto dir = cache_directory(c);
  const auto path = cache_file(dir, xmax);
  FlooredImage image;
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    image = load_cache(path);
  } else {
    image = build_floored_image(sieve(xmax));
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create cache directory " + dir.string());
    save_cache(image, path);
  }
  Table t{"image", {"p", "f", "w"}, {}};
  for (const auto& e : image.entries()) t.add_row({i64(e.p), e.f, e.w});
  t.summary["xmax"] = xmax;
  t.summary["count"] = image.size();
  t.summary["maxfreq"] = image.maxfreq();
  t.summary["covered_freq"] = image.covered_freq();
  return t;
}

inline void add_rep_row(Table& t, const RepReport& r) {
  t.add_row({r.N, i64(r.R), r.gamma, r.mainterm, r.ratio});
}

inline Table run_gamma(const RunConfig& c) {
  Table t{"gamma", {"N", "R", "gamma", "mainterm", "ratio"}, {}};
  if (c.n) {
    const auto image = build_covering_image(std::max<std::uint64_t>(c.n, 2));
    add_rep_row(t, gamma_brute(i64(c.n), image));
    t.summary["method"] = "enumeration";
    return t;
  }
  FlooredImage image;
  std::int64_t top;
  if (c.nmax) {
    image = build_covering_image(std::max<std::uint64_t>(c.nmax, 3));
    top = i64(c.nmax);
  } else {
    image = load_or_build_image(c, c.xmax);
    top = image.covered_freq() + 2;
  }
  top = std::min(top, 3 * image.maxfreq());
  const auto reps = gamma_all_fast(image, top);
  std::vector<double> ns, ratios;
  for (const auto& r : reps) {
    add_rep_row(t, r);
    ns.push_back(static_cast<double>(r.N));
    ratios.push_back(r.ratio);
  }
  emit_plotdata(c.outdir / "gamma_ratio.csv", {{"N", ns}, {"ratio", ratios}});
  t.summary["method"] = "transform";
  t.summary["xmax"] = image.xmax();
  t.summary["primes"] = image.size();
  return t;
}

inline Table run_psik(const RunConfig& c) {
  const std::uint64_t nmax = c.n ? c.n : (c.nmax ? c.nmax : 100000);
  const auto weights = build_weight_series(nmax);
  const auto psi = psi_k_all(weights, c.k, nmax);
  Table t{"psik", {"N", "X", "psi", "model", "ratio"}, {}};
  const std::vector<std::uint64_t> points = c.n ? std::vector<std::uint64_t>{c.n} : decade_ladder(nmax);
  for (const auto N : points) {
    const double X = solve_ylogy(static_cast<double>(N)).y;
    const double model = std::pow(X, c.k - 1) / (1.0 + std::log(X));
    t.add_row({i64(N), X, psi[N], model, psi[N] / model});
  }
  t.summary["k"] = c.k;
  t.summary["nmax"] = nmax;
  return t;
}

inline Table run_expsum(const RunConfig& c) {
  const std::uint64_t xmax = c.xmax ? c.xmax : 10000;
  const std::uint64_t grid = c.alpha_grid ? c.alpha_grid : 64;
  const auto image = load_or_build_image(c, xmax);
  const double X = static_cast<double>(xmax);
  const auto N = static_cast<std::uint64_t>(std::floor(X * std::log(X)));
  const auto weights = build_weight_series(N);
  Table t{"expsum", {"alpha", "s_re", "s_im", "theta_re", "theta_im", "abs_diff"}, {}};
  for (std::uint64_t j = 0; j < grid; ++j) {
    const double a = static_cast<double>(j) / static_cast<double>(grid);
    const auto s = spectrum_sample(a, image, weights);
    t.add_row({a, s.svalue.real(), s.svalue.imag(), s.thetavalue.real(), s.thetavalue.imag(),
               std::abs(s.svalue - s.thetavalue)});
  }
  t.summary["X"] = X;
  t.summary["N"] = N;
  t.summary["tau"] = arc_tau(X);
  return t;
}

inline Table run_arcs(const RunConfig& c) {
  const std::uint64_t top = c.n ? c.n : c.nmax;
  const std::uint64_t first = c.n ? c.n : 3;
  const auto image = build_covering_image(std::max<std::uint64_t>(top, 3));
  const auto Q = circle_grid_size(image.maxfreq());
  const auto grid = make_spectrum_grid(image, Q);
  Table t{"arcs",
          {"N", "X", "tau", "H", "Q", "gamma1_re", "gamma1_im", "gamma2_re", "gamma2_im", "gamma", "gamma_brute"},
          {}};
  for (std::uint64_t N = first; N <= top; ++N) {
    const double X = std::max(2.0, solve_ylogy(static_cast<double>(N)).y);
    const auto part = make_partition(X, image.maxfreq());
    const auto ci = circle_integrals(i64(N), grid, part);
    const auto brute = gamma_brute(i64(N), image);
    t.add_row({i64(N), X, part.tau, part.H, i64(part.Q), ci.gamma1.real(), ci.gamma1.imag(), ci.gamma2.real(),
               ci.gamma2.imag(), ci.total().real(), brute.gamma});
  }
  t.summary["maxfreq"] = image.maxfreq();
  return t;
}

inline Table run_lemmas(const RunConfig& c) {
  const std::uint64_t xmax = c.xmax ? c.xmax : (std::uint64_t{1} << 16);
  const std::uint64_t samples = c.samples ? c.samples : 10000;
  const std::uint64_t grid = c.alpha_grid ? c.alpha_grid : 1001;
  std::mt19937_64 rng(c.seed);
  Table t{"lemmas", {"quantity", "parameter", "value", "normalized"}, {}};

  std::vector<double> xs, devs, devn, s2v, s2n;
  for (int e = 12; (std::uint64_t{1} << e) <= xmax; e += 2) {
    const auto xi = std::uint64_t{1} << e;
    const auto X = static_cast<double>(xi);
    const auto table = sieve(xi);
    const auto image = build_floored_image(table);
    const auto weights = build_weight_series(static_cast<std::uint64_t>(std::floor(X * std::log(X))));
    const auto dev = major_arc_deviation(X, image, weights, grid);
    t.add_row({std::string("major_arc_deviation"), X, dev.deviation, dev.normalized});

    const auto powers = prime_powers(table, xi);
    const double L = std::log(X);
    const double s1 = s1_sup(powers, arc_tau(X), arc_H(X), 1001).value;
    t.add_row({std::string("s1"), X, s1, s1 / (std::pow(X, 24.0 / 25.0) * L * L * L)});
    const double s2 = s2_sum(X, arc_H(X));
    t.add_row({std::string("s2"), X, s2, s2 / (std::pow(X, 24.0 / 25.0) * L * L)});
    t.add_row({std::string("vdc_max_ratio"), X, vdc_max_ratio(xi / 2, xi, 32), 0.0});

    xs.push_back(X);
    devs.push_back(dev.deviation);
    devn.push_back(dev.normalized);
    s2v.push_back(s2);
    s2n.push_back(s2 / (std::pow(X, 24.0 / 25.0) * L * L));
  }

  for (const std::int64_t H : {8, 64, 512}) {
    t.add_row({std::string("buriev_constant"), static_cast<double>(H), buriev_constant(H, samples, rng), 0.0});
  }

  std::uniform_real_distribution<double> ua(-0.25, 0.25);
  std::uniform_real_distribution<double> uy(2.0, 1000.0);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < std::min<std::uint64_t>(samples, 1000); ++i) {
    const double a = ua(rng);
    const double y = uy(rng);
    worst = std::max(worst, sum_vs_integral_residual(a, y));
  }
  t.add_row({std::string("sum_vs_integral_max"), 0.25, worst, 0.0});

  if (!xs.empty()) {
    emit_plotdata(c.outdir / "major_dev.csv", {{"X", xs}, {"deviation", devs}, {"normalized", devn}});
    emit_plotdata(c.outdir / "s2_norm.csv", {{"X", xs}, {"s2", s2v}, {"normalized", s2n}});
  }
  t.summary["rng"] = "mt19937_64";
  t.summary["seed"] = c.seed;
  return t;
}

inline Table run_scan_binary(const RunConfig& c) {
  const auto image = build_covering_image(std::max<std::uint64_t>(c.nmax, 2));
  Table t{"scan-binary", {"N"}, {}};
  for (const auto N : binary_scan(image, i64(c.nmax))) t.add_row({N});
  t.summary["nmax"] = c.nmax;
  t.summary["unrepresentable"] = t.rows.size();
  return t;
}

}  // namespace detail

inline Table execute(const RunConfig& c) {
  switch (c.cmd) {
    case command::sieve: return detail::run_sieve(c);
    case command::image: return detail::run_image(c);
    case command::gamma: return detail::run_gamma(c);
    case command::psik: return detail::run_psik(c);
    case command::expsum: return detail::run_expsum(c);
    case command::arcs: return detail::run_arcs(c);
    case command::lemmas: return detail::run_lemmas(c);
    case command::scan_binary: return detail::run_scan_binary(c);
  }
  throw usage_error("unknown command");
}

// Runs one experiment and writes its files. Throws loglab::error subclasses;
// map them with exit_code().
inline Table run(const RunConfig& c) {
  validate(c);
  std::error_code ec;
  std::filesystem::create_directories(c.outdir, ec);
  if (ec) throw io_error("cannot create output directory " + c.outdir.string());

  const auto start = std::chrono::steady_clock::now();
  Table t = execute(c);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (c.format == report_format::csv) {
    write_text(c.outdir / "report.csv", to_csv(t));
  } else {
    write_text(c.outdir / "report.json", to_json(t).dump(2) + "\n");
  }
  nlohmann::ordered_json meta;
  meta["version"] = std::string(kVersion);
  meta["config"] = c.echo();
  meta["rng"] = "mt19937_64";
  meta["seed"] = c.seed;
  meta["cache_dir"] = cache_directory(c).string();
  meta["wall_seconds"] = wall;
  write_text(c.outdir / "meta.json", meta.dump(2) + "\n");
  return t;
}

}  // namespace loglab

#endif  // LOGLAB_CLI_HPP
