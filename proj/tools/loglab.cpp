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


// loglab: command-line front end.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "loglab/cli.hpp"

namespace {

void add_common(CLI::App* sub, loglab::RunConfig& c, std::string& format, std::string& outdir, std::string& cache) {
  sub->add_option("--xmax", c.xmax, "largest prime bound")->check(CLI::PositiveNumber);
  sub->add_option("--nmax", c.nmax, "largest N")->check(CLI::PositiveNumber);
  sub->add_option("--n", c.n, "single N")->check(CLI::PositiveNumber);
  sub->add_option("--k", c.k, "convolution order (psik)")->check(CLI::PositiveNumber);
  sub->add_option("--alpha-grid", c.alpha_grid, "alpha grid points")->check(CLI::PositiveNumber);
  sub->add_option("--samples", c.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "RNG seed")->check(CLI::PositiveNumber);
  sub->add_flag("--all", c.all, "every admissible N");
  sub->add_option("--outdir", outdir, "output directory");
  sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--cache-dir", cache, "image cache directory (default $LOGLAB_CACHE_DIR or OUTDIR/cache)");
}

const char* describe(loglab::command c) {
  switch (c) {
    case loglab::command::sieve: return "pi, theta and psi on a decade ladder";
    case loglab::command::image: return "floored image [p ln p] of the primes, cached";
    case loglab::command::gamma: return "R(N), weighted count and main-term ratio";
    case loglab::command::psik: return "k-fold smooth convolutions against X^(k-1) / (1 + ln X)";
    case loglab::command::expsum: return "S(alpha) and Theta(alpha) on a uniform alpha grid";
    case loglab::command::arcs: return "major/minor split of the circle identity";
    case loglab::command::lemmas: return "numerical ledgers for the exponential-sum bounds";
    case loglab::command::scan_binary: return "N with no two-term representation";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loglab: ternary [p ln p] representations and their exponential sums"};
  app.set_version_flag("--version", std::string(loglab::kVersion));
  app.require_subcommand(1);

  loglab::RunConfig config;
  std::string format = "csv";
  std::string outdir = ".";
  std::string cache;

  for (const auto& [cmd, name] : loglab::kCommandNames) {
    auto* sub = app.add_subcommand(std::string(name), describe(cmd));
    add_common(sub, config, format, outdir, cache);
    sub->callback([&config, cmd = cmd] { config.cmd = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.outdir = outdir;
  config.format = format == "json" ? loglab::report_format::json : loglab::report_format::csv;
  if (!cache.empty()) config.cache_dir = cache;

  try {
    const auto table = loglab::run(config);
    std::cerr << "loglab " << loglab::command_name(config.cmd) << ": " << table.rows.size() << " rows -> "
              << config.outdir.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "loglab: " << e.what() << "\n";
    return loglab::exit_code(e);
  }
  return 0;
}
