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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "loglab/cli.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("loglab_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LOGLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

TEST(Report, CsvFormat) {
  loglab::Table t{"x", {"a", "b", "c"}, {}};
  t.add_row({std::int64_t{3}, 0.1, std::string("s")});
  EXPECT_EQ(loglab::to_csv(t), "a,b,c\n3,0.10000000000000001,s\n");
  EXPECT_THROW(t.add_row({std::int64_t{1}}), loglab::domain_error);
  EXPECT_EQ(loglab::format_double(1.0 / 0.0), "inf");
}

TEST(Report, JsonShape) {
  loglab::Table t{"gamma", {"N", "ratio"}, {}};
  t.add_row({std::int64_t{2}, 0.0});
  t.add_row({std::int64_t{3}, std::nan("")});
  const auto j = loglab::to_json(t);
  EXPECT_EQ(j["format"], "loglab-report/1");
  EXPECT_EQ(j["rows"][0][0], 2);
  EXPECT_TRUE(j["rows"][1][1].is_null());
}

TEST(Report, PlotData) {
  const auto dir = scratch("plot");
  fs::create_directories(dir);
  loglab::emit_plotdata(dir / "p.csv", {{"x", {1.0, 2.0}}, {"y", {0.5, 0.25}}});
  EXPECT_EQ(slurp(dir / "p.csv"), "x,y\n1,0.5\n2,0.25\n");
  EXPECT_THROW(loglab::emit_plotdata(dir / "q.csv", {{"x", {1.0}}, {"y", {}}}), loglab::domain_error);
  EXPECT_THROW(loglab::emit_plotdata(dir / "no/such/dir/q.csv", {{"x", {1.0}}}), loglab::io_error);
  fs::remove_all(dir);
}

TEST(Config, Validation) {
  loglab::RunConfig c;
  c.cmd = loglab::command::gamma;
  EXPECT_THROW(loglab::validate(c), loglab::usage_error);
  c.n = 5;
  EXPECT_NO_THROW(loglab::validate(c));
  c.k = 0;
  EXPECT_THROW(loglab::validate(c), loglab::usage_error);
  c.k = 3;
  c.cmd = loglab::command::scan_binary;
  EXPECT_THROW(loglab::validate(c), loglab::usage_error);
  EXPECT_EQ(loglab::parse_command("scan-binary"), loglab::command::scan_binary);
  EXPECT_THROW(loglab::parse_command("nope"), loglab::usage_error);
}

TEST(Config, ExitCodes) {
  EXPECT_EQ(loglab::exit_code(loglab::usage_error("x")), 2);
  EXPECT_EQ(loglab::exit_code(loglab::io_error("x")), 3);
  EXPECT_EQ(loglab::exit_code(loglab::corrupt_cache("x")), 4);
  EXPECT_EQ(loglab::exit_code(loglab::coverage_error("x")), 4);
}

TEST(Config, CacheDirectory) {
  loglab::RunConfig c;
  c.outdir = "/tmp/o";
  c.cache_dir = "/tmp/c";
  EXPECT_EQ(loglab::cache_directory(c), fs::path("/tmp/c"));
  c.cache_dir.reset();
  ::setenv("LOGLAB_CACHE_DIR", "/tmp/env", 1);
  EXPECT_EQ(loglab::cache_directory(c), fs::path("/tmp/env"));
  ::unsetenv("LOGLAB_CACHE_DIR");
  EXPECT_EQ(loglab::cache_directory(c), fs::path("/tmp/o/cache"));
}

TEST(Cli, GammaSingleTwo) {
  const auto dir = scratch("g2");
  ASSERT_EQ(run_cli("gamma --n 2 --outdir " + dir.string()), 0);
  const auto csv = slurp(dir / "report.csv");
  const std::string mt = loglab::format_double(loglab::main_term(2.0));
  EXPECT_EQ(csv, "N,R,gamma,mainterm,ratio\n2,0,0," + mt + ",0\n");
  const auto meta = nlohmann::json::parse(slurp(dir / "meta.json"));
  EXPECT_EQ(meta["version"], "0.1.0");
  EXPECT_EQ(meta["seed"], 42);
  EXPECT_TRUE(meta.contains("wall_seconds"));
  fs::remove_all(dir);
}

TEST(Cli, GammaAll) {
  const auto dir = scratch("gall");
  ASSERT_EQ(run_cli("gamma --xmax 200 --all --outdir " + dir.string()), 0);
  const auto csv = slurp(dir / "report.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,R,gamma,mainterm,ratio");
  EXPECT_NE(csv.find("\n3,1,0.333024651989"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "gamma_ratio.csv"));
  fs::remove_all(dir);
}

TEST(Cli, ScanBinary) {
  const auto dir = scratch("scan");
  ASSERT_EQ(run_cli("scan-binary --nmax 1000 --outdir " + dir.string()), 0);
  const auto csv = slurp(dir / "report.csv");
  EXPECT_EQ(csv.substr(0, 13), "N\n3\n5\n7\n8\n10\n");
  fs::remove_all(dir);
}

TEST(Cli, ImageCacheIsReused) {
  const auto dir = scratch("img");
  ASSERT_EQ(run_cli("image --xmax 5000 --outdir " + dir.string()), 0);
  const auto first = slurp(dir / "report.csv");
  ASSERT_TRUE(fs::exists(dir / "cache" / "image_5000.lgl"));
  ASSERT_EQ(run_cli("image --xmax 5000 --outdir " + dir.string()), 0);
  EXPECT_EQ(slurp(dir / "report.csv"), first);

  // damaged cache: computation error, exit 4
  {
    std::fstream f(dir / "cache" / "image_5000.lgl", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.put('\x7f');
  }
  EXPECT_EQ(run_cli("image --xmax 5000 --outdir " + dir.string()), 4);
  fs::remove_all(dir);
}

TEST(Cli, ExitStatuses) {
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("bogus"), 2);
  EXPECT_EQ(run_cli("gamma"), 2);
  EXPECT_EQ(run_cli("gamma --n -3"), 2);
  EXPECT_EQ(run_cli("gamma --n 5 --format xml"), 2);
  EXPECT_EQ(run_cli("gamma --n 5 --outdir /proc/loglab_forbidden"), 3);
  EXPECT_EQ(run_cli("--version"), 0);
}

}  // namespace
