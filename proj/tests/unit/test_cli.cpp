#include "cli.hpp"
#include "run_config.hpp"

#include "ladderlab/errors.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace ladderlab;
using namespace ladderlab::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ladderlab_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ladderlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(RunConfig, StreamParsing) {
  RunConfig cfg;
  std::istringstream in("# comment\n\ntol = 1e-7\nT0=2000\nc0=0.5\nthreads=2\nformat=json\nmax_height=2e6\ncache_path=/tmp/x.llz\n");
  apply_config_stream(cfg, in, "test");
  EXPECT_EQ(cfg.tol, 1e-7);
  EXPECT_EQ(cfg.T0, 2000.0);
  EXPECT_EQ(cfg.c0, 0.5);
  EXPECT_EQ(cfg.thread_budget, 2);
  EXPECT_EQ(cfg.output_format, OutputFormat::json);
  EXPECT_EQ(cfg.max_height, 2e6);
  EXPECT_EQ(cfg.cache_path, "/tmp/x.llz");

  RunConfig other;
  std::istringstream unknown("colour=blue\n");
  EXPECT_THROW(apply_config_stream(other, unknown, "test"), DomainError);
  std::istringstream bad("tol=abc\n");
  EXPECT_THROW(apply_config_stream(other, bad, "test"), DomainError);
  EXPECT_THROW(apply_config_file(other, scratch("nope.cfg")), DomainError);
  EXPECT_THROW(parse_format("xml"), DomainError);
}

TEST(RunConfig, Validation) {
  RunConfig ok;
  ok.cache_path = "x.llz";
  EXPECT_NO_THROW(validate(ok));
  auto bad = ok;
  bad.tol = 1e-2;
  EXPECT_THROW(validate(bad), DomainError);
  bad = ok;
  bad.T0 = 10.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = ok;
  bad.max_height = 500.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = ok;
  bad.thread_budget = -1;
  EXPECT_THROW(validate(bad), DomainError);
  bad = ok;
  bad.cache_path.clear();
  EXPECT_THROW(validate(bad), DomainError);
}

TEST(RunConfig, Precedence) {
  const auto file = scratch("prec.cfg");
  {
    std::ofstream out(file);
    out << "cache_path=/from/file.llz\ntol=1e-7\n";
  }
  ::setenv("LADDERLAB_CACHE", "/from/env.llz", 1);
  ConfigOverrides none;
  auto cfg = resolve_config(file, none);
  EXPECT_EQ(cfg.cache_path, "/from/env.llz");
  EXPECT_EQ(cfg.tol, 1e-7);
  ConfigOverrides flags;
  flags.cache_path = "/from/flag.llz";
  flags.tol = 1e-8;
  flags.no_build = true;
  cfg = resolve_config(file, flags);
  EXPECT_EQ(cfg.cache_path, "/from/flag.llz");
  EXPECT_EQ(cfg.tol, 1e-8);
  EXPECT_FALSE(cfg.allow_build);
  ::unsetenv("LADDERLAB_CACHE");
  cfg = resolve_config(std::nullopt, none);
  EXPECT_EQ(cfg.cache_path, default_cache_path());
  EXPECT_FALSE(default_cache_path().empty());
}

TEST(Cli, ZetaPoint) {
  const auto r = invoke({"zeta", "--t", "100"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("t,z_value,modulus_sq,method,est_abs_error\n", 0), 0u);
  EXPECT_EQ(lines(r.out), 2u);
  EXPECT_NE(r.out.find(",2.692697"), std::string::npos);
}

TEST(Cli, ZetaRangeDeterministic) {
  const auto a = invoke({"zeta", "--range", "100", "200", "--step", "0.1"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(lines(a.out), 1002u);
  const auto b = invoke({"--threads", "1", "zeta", "--range", "100", "200", "--step", "0.1"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ZetaJson) {
  const auto r = invoke({"--format", "json", "zeta", "--t", "1000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_NEAR(j[0]["z_value"].get<double>(), 0.997794637521586613986, 1e-8);
}

TEST(Cli, DomainErrors) {
  EXPECT_EQ(invoke({"zeta", "--t", "5"}).code, kExitDomain);
  EXPECT_EQ(invoke({"zeta"}).code, kExitDomain);
  EXPECT_EQ(invoke({"bogus"}).code, kExitDomain);
  EXPECT_EQ(invoke({"--tol", "1", "zeta", "--t", "100"}).code, kExitDomain);
  EXPECT_EQ(invoke({"--cache", scratch("c1.llz").string(), "ladder", "--T", "50", "--reverse", "1"}).code,
            kExitDomain);
  EXPECT_EQ(invoke({"--cache", scratch("c1.llz").string(), "experiment", "nope"}).code, kExitDomain);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, MissingCacheWithoutBuild) {
  const auto r = invoke({"--cache", scratch("absent.llz").string(), "--no-build", "ladder", "--T", "1000",
                         "--reverse", "1"});
  EXPECT_EQ(r.code, kExitCache);
  EXPECT_NE(r.err.find("cache"), std::string::npos);
}

TEST(Cli, LadderAndGrid) {
  const auto cache = scratch("ladder.llz").string();
  const auto rev = invoke({"--cache", cache, "ladder", "--T", "1000", "--reverse", "2"});
  ASSERT_EQ(rev.code, kExitOk) << rev.err;
  EXPECT_EQ(rev.out.rfind("direction,j,t\n", 0), 0u);
  EXPECT_EQ(lines(rev.out), 4u);
  EXPECT_NE(rev.out.find("reverse,2,1137.3"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(cache));

  const auto again = invoke({"--cache", cache, "--no-build", "ladder", "--T", "1000", "--reverse", "2"});
  ASSERT_EQ(again.code, kExitOk) << again.err;
  EXPECT_EQ(again.out, rev.out);

  const auto fwd = invoke({"--cache", cache, "ladder", "--T", "1000", "--forward", "2"});
  ASSERT_EQ(fwd.code, kExitOk) << fwd.err;
  EXPECT_EQ(lines(fwd.out), 3u);

  const auto info = invoke({"--cache", cache, "grid", "info"});
  ASSERT_EQ(info.code, kExitOk) << info.err;
  const auto j = nlohmann::json::parse(info.out);
  EXPECT_GE(j["t_max"].get<double>(), 1137.0);
}

TEST(Cli, ExperimentVerdictOnStderr) {
  const auto cache = scratch("exp.llz").string();
  const auto r = invoke({"--cache", cache, "experiment", "theorem1", "--tau", "1000,10000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("experiment_id,params,tau,value,target,deviation,error_scale\n", 0), 0u);
  EXPECT_EQ(lines(r.out), 3u);
  EXPECT_NE(r.err.find("verdict="), std::string::npos);
  EXPECT_NE(r.err.find("q=2 != 1"), std::string::npos);
}
