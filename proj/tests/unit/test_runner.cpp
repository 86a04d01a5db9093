#include <doctest.h>

#include <json.hpp>
#include <string>

#include "helpers.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/runner.hpp"

using namespace subdiff;

namespace {

RunResult run(const std::string& text, const std::filesystem::path& out, int workers = 0) {
  RunOptions o;
  o.out = out;
  o.workers = workers;
  return run_experiment(Config::parse(text, "test.cfg"), o);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bf-diagnostics reports the H grid") {
  const auto dir = testing::scratch_dir("bf");
  const auto r = run("kind = bf-diagnostics\nphi = stable; beta = 1.0\n", dir);
  CHECK(r.ok());
  const auto j = nlohmann::json::parse(testing::slurp(dir / "report.json"));
  const auto& lam = j["grid"]["lambda"];
  bool found = false;
  for (std::size_t i = 0; i < lam.size(); ++i)
    if (lam[i].get<double>() == 4.0) {
      CHECK(j["grid"]["H"][i].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
      found = true;
    }
  CHECK(found);
  CHECK(j["version"] == artifact_version());
  CHECK(j["config_hash"].get<std::string>().size() == 16);
}

TEST_CASE("verify-T0 with drift_only passes trivially") {
  const auto dir = testing::scratch_dir("t0");
  const auto r = run("kind = verify-T0\nphi = drift_only\nn = 200\n", dir);
  REQUIRE(r.items.size() == 2);
  CHECK(r.ok());
}

TEST_CASE("outputs embed hash, seed, n, dt and version") {
  const auto dir = testing::scratch_dir("meta");
  run("kind = survival\nphi = drift_only\ndomain = interval\nn = 300\nseed = 99\ndt = 0.01\n", dir);
  const auto csv = testing::slurp(dir / "survival.csv");
  CHECK(csv.rfind("t,delta,x0,value,stderr,oracle,z,config_hash,seed,n,dt,version\n", 0) == 0);
  CHECK(csv.find(",99,300,0.01,") != std::string::npos);
  const auto summary = testing::slurp(dir / "summary.txt");
  CHECK(summary.find("seed: 99") != std::string::npos);
  CHECK(summary.find(std::string("version: ") + artifact_version()) != std::string::npos);
}

TEST_CASE("same seed gives byte-identical outputs for any worker count") {
  const std::string cfg =
      "kind = simulate\nphi = stable; beta = 1\ndomain = ball; dim = 2\nn = 500\nhorizon = 1\nseed = 4\n";
  const auto a = testing::scratch_dir("det_a");
  const auto b = testing::scratch_dir("det_b");
  const auto c = testing::scratch_dir("det_c");
  run(cfg, a, 1);
  run(cfg, b, 1);
  run(cfg, c, 4);
  for (const char* f : {"paths.csv", "report.json", "summary.txt"}) {
    CHECK(testing::slurp(a / f) == testing::slurp(b / f));
    CHECK(testing::slurp(a / f) == testing::slurp(c / f));
  }
  const auto d = testing::scratch_dir("det_d");
  RunOptions o;
  o.out = d;
  o.seed = 5;
  run_experiment(Config::parse(cfg), o);
  CHECK(testing::slurp(a / "paths.csv") != testing::slurp(d / "paths.csv"));
}

TEST_CASE("a failing band makes the run fail") {
  const auto dir = testing::scratch_dir("band");
  const auto r = run("kind = survival\nphi = drift_only\ndomain = interval\nn = 300\nband.oracle_z = 0\n", dir);
  REQUIRE(r.items.size() == 1);
  CHECK_FALSE(r.ok());
  CHECK(testing::slurp(dir / "summary.txt").find("result: FAIL") != std::string::npos);
}

TEST_CASE("configuration errors") {
  const auto dir = testing::scratch_dir("err");
  CHECK_THROWS_AS(run("kind = teleport\n", dir), ConfigError);
  CHECK_THROWS_AS(run("kind = survival\nphi = stable; beta = 1\ndomain = interval\nbogus = 1\n", dir), ConfigError);
  CHECK_THROWS_AS(run("kind = survival\nphi = stable; beta = 1\ndomain = interval\nn = 50\n", dir), ConfigError);
  CHECK_THROWS_AS(run("kind = survival\nphi = stable; beta = 1\ndomain = interval\ndt = -1\n", dir), ConfigError);
  try {
    run("kind = teleport\n", dir);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("oracle-checks") != std::string::npos);
  }
}

}  // TEST_SUITE
