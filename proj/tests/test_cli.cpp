#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <string>

#include "helpers.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  testutil::TempDir tmp("cli_out");
  const std::string log = (tmp / "log.txt").string();
  const std::string cmd = std::string(PVCAST_CLI_PATH) + " " + args + " > " + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.output = testutil::slurp(log);
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("cli walks synth, fit, evaluate and predict end to end") {
  testutil::TempDir dir("cli_e2e");
  const std::string common = " --out-dir " + q(dir.path()) + " --data " +
                             q(dir / "dataset.csv") + " --seed 11 ";

  auto synth = run_cli("synth --days 20" + common);
  INFO(synth.output);
  REQUIRE(synth.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "dataset.csv"));

  auto fit = run_cli("fit" + common);
  INFO(fit.output);
  REQUIRE(fit.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "model_temperature_arx.json"));
  CHECK(fit.output.find("hour") != std::string::npos);

  auto eval = run_cli("evaluate" + common);
  INFO(eval.output);
  REQUIRE(eval.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(eval.output.find("accuracy%") != std::string::npos);

  auto predict = run_cli("predict --at 2018-01-15T20:00:00Z" + common);
  INFO(predict.output);
  REQUIRE(predict.exit_code == 0);
  CHECK(predict.output.find("\"power_w\"") != std::string::npos);
}

TEST_CASE("cli failures are single-line categorized errors") {
  auto missing = run_cli("fit --data /nonexistent/nowhere.csv");
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.rfind("error: IoError:", 0) == 0);

  auto bad_kind = run_cli("fit --kind quux --data /nonexistent/nowhere.csv");
  CHECK(bad_kind.exit_code == 1);
  CHECK(bad_kind.output.rfind("error: ConfigError:", 0) == 0);

  auto no_sub = run_cli("");
  CHECK(no_sub.exit_code != 0);
}

TEST_CASE("cli runs are deterministic at the byte level") {
  testutil::TempDir a("cli_det_a");
  testutil::TempDir b("cli_det_b");
  for (const auto* dir : {&a, &b}) {
    const std::string common = " --out-dir " + q(dir->path()) + " --data " +
                               q(*dir / "dataset.csv") + " --seed 321 ";
    REQUIRE(run_cli("synth --days 12" + common).exit_code == 0);
    REQUIRE(run_cli("fit" + common).exit_code == 0);
    REQUIRE(run_cli("evaluate" + common).exit_code == 0);
  }
  for (const char* name : {"dataset.csv", "report.json", "accuracy.csv", "fit_summary.csv"}) {
    INFO(name);
    CHECK(testutil::slurp(a / name) == testutil::slurp(b / name));
  }
}
