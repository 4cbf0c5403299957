#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qnls/cli.hpp"
#include "qnls/errors.hpp"

using namespace qnls;
using qnls::cli::RunConfig;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "qnls_cli_test" / name;
  fs::remove_all(d);
  return d;
}

nlohmann::json summary(const fs::path& dir) {
  std::ifstream in(dir / "summary.json");
  return nlohmann::json::parse(in);
}

cli::Flags flags(const std::string& command, const fs::path& out) {
  cli::Flags f;
  f.command = command;
  f.out = out;
  return f;
}

}  // namespace

TEST_CASE("canonical configs round-trip byte for byte") {
  const std::string text = "[run]\nexperiment=groundstate\nseed=4\n[params]\ndim=1\nkappa=2\nc=0.5,0\n";
  const auto cfg = RunConfig::parse(text);
  CHECK(cfg.echo() == text);
  CHECK(cfg.integer("run", "seed", 0) == 4);
  CHECK(cfg.number("params", "kappa", 0.0) == 2.0);
  CHECK(cfg.numbers("params", "c", {}) == std::vector<double>{0.5, 0.0});
  CHECK(cfg.text("params", "missing", "x") == "x");
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_AS(RunConfig::parse("dim=1\n"), FormatError);
  CHECK_THROWS_AS(RunConfig::parse("[a\nx=1\n"), FormatError);
  const auto cfg = RunConfig::parse("[p]\nx=abc\ny=1.5\n");
  CHECK_THROWS_AS(cfg.number("p", "x", 0.0), ValidationError);
  CHECK_THROWS_AS(cfg.integer("p", "y", 0), ValidationError);
  CHECK_THROWS_AS(cfg.flag("p", "x", false), ValidationError);
}

TEST_CASE("d = 6 exits with the validation status") {
  const auto out = scratch("d6");
  const auto cfg = RunConfig::parse("[params]\ndim=6\n");
  CHECK(cli::run(cfg, flags("groundstate", out)) == cli::Exit::validation);
}

TEST_CASE("a config naming another experiment is refused") {
  const auto out = scratch("mismatch");
  const auto cfg = RunConfig::parse("[run]\nexperiment=evolve\n[params]\ndim=1\n");
  CHECK(cli::run(cfg, flags("groundstate", out)) == cli::Exit::validation);
}

TEST_CASE("a converged ground state writes a summary and a checkpoint") {
  const auto out = scratch("gs");
  const auto cfg = RunConfig::parse(
      "[params]\ndim=1\nkappa=2\nomega=1\nc=0\n[grid]\npoints=256\nbox=60\n[solver]\nseeds=1\n");
  REQUIRE(cli::run(cfg, flags("groundstate", out)) == cli::Exit::ok);
  const auto s = summary(out);
  CHECK(s["status"] == "ok");
  CHECK(s["config"] == cfg.echo());
  CHECK(s["results"]["groundstate"]["mu"].get<double>() == doctest::Approx(1.8).epsilon(1e-5));
  CHECK(fs::exists(out / "groundstate.qnlsf"));
  CHECK(fs::exists(out / "config.ini"));
}

TEST_CASE("the mass-resonant point exits with the non-convergence status") {
  const auto out = scratch("resonant");
  const auto cfg = RunConfig::parse(
      "[run]\nexploratory=true\n[params]\ndim=1\nkappa=0.5\nomega=0.25\nc=1\n[grid]\npoints=256\nbox=64\n"
      "[solver]\nseeds=2\n");
  CHECK(cli::run(cfg, flags("groundstate", out)) == cli::Exit::nonconvergence);
  CHECK(summary(out)["status"] == "not_converged");
}

TEST_CASE("evolution writes a trace") {
  const auto out = scratch("evolve");
  const auto cfg = RunConfig::parse(
      "[params]\ndim=1\nkappa=2\nomega=1\n[grid]\npoints=128\nbox=40\n[evolve]\nT=0.1\ndt=0.001\ncadence=10\n");
  REQUIRE(cli::run(cfg, flags("evolve", out)) == cli::Exit::ok);
  std::ifstream trace(out / "trace.csv");
  std::string header;
  std::getline(trace, header);
  CHECK(header.rfind("t,q,e,p0", 0) == 0);
}

TEST_CASE("the oracle check passes from the command layer") {
  const auto out = scratch("check");
  CHECK(cli::run(RunConfig{}, flags("check", out)) == cli::Exit::ok);
  CHECK(summary(out)["results"]["pass"] == true);
}

TEST_CASE("the report indexes runs and flags missing checkpoints") {
  const auto root = scratch("bundle");
  const auto cfg = RunConfig::parse(
      "[params]\ndim=1\nkappa=2\nomega=1\nc=0\n[grid]\npoints=128\nbox=40\n[solver]\nseeds=1\n");
  REQUIRE(cli::run(cfg, flags("groundstate", root / "one")) == cli::Exit::ok);
  REQUIRE(cli::run(cfg, flags("groundstate", root / "two")) == cli::Exit::ok);
  fs::remove(root / "two" / "groundstate.qnlsf");
  const auto index = nlohmann::json::parse(cli::report_bundle(root));
  REQUIRE(index["runs"].size() == 2);
  CHECK(index["runs"][0]["run"] == "one");
  CHECK(index["runs"][0]["complete"] == true);
  CHECK(index["runs"][1]["complete"] == false);
  CHECK(fs::exists(root / "index.json"));
}
