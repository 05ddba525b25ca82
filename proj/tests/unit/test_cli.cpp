#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hilbmod/cli.hpp"

using namespace hilbmod;

namespace {

int exitCodeOf(const std::vector<std::string>& args) {
  try {
    parse_args(args);
  } catch (const CliExit& e) {
    return e.code();
  }
  return -1;
}

std::string messageOf(const std::vector<std::string>& args) {
  try {
    parse_args(args);
  } catch (const CliExit& e) {
    return e.what();
  }
  return {};
}

struct Run {
  int code;
  std::string out, err;
};

Run runCli(std::vector<std::string> args) {
  args.insert(args.begin(), "hilbmod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hilbmod_test_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("example5 flags") {
  RunConfig c = parse_args({"example5", "--m", "2", "--delta", "0.25,1.0", "--degrees", "8,12,16,20"});
  CHECK(c.experiment == "example5");
  CHECK(c.m == 2);
  CHECK(c.deltas == std::vector<double>{0.25, 1.0});
  CHECK(c.degrees == std::vector<int>{8, 12, 16, 20});
}

TEST_CASE("arveson-probe flags") {
  RunConfig c = parse_args({"arveson-probe", "--family", "drury-arveson", "--m", "2", "--gens", "z1^2+z2^2", "--p", "3"});
  CHECK(c.family == "drury-arveson");
  CHECK(c.generators == std::vector<std::string>{"z1^2+z2^2"});
  CHECK(c.pValues == std::vector<double>{3.0});
}

TEST_CASE("usage errors exit with 2") {
  CHECK(exitCodeOf({"example5", "--delta", "0.25"}) == 2);
  CHECK(messageOf({"example5", "--delta", "0.25"}).find("--m") != std::string::npos);
  CHECK(exitCodeOf({"no-such-experiment"}) == 2);
  CHECK(exitCodeOf({"example5", "--m", "2", "--bogus", "1"}) == 2);
  CHECK(exitCodeOf({"example5", "--m", "two"}) == 2);
  CHECK(exitCodeOf({"example5", "--m", "2", "--delta", "0.25,,1"}) == 2);
  CHECK(exitCodeOf({"lemma1-check", "--seed", "-3"}) == 2);
  CHECK(exitCodeOf({"example5", "--m", "2", "--help"}) == 0);

  const std::string msg = messageOf({"arveson-probe", "--m", "2", "--gens", "z1^2 + z3"});
  CHECK(exitCodeOf({"arveson-probe", "--m", "2", "--gens", "z1^2 + z3"}) == 2);
  CHECK(msg.find("position 8") != std::string::npos);
}

TEST_CASE("help documents the grammar and the config schema") {
  for (const char* sub : {"example3", "counterexample", "example5", "arveson-probe", "berger-shaw", "quotient-probe",
                          "lemma1-check"}) {
    const std::string help = messageOf({sub, "--help"});
    INFO(sub);
    CHECK(help.find("Polynomial syntax") != std::string::npos);
    CHECK(help.find("key = value") != std::string::npos);
  }
}

TEST_CASE("config text round trip") {
  RunConfig c = parse_args({"berger-shaw", "--m", "2", "--family", "drury-arveson", "--points", "0.3:0.1,0.2-0.1i:0.5i",
                            "--degrees", "4,6", "--seed", "99", "--threads", "2", "--tag", "t1",
                            "--converge-rate", "1.3", "--fit-begin", "0.1"});
  RunConfig back = parse_config_text(config_text(c));
  CHECK(back == c);
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[1][0] == Scalar(0.2, -0.1));
  CHECK(c.points[1][1] == Scalar(0.0, 0.5));

  RunConfig q = parse_args({"quotient-probe", "--m", "3", "--gens", "z1*z2 - z3^2,z1", "--zero-dim", "1", "--p", "1,inf"});
  CHECK(parse_config_text(config_text(q)) == q);

  CHECK_THROWS_AS(parse_config_text("experiment = example5\nm = 2\ncolour = red\n"), CliExit);
  CHECK_THROWS_AS(parse_config_text("m = 2\n"), CliExit);
  RunConfig withComments = parse_config_text("# sweep\nexperiment = example5\n\nm = 3  \ndelta = 1, 1.25\n");
  CHECK(withComments.m == 3);
  CHECK(withComments.deltas == std::vector<double>{1.0, 1.25});
}

TEST_CASE("flags override the config file") {
  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  const auto file = dir / "run.cfg";
  {
    std::ofstream os(file);
    os << "experiment = example5\nm = 3\ndelta = 0.5\nseed = 4\n";
  }
  RunConfig c = parse_args({"example5", "--config", file.string(), "--m", "2"});
  CHECK(c.m == 2);
  CHECK(c.deltas == std::vector<double>{0.5});
  CHECK(c.seed == 4);
  CHECK(exitCodeOf({"example3", "--config", file.string()}) == 2);
  CHECK(exitCodeOf({"example5", "--config", (dir / "missing.cfg").string()}) == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("output directory") {
  RunConfig c = parse_args({"lemma1-check", "--out", "/tmp/r", "--tag", "a"});
  CHECK(output_directory(c) == "/tmp/r/lemma1-check-a");
  c.tag.reset();
  const std::string stamped = output_directory(c);
  CHECK(stamped.rfind("/tmp/r/lemma1-check-", 0) == 0);
  CHECK(stamped.size() == std::string("/tmp/r/lemma1-check-").size() + 15);
}

TEST_CASE("end-to-end runs and exit codes") {
  const auto dir = scratch("runs");
  Run l = runCli({"lemma1-check", "--trials", "20", "--out", dir.string(), "--tag", "x"});
  CHECK(l.code == 0);
  CHECK(l.out.find("max_residual") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "lemma1-check-x" / "report.json"));
  CHECK(std::filesystem::exists(dir / "lemma1-check-x" / "trials.csv"));

  Run e = runCli({"example3", "--n", "5,10", "--N", "10", "--out", dir.string()});
  CHECK(e.code == 2);
  CHECK_FALSE(e.err.empty());

  Run c = runCli({"counterexample", "--blocks", "16", "--p", "3", "--out", dir.string(), "--tag", "c"});
  CHECK(c.code == 0);
  CHECK(std::filesystem::exists(dir / "counterexample-c" / "full_trend.csv"));
  CHECK(std::filesystem::exists(dir / "counterexample-c" / "restricted_trend.csv"));

  Run f = runCli({"list-families"});
  CHECK(f.code == 0);
  CHECK(f.out.find("drury-arveson") != std::string::npos);

  CHECK(runCli({"example5"}).code == 2);
  CHECK(runCli({"--help"}).code == 0);
  std::filesystem::remove_all(dir);
}
