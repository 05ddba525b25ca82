#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hilbmod/experiments.hpp"

using namespace hilbmod;

namespace {

ExperimentOptions quiet(unsigned threads = 1) {
  ExperimentOptions o;
  o.threads = threads;
  return o;
}

std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("example3 table against the diagonal closed form") {
  ExperimentReport r = run_example3({1, 3, 5}, {1.0, 2.0, 3.0, kInfinity}, 12, quiet());
  const Table& t = r.table("norms");
  REQUIRE(t.rows.size() == 12);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double n = t.number(i, "n"), p = t.number(i, "p");
    // n diagonal entries equal to 1/n.
    const double expected = std::isinf(p) ? 1.0 / n : std::pow(n * std::pow(1.0 / n, p), 1.0 / p);
    CHECK(t.number(i, "computed") == doctest::Approx(expected).epsilon(1e-12));
    CHECK(t.number(i, "restricted") == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_FALSE(r.theoremViolation);
  CHECK_THROWS_AS(run_example3({5}, {1.0}, 10), InvalidArgument);
}

TEST_CASE("direct-sum counterexample on a short sweep") {
  ExperimentReport r = run_counterexample_direct_sum(10, {2.0, 3.0}, quiet());
  const Table& t = r.table("restricted_trend");
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    CHECK(t.number(i, "norm") == doctest::Approx(std::pow(t.number(i, "B"), 1.0 / t.number(i, "p"))).epsilon(1e-12));
  CHECK(r.hasVerdict("full p=3"));
  CHECK(r.hasVerdict("restricted p=3"));
  CHECK_THROWS_AS(run_counterexample_direct_sum(4, {3.0}), InvalidArgument);
}

TEST_CASE("example5 verdict table") {
  ExperimentReport r = run_example5(2, {0.25, 1.25}, {6, 8, 10, 12, 16}, quiet());
  CHECK(r.table("summary").rows.size() == 2);
  CHECK(r.verdict("delta=0.25 trace all").verdict != Verdict::Converging);
  CHECK(r.verdict("delta=1.25 hs all").verdict == Verdict::Converging);
  CHECK_THROWS_AS(run_example5(1, {1.0}, {8, 12, 16, 20}), InvalidArgument);
}

TEST_CASE("spectral split rows never violate the inequality") {
  BergerShawSpec points;
  points.family = "drury-arveson";
  points.m = 2;
  points.points = {{0.3, 0.1}, {Scalar(0.0, 0.4), -0.2}};
  points.degrees = {4, 6, 8};
  ExperimentReport a = run_berger_shaw_check(points, quiet());
  CHECK_FALSE(a.theoremViolation);
  for (std::size_t i = 0; i < a.table("rows").rows.size(); ++i) {
    CHECK(a.table("rows").cell(i, "holds") == "yes");
    CHECK(std::abs(a.table("rows").number(i, "abs_trace_commutator")) <= 1e-10);
  }

  BergerShawSpec gens;
  gens.m = 2;
  gens.generators = {"z1^2 + z2^2"};
  gens.degrees = {4, 6, 8};
  CHECK_FALSE(run_berger_shaw_check(gens, quiet()).theoremViolation);

  BergerShawSpec both = gens;
  both.points = {{0.1, 0.1}};
  CHECK_THROWS_AS(run_berger_shaw_check(both), InvalidArgument);
}

TEST_CASE("submodule probe dimensions") {
  ProbeSpec s;
  s.generators = {"z1*z2"};
  s.degrees = {6, 8, 10, 12};
  ExperimentReport r = run_arveson_probe(s, quiet());
  const Table& dims = r.table("dimensions");
  for (std::size_t i = 0; i < dims.rows.size(); ++i) {
    const double N = dims.number(i, "N");
    // Complement of (z1 z2): 1 + 2N monomials.
    CHECK(dims.number(i, "complement") == 1 + 2 * N);
    CHECK(dims.number(i, "ambient") == (N + 1) * (N + 2) / 2);
  }
  s.generators = {"z1 - 0.5"};
  CHECK_THROWS_AS(run_arveson_probe(s), InvalidArgument);
}

TEST_CASE("quotient probe on the ball") {
  QuotientProbeSpec q;
  q.generators = {"z1"};
  q.degrees = {8, 12, 16, 20};
  ExperimentReport r = run_quotient_smoothness_probe(q, quiet());
  CHECK(r.table("norms").rows.size() > 0);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("lemma1 check passes") {
  ExperimentReport r = run_lemma1_check(40, quiet());
  CHECK(r.table("trials").rows.size() == 40);
  bool pass = false;
  for (const auto& [k, v] : r.summary)
    if (k == "pass") pass = v == "yes";
  CHECK(pass);
}

TEST_CASE("reports do not depend on the thread count or the run") {
  ExperimentOptions one = quiet(1), three = quiet(3);
  one.seed = three.seed = 17;
  CHECK(report_json(run_lemma1_check(30, one)) == report_json(run_lemma1_check(30, three)));
  CHECK(report_json(run_example5(2, {0.5}, {6, 8, 10, 12}, one)) ==
        report_json(run_example5(2, {0.5}, {6, 8, 10, 12}, three)));
  one.seed = 18;
  CHECK(report_json(run_lemma1_check(30, one)) != report_json(run_lemma1_check(30, three)));

  const auto dir = std::filesystem::temp_directory_path() / "hilbmod_test_experiments";
  std::filesystem::remove_all(dir);
  ExperimentReport r = run_counterexample_direct_sum(8, {3.0}, quiet());
  r.runtimeSeconds = 12.5;
  write_report(r, dir);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "full_trend.csv"));
  CHECK(readFile(dir / "report.json").find("12.5") == std::string::npos);
  CHECK(readFile(dir / "full_trend.csv").rfind("B,p,norm,closed_form,abs_error\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("number formatting round trips") {
  for (double x : {0.1, 1.0 / 3.0, 2.0, 1e-300, -7.25e12}) CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(kInfinity) == "inf");
  CHECK(format_number(2.0) == "2");
  Table t("x", {"a", "b"});
  t.addRow({"1", "say \"hi\", twice"});
  CHECK(t.csv() == "a,b\n1,\"say \"\"hi\"\", twice\"\n");
  CHECK_THROWS(t.addRow({"1"}));
}
