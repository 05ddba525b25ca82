#include "doctest.h"

#include <map>
#include <random>

#include "hilbmod/polynomial.hpp"

using namespace hilbmod;

namespace {

std::map<std::pair<std::vector<int>, int>, Scalar> termMap(const PolynomialGenerator& g) {
  std::map<std::pair<std::vector<int>, int>, Scalar> out;
  for (const auto& t : g.terms()) out[{t.alpha.exponents(), t.component}] = t.coefficient;
  return out;
}

std::size_t errorPosition(std::string_view text, int m, int k = 1) {
  try {
    parse_polynomial(text, m, k);
  } catch (const PolynomialSyntaxError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("homogeneous quadratic") {
  auto g = parse_polynomial("z1^2 + z2^2", 2);
  CHECK(g.terms().size() == 2);
  CHECK(g.homogeneousDegree() == 2);
  auto t = termMap(g);
  CHECK(t.at({{2, 0}, 0}) == Scalar(1.0));
  CHECK(t.at({{0, 2}, 0}) == Scalar(1.0));
}

TEST_CASE("coefficients, products and components") {
  auto g = parse_polynomial("2.5*z1^2*z2 (c1) - z2^3 (c0)", 2, 2);
  auto t = termMap(g);
  CHECK(t.at({{2, 1}, 1}) == Scalar(2.5));
  CHECK(t.at({{0, 3}, 0}) == Scalar(-1.0));
  CHECK(g.maxComponent() == 1);
  CHECK(g.homogeneousDegree() == 3);

  auto mono = parse_polynomial("z1*z2", 2);
  CHECK(mono.isMonomial());
  CHECK(mono.terms()[0].alpha == MultiIndex{1, 1});

  auto affine = parse_polynomial("z1 - 0.5", 2);
  CHECK_FALSE(affine.homogeneousDegree().has_value());
  CHECK(affine.maxDegree() == 1);
  CHECK(termMap(affine).at({{0, 0}, 0}) == Scalar(-0.5));

  auto repeated = parse_polynomial("z1*z1*z2^2", 2);
  CHECK(repeated.terms()[0].alpha == MultiIndex{2, 2});
  CHECK(parse_polynomial(" - z1 ", 1).terms()[0].coefficient == Scalar(-1.0));
}

TEST_CASE("like terms merge and cancel") {
  auto g = parse_polynomial("z1 + 2*z1 - z2", 2);
  CHECK(termMap(g).at({{1, 0}, 0}) == Scalar(3.0));
  CHECK(g.terms().size() == 2);
  auto h = parse_polynomial("z1 - z1 + z2", 2);
  CHECK(h.terms().size() == 1);
  CHECK_THROWS_AS(parse_polynomial("z1 - z1", 2), PolynomialSyntaxError);
}

TEST_CASE("errors carry positions") {
  CHECK(errorPosition("z1^2 + z3", 2) == 8);
  CHECK(errorPosition("z1 + + z2", 2) == 5);
  CHECK(errorPosition("z1 $ z2", 2) == 3);
  CHECK(errorPosition("", 2) == 0);
  CHECK(errorPosition("z1^", 2) == 3);
  CHECK(errorPosition("z1 (c2)", 2, 2) == 5);
  CHECK(errorPosition("z1 (x0)", 2, 2) == 4);
  CHECK(errorPosition("z1 (c0", 2, 2) == 6);
  CHECK(errorPosition("z0", 2) == 1);
  CHECK_THROWS_AS(parse_polynomial("z1", 0), InvalidArgument);
}

TEST_CASE("generator construction rules") {
  CHECK_THROWS_AS(PolynomialGenerator({}), InvalidArgument);
  CHECK_THROWS_AS(PolynomialGenerator({{MultiIndex{1, 0}, 0, 1.0}, {MultiIndex{1, 0}, 0, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(PolynomialGenerator({{MultiIndex{1, 0}, 0, 1.0}, {MultiIndex{1}, 0, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(PolynomialGenerator({{MultiIndex{1, 0}, 0, 0.0}}), InvalidArgument);
  PolynomialGenerator g({{MultiIndex{1, 0}, 0, 0.0}, {MultiIndex{0, 1}, 0, 1.0}});
  CHECK(g.terms().size() == 1);
}

TEST_CASE("random polynomials survive printing and reparsing") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const int count = std::uniform_int_distribution<int>(1, 5)(rng);
    std::map<std::pair<std::vector<int>, int>, Scalar> want;
    for (int t = 0; t < count; ++t) {
      std::vector<int> e(m);
      for (int& x : e) x = std::uniform_int_distribution<int>(0, 3)(rng);
      const int c = std::uniform_int_distribution<int>(0, k - 1)(rng);
      double coef = std::uniform_int_distribution<int>(-9, 9)(rng) * 0.25;
      if (coef == 0.0) coef = 1.0;
      want[{e, c}] = coef;
    }
    std::vector<PolynomialTerm> terms;
    for (const auto& [key, coef] : want) terms.push_back({MultiIndex(key.first), key.second, coef});
    PolynomialGenerator g(terms);
    const std::string text = g.toString();
    INFO(text);
    auto back = parse_polynomial(text, m, k);
    CHECK(termMap(back) == want);
  }
}
