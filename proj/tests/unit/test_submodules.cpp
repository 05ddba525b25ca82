#include "doctest.h"

#include <cmath>
#include <random>

#include "hilbmod/submodules.hpp"

using namespace hilbmod;

namespace {

// Number of monomials of degree n dominating some generator.
std::size_t dominatingCount(const GradedBasis& b, const std::vector<MultiIndex>& gens, int n) {
  std::size_t count = 0;
  for (const auto& a : b.monomials()) {
    if (a.degree() != n) continue;
    for (const auto& g : gens)
      if (a.dominates(g)) {
        ++count;
        break;
      }
  }
  return count;
}

double maxAbs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

MultiIndex randomIndex(std::mt19937_64& rng, int m, int degree) {
  std::vector<int> e(m, 0);
  for (int s = 0; s < degree; ++s) ++e[std::uniform_int_distribution<int>(0, m - 1)(rng)];
  return MultiIndex(e);
}

}  // namespace

TEST_CASE("monomial submodule dimensions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(1, 8)(rng);
    WeightSet w = drury_arveson_weights(enumerate_basis(m, N));
    std::vector<MonomialGenerator> gens;
    std::vector<MultiIndex> alphas;
    for (int g = std::uniform_int_distribution<int>(1, 3)(rng); g > 0; --g) {
      alphas.push_back(randomIndex(rng, m, std::uniform_int_distribution<int>(0, std::min(N, 3))(rng)));
      gens.push_back({alphas.back(), 0});
    }
    SubmoduleBasis s = monomial_submodule(w, gens);
    CHECK(s.isGraded());
    std::size_t total = 0;
    for (int n = 0; n <= N; ++n) {
      const std::size_t expected = dominatingCount(w.graded(), alphas, n);
      CHECK(s.dimensionAt(Side::Submodule, n) == expected);
      CHECK(s.dimensionAt(Side::Complement, n) == w.graded().degreeSlice(n).size() - expected);
      total += expected;
    }
    CHECK(s.rank(Side::Submodule) == total);
    CHECK(s.rank(Side::Submodule) + s.rank(Side::Complement) == w.graded().dimension());
    CHECK(module_residual(s, w) <= 1e-14);
  }
}

TEST_CASE("principal ideal of z1 in two variables") {
  WeightSet w = drury_arveson_weights(enumerate_basis(2, 10));
  SubmoduleBasis s = submodule_from_generators(w, {parse_polynomial("z1", 2)});
  for (int n = 0; n <= 10; ++n) CHECK(s.dimensionAt(Side::Complement, n) == 1);
  const DenseMatrix comp = DenseMatrix(s.subspace(Side::Complement).columns);
  for (int n = 0; n <= 10; ++n) {
    const std::size_t idx = w.graded().indexOf(MultiIndex{0, n});
    CHECK(std::abs(comp.col(n).cwiseAbs().maxCoeff() - 1.0) <= 1e-15);
    CHECK(std::abs(std::abs(comp(idx, n)) - 1.0) <= 1e-15);
  }
}

TEST_CASE("homogeneous ideals") {
  WeightSet w = drury_arveson_weights(enumerate_basis(2, 9));
  SubmoduleBasis s = homogeneous_submodule(w, {parse_polynomial("z1^2 + z2^2", 2)});
  CHECK(s.dimensionAt(Side::Complement, 0) == 1);
  CHECK(s.dimensionAt(Side::Complement, 1) == 2);
  for (int n = 2; n <= 9; ++n) {
    CHECK(s.dimensionAt(Side::Submodule, n) == static_cast<std::size_t>(n - 1));
    CHECK(s.dimensionAt(Side::Complement, n) == 2);
  }
  CHECK(module_residual(s, w) <= 1e-12);

  SubmoduleBasis both = submodule_from_generators(w, {parse_polynomial("z1", 2), parse_polynomial("z2", 2)});
  CHECK(both.rank(Side::Complement) == 1);

  SubmoduleBasis redundant =
      homogeneous_submodule(w, {parse_polynomial("z1*z2", 2), parse_polynomial("z1^2*z2 + z1*z2^2", 2)});
  SubmoduleBasis plain = monomial_submodule(w, {{MultiIndex{1, 1}, 0}});
  for (int n = 0; n <= 9; ++n)
    CHECK(redundant.dimensionAt(Side::Submodule, n) == plain.dimensionAt(Side::Submodule, n));
}

TEST_CASE("monomial and homogeneous constructions agree") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(1, 7)(rng);
    const int k = std::uniform_int_distribution<int>(1, 2)(rng);
    auto b = enumerate_basis(m, N, k);
    WeightSet w = std::uniform_int_distribution<int>(0, 1)(rng) ? bergman_ball_weights(b) : random_weights(b, rng);
    std::vector<MonomialGenerator> mono;
    std::vector<PolynomialGenerator> poly;
    for (int g = std::uniform_int_distribution<int>(1, 2)(rng); g > 0; --g) {
      const MultiIndex a = randomIndex(rng, m, std::uniform_int_distribution<int>(0, std::min(N, 3))(rng));
      const int c = std::uniform_int_distribution<int>(0, k - 1)(rng);
      mono.push_back({a, c});
      poly.emplace_back(std::vector<PolynomialTerm>{{a, c, Scalar(2.0, -1.0)}});
    }
    const DenseMatrix p1 = projection_matrix(monomial_submodule(w, mono), Side::Submodule).dense();
    const DenseMatrix p2 = projection_matrix(homogeneous_submodule(w, poly), Side::Submodule).dense();
    CHECK(maxAbs(p1 - p2) <= 1e-12);
  }
}

TEST_CASE("projections") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(1, 6)(rng);
    WeightSet w = hardy_ball_weights(enumerate_basis(m, N));
    const int d = std::uniform_int_distribution<int>(1, std::min(N, 2))(rng);
    std::vector<PolynomialTerm> terms;
    for (int t = 0; t < 3; ++t) {
      const MultiIndex a = randomIndex(rng, m, d);
      bool seen = false;
      for (const auto& x : terms) seen = seen || x.alpha == a;
      if (!seen) terms.push_back({a, 0, Scalar(std::normal_distribution<double>()(rng), 0.5)});
    }
    SubmoduleBasis s = homogeneous_submodule(w, {PolynomialGenerator(terms)});
    const DenseMatrix p = projection_matrix(s, Side::Submodule).dense();
    const DenseMatrix q = projection_matrix(s, Side::Complement).dense();
    CHECK(maxAbs(p * p - p) <= 1e-12);
    CHECK(maxAbs(p - p.adjoint()) <= 1e-13);
    CHECK(maxAbs(p + q - DenseMatrix::Identity(p.rows(), p.cols())) <= 1e-12);
    CHECK(std::abs(p.trace().real() - static_cast<double>(s.rank(Side::Submodule))) <= 1e-10);
    CHECK(module_residual(s, w) <= 1e-12);
  }
}

TEST_CASE("kernel vectors reproduce point evaluation") {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(1, 6)(rng);
    WeightSet w = factorial_delta_weights(enumerate_basis(m, N), 0.7);
    std::vector<Scalar> z(m);
    for (auto& x : z) x = Scalar(g(rng), g(rng)) * 0.3;
    const Eigen::VectorXcd k = kernel_vector(w, z);
    // f = sum_alpha c_alpha z^alpha has coordinates c_alpha lambda_alpha.
    Eigen::VectorXcd f(w.graded().dimension());
    Scalar direct = 0.0;
    for (std::size_t j = 0; j < w.graded().dimension(); ++j) {
      const MultiIndex& a = w.graded().monomialAt(j);
      const Scalar c(g(rng), g(rng));
      f(j) = c * w.lambda(a);
      Scalar monomial = 1.0;
      for (int i = 0; i < m; ++i) monomial *= std::pow(z[i], a[i]);
      direct += c * monomial;
    }
    CHECK(std::abs(k.dot(f) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("point evaluations") {
  WeightSet w = drury_arveson_weights(enumerate_basis(2, 8));
  SubmoduleBasis s = span_of_point_evaluations(w, {{0.3, 0.1}, {Scalar(0.0, 0.2), -0.4}});
  CHECK(s.rank(Side::Complement) == 2);
  CHECK(s.rank(Side::Submodule) == w.graded().dimension() - 2);
  CHECK_THROWS_AS(span_of_point_evaluations(w, {{0.3, 0.1}, {0.3, 0.1}}), InvalidArgument);

  WeightSet w2 = drury_arveson_weights(enumerate_basis(2, 8, 2));
  CHECK(span_of_point_evaluations(w2, {{0.3, 0.1}}).rank(Side::Complement) == 2);
}

TEST_CASE("closure of a non-homogeneous ideal is the kernel complement") {
  for (double a : {0.5, -0.3, 0.9}) {
    WeightSet w = bergman_ball_weights(enumerate_basis(1, 12));
    SubmoduleBasis s = submodule_from_generators(w, {PolynomialGenerator({{MultiIndex{1}, 0, 1.0}, {MultiIndex{0}, 0, -a}})});
    CHECK_FALSE(s.isGraded());
    REQUIRE(s.rank(Side::Complement) == 1);
    const Eigen::VectorXcd v = DenseMatrix(s.subspace(Side::Complement).columns).col(0);
    Eigen::VectorXcd k = kernel_vector(w, {a});
    k.normalize();
    CHECK(std::abs(std::abs(k.dot(v)) - 1.0) <= 1e-10);
    CHECK(module_residual(s, w) <= 1e-10);
  }
}

TEST_CASE("truncation of a graded submodule") {
  WeightSet w = drury_arveson_weights(enumerate_basis(3, 7));
  SubmoduleBasis s = homogeneous_submodule(w, {parse_polynomial("z1*z2 - z3^2", 3)});
  SubmoduleBasis t = s.truncated(4);
  WeightSet w4 = w.truncated(4);
  SubmoduleBasis direct = homogeneous_submodule(w4, {parse_polynomial("z1*z2 - z3^2", 3)});
  CHECK(maxAbs(projection_matrix(t, Side::Submodule).dense() - projection_matrix(direct, Side::Submodule).dense()) <=
        1e-12);
}
