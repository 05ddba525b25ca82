#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hilbmod/operators.hpp"
#include "hilbmod/submodules.hpp"

using namespace hilbmod;

namespace {

// Dense Z_var built straight from the weights: column alpha holds
// lambda_{alpha+e_var} / lambda_alpha in row alpha + e_var.
DenseMatrix denseShift(const WeightSet& w, int var) {
  const GradedBasis& b = w.graded();
  DenseMatrix z = DenseMatrix::Zero(b.dimension(), b.dimension());
  for (std::size_t col = 0; col < b.dimension(); ++col) {
    const auto e = b.elementAt(col);
    if (e.alpha.degree() == b.maxDegree()) continue;
    const MultiIndex up = e.alpha.raised(var);
    z(b.indexOf(up, e.component), col) = w.lambda(up) / w.lambda(e.alpha);
  }
  return z;
}

WeightSet pickWeights(std::mt19937_64& rng, BasisPtr b) {
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return drury_arveson_weights(b);
    case 1: return bergman_ball_weights(b);
    case 2: return hardy_ball_weights(b);
    case 3: return factorial_delta_weights(b, std::uniform_real_distribution<double>(0.2, 2.0)(rng));
    default: return random_weights(b, rng);
  }
}

double maxAbs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("shift matrices match the weights") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(1, 7)(rng);
    const int k = std::uniform_int_distribution<int>(1, 2)(rng);
    WeightSet w = pickWeights(rng, enumerate_basis(m, N, k));
    for (int i = 0; i < m; ++i) {
      TruncatedOperator z = coordinate_shift(w, i);
      CHECK(maxAbs(z.dense() - denseShift(w, i)) <= 1e-14);
      CHECK(z.boundaryDepth() == 1);
      CHECK(z.degreeShift() == 1);
      CHECK(maxAbs(adjoint(adjoint(z)).dense() - z.dense()) == 0.0);
      CHECK(maxAbs(adjoint(z).dense() - z.dense().adjoint()) == 0.0);
    }
  }
}

TEST_CASE("unweighted one-variable shift") {
  WeightSet w = unit_weights(enumerate_basis(1, 4));
  DenseMatrix z = coordinate_shift(w, 0).dense();
  DenseMatrix expected = DenseMatrix::Zero(5, 5);
  for (int i = 0; i < 4; ++i) expected(i + 1, i) = 1.0;
  CHECK(maxAbs(z - expected) == 0.0);
  CHECK_THROWS_AS(coordinate_shift(w, 1), InvalidArgument);
}

TEST_CASE("shifts commute and commutators are trace free") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(2, 3)(rng);
    const int N = std::uniform_int_distribution<int>(2, 7)(rng);
    WeightSet w = pickWeights(rng, enumerate_basis(m, N));
    TruncatedOperator zi = coordinate_shift(w, 0), zj = coordinate_shift(w, m - 1);
    CHECK(interior_max_abs(commutator(zi, zj)) <= 1e-13);
    TruncatedOperator c = cross_commutator(w, 0, m - 1);
    CHECK(std::abs(c.dense().trace()) <= 1e-12);
    TruncatedOperator s = self_commutator(zi);
    CHECK(maxAbs(s.dense() - s.dense().adjoint()) <= 1e-14);
    CHECK(std::abs(s.dense().trace()) <= 1e-12);
    CHECK(maxAbs(c.dense() - (zi.dense().adjoint() * zj.dense() - zj.dense() * zi.dense().adjoint())) <= 1e-13);
  }
}

TEST_CASE("interior columns do not depend on the truncation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(2, 6)(rng);
    const double delta = std::uniform_real_distribution<double>(0.2, 2.0)(rng);
    WeightSet small = factorial_delta_weights(enumerate_basis(m, N), delta);
    WeightSet big = factorial_delta_weights(enumerate_basis(m, N + 1), delta);
    const int i = std::uniform_int_distribution<int>(0, m - 1)(rng);
    const int j = std::uniform_int_distribution<int>(0, m - 1)(rng);
    TruncatedOperator cs = cross_commutator(small, i, j), cb = cross_commutator(big, i, j);
    const DenseMatrix ds = cs.dense(), db = cb.dense();
    for (std::size_t col : cs.interiorCoordinates()) {
      CHECK(small.graded().degreeAt(col) <= N - cs.boundaryDepth());
      for (std::size_t row = 0; row < small.graded().dimension(); ++row)
        CHECK(std::abs(ds(row, col) - db(row, col)) <= 1e-14);
      for (std::size_t row = small.graded().dimension(); row < big.graded().dimension(); ++row)
        CHECK(db(row, col) == Scalar(0.0));
    }
  }
}

TEST_CASE("depth and shift bookkeeping") {
  WeightSet w = drury_arveson_weights(enumerate_basis(2, 6));
  TruncatedOperator z = coordinate_shift(w, 0);
  TruncatedOperator zs = adjoint(z);
  CHECK(zs.boundaryDepth() == 0);
  CHECK(zs.degreeShift() == -1);
  TruncatedOperator zsz = multiply(zs, z);
  CHECK(zsz.boundaryDepth() == 1);
  CHECK(zsz.degreeShift() == 0);
  TruncatedOperator zzs = multiply(z, zs);
  CHECK(zzs.boundaryDepth() == 0);
  CHECK(self_commutator(z).boundaryDepth() == 1);
  CHECK_FALSE(add(z, zs).degreeShift().has_value());
  CHECK(multiply(z, z).boundaryDepth() == 2);
  CHECK(z.interiorDegree() == 5);
}

TEST_CASE("one-variable weighted shift self-commutator") {
  for (int n : {1, 3, 7}) {
    WeightSet w = example3_weights(n, enumerate_basis(1, n + 8));
    TruncatedOperator s = self_commutator(coordinate_shift(w, 0));
    const DenseMatrix d = s.dense();
    for (std::size_t col : s.interiorCoordinates()) {
      const double expected = static_cast<int>(col) < n ? 1.0 / n : 0.0;
      CHECK(std::abs(d(col, col) - expected) <= 1e-15);
      for (std::size_t row = 0; row < s.dimension(); ++row)
        if (row != col) CHECK(d(row, col) == Scalar(0.0));
    }
  }
}

TEST_CASE("restriction to an invariant subspace") {
  const int n = 4;
  WeightSet w = example3_weights(n, enumerate_basis(1, 14));
  TruncatedOperator z = coordinate_shift(w, 0);
  SubmoduleBasis s = monomial_submodule(w, {{MultiIndex{n - 1}, 0}});
  Restriction r = restrict_to_invariant(z, s.subspace(Side::Submodule));
  CHECK(r.invarianceResidual <= 1e-15);
  CHECK(r.op.dimension() == 15 - (n - 1));
  TruncatedOperator sc = self_commutator(r.op);
  const DenseMatrix d = sc.dense();
  for (std::size_t col : sc.interiorCoordinates())
    for (std::size_t row = 0; row < sc.dimension(); ++row)
      CHECK(std::abs(d(row, col) - (row == 0 && col == 0 ? 1.0 : 0.0)) <= 1e-15);

  SubmoduleBasis z1 = monomial_submodule(drury_arveson_weights(enumerate_basis(2, 5)), {{MultiIndex{1, 0}, 0}});
  WeightSet da = drury_arveson_weights(enumerate_basis(2, 5));
  CHECK_THROWS_AS(restrict_to_invariant(coordinate_shift(da, 0), z1.subspace(Side::Complement)), InvarianceError);
  CHECK(invariance_residual(coordinate_shift(da, 0), z1.subspace(Side::Complement)) > 0.1);
  CHECK_NOTHROW(restrict_to_invariant(adjoint(coordinate_shift(da, 0)), z1.subspace(Side::Complement)));
}

TEST_CASE("two-block decomposition of the restricted self-commutator") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 3)(rng);
    const int N = std::uniform_int_distribution<int>(2, 7)(rng);
    WeightSet w = pickWeights(rng, enumerate_basis(m, N));
    MultiIndex gen(std::vector<int>(m, 0));
    for (int s = std::uniform_int_distribution<int>(0, 2)(rng); s > 0; --s)
      gen = gen.raised(std::uniform_int_distribution<int>(0, m - 1)(rng));
    SubmoduleBasis sub = monomial_submodule(w, {{gen, 0}});
    const Subspace v = sub.subspace(Side::Submodule);
    TruncatedOperator z = coordinate_shift(w, std::uniform_int_distribution<int>(0, m - 1)(rng));
    BlockDecomposition d = lemma1_decomposition(z, v);
    CHECK(lemma1_residual(z, v, d) <= 1e-12);
    CHECK(is_projection(d.projection));

    // Q T Q^perp T^* Q is positive semidefinite.
    const DenseMatrix corner = d.cornerPart.dense();
    CHECK(maxAbs(corner - corner.adjoint()) <= 1e-13);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(corner);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);

    if (gen.degree() == 0) CHECK(maxAbs(corner) <= 1e-14);
  }
}

TEST_CASE("direct sums are block diagonal") {
  WeightSet a = example3_weights(2, enumerate_basis(1, 5));
  WeightSet b = example3_weights(3, enumerate_basis(1, 7));
  TruncatedOperator za = coordinate_shift(a, 0), zb = coordinate_shift(b, 0);
  TruncatedOperator sum = direct_sum({za, zb});
  CHECK(sum.dimension() == 14);
  CHECK(sum.degreeShift() == 1);
  const DenseMatrix d = sum.dense();
  CHECK(maxAbs(d.topLeftCorner(6, 6) - za.dense()) == 0.0);
  CHECK(maxAbs(d.bottomRightCorner(8, 8) - zb.dense()) == 0.0);
  CHECK(maxAbs(d.topRightCorner(6, 8)) == 0.0);
  CHECK(maxAbs(d.bottomLeftCorner(8, 6)) == 0.0);
  CHECK(sum.interiorCoordinates().size() == 5 + 7);

  Subspace va = coordinate_subspace(za.grading(), {1, 2});
  Subspace vb = coordinate_subspace(zb.grading(), {0});
  Subspace vs = direct_sum({va, vb});
  CHECK(vs.rank() == 3);
  CHECK(vs.columns.rows() == 14);
  CHECK(std::abs(DenseMatrix(vs.columns)(6, 2) - 1.0) == 0.0);
}

TEST_CASE("compression to coordinate subspaces") {
  WeightSet w = bergman_ball_weights(enumerate_basis(2, 4));
  TruncatedOperator t = cross_commutator(w, 0, 1);
  const std::vector<std::size_t> coords{0, 3, 4, 5};
  TruncatedOperator c = compress_to(t, coordinate_subspace(t.grading(), coords));
  const DenseMatrix full = t.dense(), small = c.dense();
  for (std::size_t r = 0; r < coords.size(); ++r)
    for (std::size_t s = 0; s < coords.size(); ++s) CHECK(small(r, s) == full(coords[r], coords[s]));
  CHECK(c.degreeShift() == t.degreeShift());

  TruncatedOperator p = projection_onto(coordinate_subspace(t.grading(), coords));
  TruncatedOperator pc = compress(t, p);
  CHECK(maxAbs(pc.dense() - p.dense() * full * p.dense()) <= 1e-15);
}

TEST_CASE("coordinate list output") {
  WeightSet w = unit_weights(enumerate_basis(1, 2));
  std::ostringstream os;
  write_coordinate_list(os, coordinate_shift(w, 0));
  CHECK(os.str().rfind("# 3 3 2", 0) == 0);
}
