#pragma once

#include <optional>
#include <vector>

#include "hilbmod/operators.hpp"
#include "hilbmod/polynomial.hpp"
#include "hilbmod/weights.hpp"

namespace hilbmod {

enum class Side { Submodule, Complement };

struct MonomialGenerator {
  MultiIndex alpha;
  int component = 0;
};

/// Orthonormal bases (in the orthonormal monomial coordinates) of a
/// submodule S and of its orthocomplement within the truncation.
///
/// Graded submodules are stored degree by degree (S cap P_n and its
/// complement in P_n); ungraded ones as a single block over all coordinates.
class SubmoduleBasis {
 public:
  struct Block {
    int degree = Grading::kUngraded;
    IndexRange rows;
    DenseMatrix sub;   // rows.size() x dim(S cap block)
    DenseMatrix comp;  // rows.size() x dim(S^perp cap block)
  };

  SubmoduleBasis(BasisPtr basis, std::vector<Block> blocks, double rankTolerance);

  const BasisPtr& basis() const { return basis_; }
  bool isGraded() const { return graded_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  double rankTolerance() const { return rankTolerance_; }

  /// dim(S cap P_n) or dim(S^perp cap P_n); graded submodules only.
  std::size_t dimensionAt(Side side, int n) const;
  std::size_t rank(Side side) const;

  Subspace subspace(Side side) const;
  /// The same submodule on the truncation at degree n (graded only).
  SubmoduleBasis truncated(int maxDegree) const;

  /// Condition number of the spanning set, when one was orthonormalized as a whole.
  std::optional<double> conditionNumber;
  /// For ungraded closures: the part of S spanned at filtration degree N - 1,
  /// which coordinate multiplication keeps inside the truncation.
  std::optional<DenseMatrix> interiorSubmodule;

 private:
  BasisPtr basis_;
  std::vector<Block> blocks_;
  double rankTolerance_;
  bool graded_;
};

inline constexpr double kDefaultRankTolerance = 1e-10;

/// S cap P_n spanned by monomials (beta, c) with beta >= alpha for a generator (alpha, c).
SubmoduleBasis monomial_submodule(const WeightSet& w, const std::vector<MonomialGenerator>& generators);

/// Submodule generated by homogeneous polynomials, orthonormalized per degree
/// in the lambda-weighted inner product.
SubmoduleBasis homogeneous_submodule(const WeightSet& w, const std::vector<PolynomialGenerator>& generators,
                                     double rankTolerance = kDefaultRankTolerance);

/// span{ z^q g : |q| + deg g <= N } for arbitrary polynomial generators; ungraded.
SubmoduleBasis polynomial_closure_submodule(const WeightSet& w,
                                            const std::vector<PolynomialGenerator>& generators,
                                            double rankTolerance = kDefaultRankTolerance);

/// Truncated reproducing-kernel vector k_z: coordinates conj(z)^alpha / lambda_alpha
/// in component `component`.
Eigen::VectorXcd kernel_vector(const WeightSet& w, const std::vector<Scalar>& point, int component = 0);

/// S^perp = span of the truncated kernel vectors (every component), S its
/// orthocomplement. Throws when the points are numerically dependent.
SubmoduleBasis span_of_point_evaluations(const WeightSet& w, const std::vector<std::vector<Scalar>>& points,
                                         double rankTolerance = kDefaultRankTolerance);

/// Monomial generators go to monomial_submodule, homogeneous ones to
/// homogeneous_submodule, anything else to polynomial_closure_submodule.
SubmoduleBasis submodule_from_generators(const WeightSet& w, const std::vector<PolynomialGenerator>& generators);

TruncatedOperator projection_matrix(const SubmoduleBasis& s, Side side);

/// max_i of the relative invariance residual of Z_i on S over the interior
/// window (for ungraded closures: on interiorSubmodule).
double module_residual(const SubmoduleBasis& s, const WeightSet& w);

}  // namespace hilbmod
