#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hilbmod/common.hpp"
#include "hilbmod/graded_basis.hpp"
#include "hilbmod/weights.hpp"

namespace hilbmod {

using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor>;
using DenseMatrix = Eigen::MatrixXcd;

/// Per-coordinate degree labels of the space an operator acts on.
///
/// slack = (truncation degree of the block the coordinate lives in) - degree.
/// Coordinates that do not carry a degree (spans of kernel vectors) are
/// labelled kUngraded with unbounded slack.
struct Grading {
  static constexpr int kUngraded = -1;
  static constexpr int kUnboundedSlack = std::numeric_limits<int>::max() / 4;

  std::vector<int> degree;
  std::vector<int> slack;

  std::size_t size() const { return degree.size(); }
  bool fullyGraded() const;
  bool operator==(const Grading&) const = default;
};

using GradingPtr = std::shared_ptr<const Grading>;

GradingPtr grading_of(const GradedBasis& basis);
GradingPtr ungraded(std::size_t dimension);

/// Sparse finite section of a module operator.
///
/// boundaryDepth r: columns whose slack is >= r are exact values of the
/// untruncated operator (a coordinate shift has r = 1 since degree N is sent
/// out of the truncation). degreeShift s: the operator maps degree d into
/// degree d + s; unknown for operators on ungraded coordinates.
class TruncatedOperator {
 public:
  TruncatedOperator(SparseMatrix matrix, GradingPtr grading, int boundaryDepth,
                    std::optional<int> degreeShift);

  const SparseMatrix& matrix() const { return matrix_; }
  const GradingPtr& grading() const { return grading_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.cols()); }
  int boundaryDepth() const { return boundaryDepth_; }
  std::optional<int> degreeShift() const { return degreeShift_; }

  bool isInterior(std::size_t coordinate) const {
    return grading_->slack[coordinate] >= boundaryDepth_;
  }
  /// Coordinates of the interior window, ascending.
  std::vector<std::size_t> interiorCoordinates() const;
  /// Largest degree inside the interior window (-1 if empty or ungraded).
  int interiorDegree() const;

  DenseMatrix dense() const { return DenseMatrix(matrix_); }

 private:
  SparseMatrix matrix_;
  GradingPtr grading_;
  int boundaryDepth_;
  std::optional<int> degreeShift_;
};

/// Orthonormal columns spanning a subspace of the ambient coordinates,
/// together with the grading of the subspace coordinates.
struct Subspace {
  SparseMatrix columns;  // ambient dimension x rank
  GradingPtr ambient;
  GradingPtr grading;

  std::size_t rank() const { return static_cast<std::size_t>(columns.cols()); }
};

/// Span of the ambient coordinates listed (each a unit vector).
Subspace coordinate_subspace(const GradingPtr& ambient, const std::vector<std::size_t>& coordinates);

TruncatedOperator identity_operator(const GradingPtr& grading);

/// Multiplication by z_var (0-based) in the orthonormal basis z^alpha / lambda_alpha.
TruncatedOperator coordinate_shift(const WeightSet& w, int var);

TruncatedOperator adjoint(const TruncatedOperator& t);
TruncatedOperator multiply(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator subtract(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator scale(const TruncatedOperator& a, Scalar factor);

/// [A, B] = AB - BA.
TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b);
/// [T^*, T] = T^*T - TT^*.
TruncatedOperator self_commutator(const TruncatedOperator& t);
/// [Z_i^*, Z_j].
TruncatedOperator cross_commutator(const WeightSet& w, int i, int j);

double max_abs_entry(const SparseMatrix& m);
/// Largest absolute entry of the interior columns (all rows).
double interior_max_abs(const TruncatedOperator& t);
/// sqrt(||T||_1 ||T||_inf), an upper bound on the operator norm.
double norm_bound(const SparseMatrix& m);

bool is_projection(const TruncatedOperator& p, double tol = 1e-12);

/// PTP regarded on the full coordinate space.
TruncatedOperator compress(const TruncatedOperator& t, const TruncatedOperator& p);

/// U^* T U for the subspace columns U, without an invariance check.
TruncatedOperator compress_to(const TruncatedOperator& t, const Subspace& v);

class InvarianceError : public std::runtime_error {
 public:
  InvarianceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// ||(I - UU^*) T U|| over the interior columns, relative to ||T||.
double invariance_residual(const TruncatedOperator& t, const Subspace& v);

struct Restriction {
  TruncatedOperator op;
  double invarianceResidual;
};

/// T|_V expressed in V's orthonormal basis. Throws InvarianceError when V is
/// not invariant to `tol` (relative to the operator norm) on the interior window.
Restriction restrict_to_invariant(const TruncatedOperator& t, const Subspace& v, double tol = 1e-10);

/// Summands of [(T|_V)^*, T|_V] = Q[T^*,T]Q + Q T Q^perp T^* Q.
struct BlockDecomposition {
  TruncatedOperator diagonalPart;
  TruncatedOperator cornerPart;
  TruncatedOperator projection;
};

/// Projection U U^* onto the subspace, on the ambient coordinates.
TruncatedOperator projection_onto(const Subspace& v);

BlockDecomposition lemma1_decomposition(const TruncatedOperator& t, const Subspace& v,
                                        double tol = 1e-10);

/// Max-abs difference, over the interior window, between the self-commutator
/// of the restriction and U^*(diagonalPart + cornerPart)U.
double lemma1_residual(const TruncatedOperator& t, const Subspace& v, const BlockDecomposition& d);

/// Block-diagonal operator on the concatenated coordinates.
TruncatedOperator direct_sum(const std::vector<TruncatedOperator>& ops);
Subspace direct_sum(const std::vector<Subspace>& spaces);

/// "row col re im" lines, preceded by a "# rows cols nnz" header.
void write_coordinate_list(std::ostream& os, const TruncatedOperator& t);

}  // namespace hilbmod
