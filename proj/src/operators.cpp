#include "hilbmod/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hilbmod {

bool Grading::fullyGraded() const {
  return std::none_of(degree.begin(), degree.end(), [](int d) { return d == kUngraded; });
}

GradingPtr grading_of(const GradedBasis& basis) {
  auto g = std::make_shared<Grading>();
  g->degree.resize(basis.dimension());
  g->slack.resize(basis.dimension());
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    g->degree[i] = basis.degreeAt(i);
    g->slack[i] = basis.maxDegree() - g->degree[i];
  }
  return g;
}

GradingPtr ungraded(std::size_t dimension) {
  auto g = std::make_shared<Grading>();
  g->degree.assign(dimension, Grading::kUngraded);
  g->slack.assign(dimension, Grading::kUnboundedSlack);
  return g;
}

TruncatedOperator::TruncatedOperator(SparseMatrix matrix, GradingPtr grading, int boundaryDepth,
                                     std::optional<int> degreeShift)
    : matrix_(std::move(matrix)),
      grading_(std::move(grading)),
      boundaryDepth_(std::max(0, boundaryDepth)),
      degreeShift_(degreeShift) {
  if (!grading_) throw InvalidArgument("TruncatedOperator: null grading");
  if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.cols()) != grading_->size())
    throw InvalidArgument("TruncatedOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + " but the grading has " +
                          std::to_string(grading_->size()) + " coordinates");
  matrix_.makeCompressed();
}

std::vector<std::size_t> TruncatedOperator::interiorCoordinates() const {
  std::vector<std::size_t> out;
  out.reserve(dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    if (isInterior(i)) out.push_back(i);
  return out;
}

int TruncatedOperator::interiorDegree() const {
  int best = -1;
  for (std::size_t i = 0; i < dimension(); ++i)
    if (isInterior(i)) best = std::max(best, grading_->degree[i]);
  return best;
}

namespace {

void requireSameSpace(const TruncatedOperator& a, const TruncatedOperator& b, const char* what) {
  if (a.grading() != b.grading() && !(*a.grading() == *b.grading()))
    throw InvalidArgument(std::string(what) + ": operators act on different bases");
}

std::optional<int> commonShift(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.degreeShift() && b.degreeShift() && *a.degreeShift() == *b.degreeShift()) return a.degreeShift();
  return std::nullopt;
}

}  // namespace

Subspace coordinate_subspace(const GradingPtr& ambient, const std::vector<std::size_t>& coordinates) {
  SparseMatrix u(static_cast<Eigen::Index>(ambient->size()), static_cast<Eigen::Index>(coordinates.size()));
  std::vector<Eigen::Triplet<Scalar>> trips;
  auto g = std::make_shared<Grading>();
  for (std::size_t c = 0; c < coordinates.size(); ++c) {
    const std::size_t i = coordinates[c];
    if (i >= ambient->size()) throw InvalidArgument("coordinate_subspace: coordinate out of range");
    trips.emplace_back(static_cast<int>(i), static_cast<int>(c), Scalar(1.0));
    g->degree.push_back(ambient->degree[i]);
    g->slack.push_back(ambient->slack[i]);
  }
  u.setFromTriplets(trips.begin(), trips.end());
  return Subspace{std::move(u), ambient, std::move(g)};
}

TruncatedOperator identity_operator(const GradingPtr& grading) {
  SparseMatrix id(static_cast<Eigen::Index>(grading->size()), static_cast<Eigen::Index>(grading->size()));
  id.setIdentity();
  return TruncatedOperator(std::move(id), grading, 0, 0);
}

TruncatedOperator coordinate_shift(const WeightSet& w, int var) {
  const GradedBasis& b = w.graded();
  if (var < 0 || var >= b.numVars())
    throw InvalidArgument("coordinate_shift: variable index " + std::to_string(var) + " outside [0," +
                          std::to_string(b.numVars()) + ")");
  const int k = b.multiplicity();
  std::vector<Eigen::Triplet<Scalar>> trips;
  trips.reserve(b.dimension());
  for (std::size_t j = 0; j < b.monomialCount(); ++j) {
    const MultiIndex& a = b.monomialAt(j);
    if (a.degree() >= b.maxDegree()) break;
    const MultiIndex up = a.raised(var);
    const std::size_t jt = b.monomialIndex(up);
    const double weight = std::exp(w.logLambdaAt(jt) - w.logLambdaAt(j));
    for (int c = 0; c < k; ++c)
      trips.emplace_back(static_cast<int>(jt * k + c), static_cast<int>(j * k + c), Scalar(weight));
  }
  const auto n = static_cast<Eigen::Index>(b.dimension());
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return TruncatedOperator(std::move(m), grading_of(b), 1, 1);
}

TruncatedOperator adjoint(const TruncatedOperator& t) {
  SparseMatrix m = t.matrix().adjoint();
  int depth = t.boundaryDepth();
  std::optional<int> shift;
  if (t.degreeShift()) {
    depth = t.boundaryDepth() - *t.degreeShift();
    shift = -*t.degreeShift();
  }
  return TruncatedOperator(std::move(m), t.grading(), depth, shift);
}

TruncatedOperator multiply(const TruncatedOperator& a, const TruncatedOperator& b) {
  requireSameSpace(a, b, "multiply");
  SparseMatrix m = (a.matrix() * b.matrix()).pruned();
  int depth = std::max(a.boundaryDepth(), b.boundaryDepth());
  std::optional<int> shift;
  if (a.degreeShift() && b.degreeShift()) {
    depth = std::max(b.boundaryDepth(), a.boundaryDepth() + *b.degreeShift());
    shift = *a.degreeShift() + *b.degreeShift();
  }
  return TruncatedOperator(std::move(m), a.grading(), depth, shift);
}

TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b) {
  requireSameSpace(a, b, "add");
  SparseMatrix m = a.matrix() + b.matrix();
  return TruncatedOperator(std::move(m), a.grading(), std::max(a.boundaryDepth(), b.boundaryDepth()),
                           commonShift(a, b));
}

TruncatedOperator subtract(const TruncatedOperator& a, const TruncatedOperator& b) {
  requireSameSpace(a, b, "subtract");
  SparseMatrix m = a.matrix() - b.matrix();
  return TruncatedOperator(std::move(m), a.grading(), std::max(a.boundaryDepth(), b.boundaryDepth()),
                           commonShift(a, b));
}

TruncatedOperator scale(const TruncatedOperator& a, Scalar factor) {
  SparseMatrix m = a.matrix() * factor;
  return TruncatedOperator(std::move(m), a.grading(), a.boundaryDepth(), a.degreeShift());
}

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b) {
  return subtract(multiply(a, b), multiply(b, a));
}

TruncatedOperator self_commutator(const TruncatedOperator& t) { return commutator(adjoint(t), t); }

TruncatedOperator cross_commutator(const WeightSet& w, int i, int j) {
  return commutator(adjoint(coordinate_shift(w, i)), coordinate_shift(w, j));
}

double max_abs_entry(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

double interior_max_abs(const TruncatedOperator& t) {
  double best = 0.0;
  const auto& m = t.matrix();
  for (int k = 0; k < m.outerSize(); ++k) {
    if (!t.isInterior(static_cast<std::size_t>(k))) continue;
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

double norm_bound(const SparseMatrix& m) {
  Eigen::VectorXd colSums = Eigen::VectorXd::Zero(m.cols());
  Eigen::VectorXd rowSums = Eigen::VectorXd::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      colSums[it.col()] += std::abs(it.value());
      rowSums[it.row()] += std::abs(it.value());
    }
  const double one = colSums.size() ? colSums.maxCoeff() : 0.0;
  const double inf = rowSums.size() ? rowSums.maxCoeff() : 0.0;
  return std::sqrt(one * inf);
}

bool is_projection(const TruncatedOperator& p, double tol) {
  const SparseMatrix& m = p.matrix();
  SparseMatrix herm = m - SparseMatrix(m.adjoint());
  if (max_abs_entry(herm) > tol) return false;
  SparseMatrix idem = m * m - m;
  return max_abs_entry(idem) <= tol;
}

TruncatedOperator compress(const TruncatedOperator& t, const TruncatedOperator& p) {
  if (!is_projection(p)) throw InvalidArgument("compress: P is not a self-adjoint idempotent");
  return multiply(multiply(p, t), p);
}

TruncatedOperator compress_to(const TruncatedOperator& t, const Subspace& v) {
  if (v.ambient->size() != t.dimension())
    throw InvalidArgument("compress_to: subspace lives in a different ambient space");
  SparseMatrix m = (SparseMatrix(v.columns.adjoint()) * t.matrix() * v.columns).pruned();
  std::optional<int> shift = v.grading->fullyGraded() ? t.degreeShift() : std::nullopt;
  return TruncatedOperator(std::move(m), v.grading, t.boundaryDepth(), shift);
}

double invariance_residual(const TruncatedOperator& t, const Subspace& v) {
  if (v.rank() == 0) return 0.0;
  SparseMatrix tu = t.matrix() * v.columns;
  SparseMatrix back = v.columns * (SparseMatrix(v.columns.adjoint()) * tu);
  SparseMatrix r = tu - back;
  double worst = 0.0;
  for (int k = 0; k < r.outerSize(); ++k) {
    if (v.grading->slack[k] < t.boundaryDepth()) continue;
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(r, k); it; ++it) col += std::norm(it.value());
    worst = std::max(worst, std::sqrt(col));
  }
  return worst / std::max(1.0, norm_bound(t.matrix()));
}

Restriction restrict_to_invariant(const TruncatedOperator& t, const Subspace& v, double tol) {
  const double residual = invariance_residual(t, v);
  if (residual > tol) {
    std::ostringstream os;
    os << "restrict_to_invariant: subspace is not invariant (relative residual " << residual
       << " > " << tol << ")";
    throw InvarianceError(os.str(), residual);
  }
  return Restriction{compress_to(t, v), residual};
}

TruncatedOperator projection_onto(const Subspace& v) {
  SparseMatrix p = (v.columns * SparseMatrix(v.columns.adjoint())).pruned();
  std::optional<int> shift = v.grading->fullyGraded() ? std::optional<int>(0) : std::nullopt;
  return TruncatedOperator(std::move(p), v.ambient, 0, shift);
}

BlockDecomposition lemma1_decomposition(const TruncatedOperator& t, const Subspace& v, double tol) {
  const double residual = invariance_residual(t, v);
  if (residual > tol) {
    std::ostringstream os;
    os << "lemma1_decomposition: range(Q) is not invariant (relative residual " << residual << ")";
    throw InvarianceError(os.str(), residual);
  }
  TruncatedOperator q = projection_onto(v);
  TruncatedOperator qPerp = subtract(identity_operator(t.grading()), q);
  TruncatedOperator tStar = adjoint(t);
  TruncatedOperator diag = multiply(multiply(q, self_commutator(t)), q);
  TruncatedOperator corner = multiply(multiply(multiply(multiply(q, t), qPerp), tStar), q);
  return BlockDecomposition{std::move(diag), std::move(corner), std::move(q)};
}

double lemma1_residual(const TruncatedOperator& t, const Subspace& v, const BlockDecomposition& d) {
  TruncatedOperator restricted = compress_to(t, v);
  TruncatedOperator lhs = self_commutator(restricted);
  TruncatedOperator rhs = compress_to(add(d.diagonalPart, d.cornerPart), v);
  SparseMatrix diff = lhs.matrix() - rhs.matrix();
  TruncatedOperator diffOp(std::move(diff), lhs.grading(), lhs.boundaryDepth(), lhs.degreeShift());
  return interior_max_abs(diffOp);
}

TruncatedOperator direct_sum(const std::vector<TruncatedOperator>& ops) {
  if (ops.empty()) throw InvalidArgument("direct_sum: empty operator list");
  if (ops.size() == 1) return ops.front();
  auto g = std::make_shared<Grading>();
  std::vector<Eigen::Triplet<Scalar>> trips;
  std::size_t offset = 0;
  int depth = 0;
  std::optional<int> shift = ops.front().degreeShift();
  for (const auto& op : ops) {
    const auto& m = op.matrix();
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it)
        trips.emplace_back(static_cast<int>(offset + it.row()), static_cast<int>(offset + it.col()),
                           it.value());
    g->degree.insert(g->degree.end(), op.grading()->degree.begin(), op.grading()->degree.end());
    g->slack.insert(g->slack.end(), op.grading()->slack.begin(), op.grading()->slack.end());
    offset += op.dimension();
    depth = std::max(depth, op.boundaryDepth());
    if (shift != op.degreeShift()) shift.reset();
  }
  const auto n = static_cast<Eigen::Index>(offset);
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return TruncatedOperator(std::move(m), std::move(g), depth, shift);
}

Subspace direct_sum(const std::vector<Subspace>& spaces) {
  if (spaces.empty()) throw InvalidArgument("direct_sum: empty subspace list");
  auto amb = std::make_shared<Grading>();
  auto g = std::make_shared<Grading>();
  std::vector<Eigen::Triplet<Scalar>> trips;
  std::size_t rowOffset = 0, colOffset = 0;
  for (const auto& s : spaces) {
    for (int k = 0; k < s.columns.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(s.columns, k); it; ++it)
        trips.emplace_back(static_cast<int>(rowOffset + it.row()), static_cast<int>(colOffset + it.col()),
                           it.value());
    amb->degree.insert(amb->degree.end(), s.ambient->degree.begin(), s.ambient->degree.end());
    amb->slack.insert(amb->slack.end(), s.ambient->slack.begin(), s.ambient->slack.end());
    g->degree.insert(g->degree.end(), s.grading->degree.begin(), s.grading->degree.end());
    g->slack.insert(g->slack.end(), s.grading->slack.begin(), s.grading->slack.end());
    rowOffset += s.ambient->size();
    colOffset += s.rank();
  }
  SparseMatrix u(static_cast<Eigen::Index>(rowOffset), static_cast<Eigen::Index>(colOffset));
  u.setFromTriplets(trips.begin(), trips.end());
  return Subspace{std::move(u), std::move(amb), std::move(g)};
}

void write_coordinate_list(std::ostream& os, const TruncatedOperator& t) {
  const auto& m = t.matrix();
  os << "# " << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  os << std::setprecision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
}

}  // namespace hilbmod
