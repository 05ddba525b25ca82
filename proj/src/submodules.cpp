#include "hilbmod/submodules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace hilbmod {

namespace {

struct Split {
  DenseMatrix range;
  DenseMatrix complement;
  double conditionNumber = 1.0;
};

/// Orthonormal bases of range(A) and its orthocomplement, with the rank
/// decided relative to the largest singular value.
Split orthonormal_split(DenseMatrix a, double tol) {
  const Eigen::Index rows = a.rows();
  Split out;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const double n = a.col(c).norm();
    if (n > 0.0) a.col(c) /= n;
  }
  if (a.cols() == 0 || a.norm() == 0.0) {
    out.range = DenseMatrix(rows, 0);
    out.complement = DenseMatrix::Identity(rows, rows);
    return out;
  }
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > tol * s[0]) ++r;
  out.range = svd.matrixU().leftCols(r);
  out.complement = svd.matrixU().rightCols(rows - r);
  out.conditionNumber = s[0] / s[s.size() - 1];
  return out;
}

SparseMatrix to_sparse(const DenseMatrix& d) { return d.sparseView(); }

void placeBlock(std::vector<Eigen::Triplet<Scalar>>& trips, const DenseMatrix& m, std::size_t rowOffset,
                std::size_t colOffset) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != Scalar(0.0))
        trips.emplace_back(static_cast<int>(rowOffset + r), static_cast<int>(colOffset + c), m(r, c));
}

/// Coordinates of z^q * g in the orthonormal basis, restricted to `rows`.
void accumulate_product(Eigen::Ref<Eigen::VectorXcd> v, const WeightSet& w, const PolynomialGenerator& g,
                        const MultiIndex& q, const IndexRange& rows) {
  const GradedBasis& b = w.graded();
  for (const auto& t : g.terms()) {
    const MultiIndex beta = t.alpha + q;
    const std::size_t idx = b.indexOf(beta, t.component);
    if (!rows.contains(idx)) continue;
    v[static_cast<Eigen::Index>(idx - rows.begin)] += t.coefficient * std::exp(w.logLambda(beta));
  }
}

void requireCompatible(const WeightSet& w, const PolynomialGenerator& g, std::size_t index) {
  if (g.numVars() != w.graded().numVars())
    throw InvalidArgument("generator " + std::to_string(index) + " has " + std::to_string(g.numVars()) +
                          " variables, module has " + std::to_string(w.graded().numVars()));
  if (g.maxComponent() >= w.graded().multiplicity())
    throw InvalidArgument("generator " + std::to_string(index) + " uses a component outside C^" +
                          std::to_string(w.graded().multiplicity()));
}

}  // namespace

SubmoduleBasis::SubmoduleBasis(BasisPtr basis, std::vector<Block> blocks, double rankTolerance)
    : basis_(std::move(basis)), blocks_(std::move(blocks)), rankTolerance_(rankTolerance) {
  graded_ = !blocks_.empty() && blocks_.front().degree != Grading::kUngraded;
  for (const auto& b : blocks_) {
    if (b.sub.rows() != static_cast<Eigen::Index>(b.rows.size()) ||
        b.comp.rows() != static_cast<Eigen::Index>(b.rows.size()) ||
        b.sub.cols() + b.comp.cols() != static_cast<Eigen::Index>(b.rows.size()))
      throw InvalidArgument("SubmoduleBasis: block dimensions do not add up");
  }
}

std::size_t SubmoduleBasis::dimensionAt(Side side, int n) const {
  if (!graded_) throw InvalidArgument("SubmoduleBasis::dimensionAt: submodule is not graded");
  if (n < 0 || n >= static_cast<int>(blocks_.size())) throw InvalidArgument("SubmoduleBasis: degree out of range");
  const auto& b = blocks_[n];
  return static_cast<std::size_t>(side == Side::Submodule ? b.sub.cols() : b.comp.cols());
}

std::size_t SubmoduleBasis::rank(Side side) const {
  std::size_t r = 0;
  for (const auto& b : blocks_) r += static_cast<std::size_t>(side == Side::Submodule ? b.sub.cols() : b.comp.cols());
  return r;
}

Subspace SubmoduleBasis::subspace(Side side) const {
  auto ambient = grading_of(*basis_);
  std::vector<Eigen::Triplet<Scalar>> trips;
  auto g = std::make_shared<Grading>();
  std::size_t col = 0;
  for (const auto& b : blocks_) {
    const DenseMatrix& m = side == Side::Submodule ? b.sub : b.comp;
    placeBlock(trips, m, b.rows.begin, col);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      g->degree.push_back(b.degree);
      g->slack.push_back(b.degree == Grading::kUngraded ? Grading::kUnboundedSlack : basis_->maxDegree() - b.degree);
    }
    col += static_cast<std::size_t>(m.cols());
  }
  SparseMatrix u(static_cast<Eigen::Index>(basis_->dimension()), static_cast<Eigen::Index>(col));
  u.setFromTriplets(trips.begin(), trips.end());
  return Subspace{std::move(u), std::move(ambient), std::move(g)};
}

SubmoduleBasis SubmoduleBasis::truncated(int maxDegree) const {
  if (!graded_) throw InvalidArgument("SubmoduleBasis::truncated: only graded submodules can be truncated");
  if (maxDegree < 0 || maxDegree > basis_->maxDegree())
    throw InvalidArgument("SubmoduleBasis::truncated: degree out of range");
  auto sub = enumerate_basis(basis_->numVars(), maxDegree, basis_->multiplicity());
  std::vector<Block> blocks(blocks_.begin(), blocks_.begin() + maxDegree + 1);
  return SubmoduleBasis(std::move(sub), std::move(blocks), rankTolerance_);
}

SubmoduleBasis monomial_submodule(const WeightSet& w, const std::vector<MonomialGenerator>& generators) {
  if (generators.empty()) throw InvalidArgument("monomial_submodule: empty generator list");
  const GradedBasis& b = w.graded();
  for (const auto& g : generators) {
    if (g.alpha.numVars() != b.numVars())
      throw InvalidArgument("monomial_submodule: generator " + g.alpha.toString() + " has the wrong variable count");
    if (g.alpha.degree() > b.maxDegree())
      throw InvalidArgument("monomial_submodule: generator " + g.alpha.toString() + " exceeds the degree bound");
    if (g.component < 0 || g.component >= b.multiplicity())
      throw InvalidArgument("monomial_submodule: generator component out of range");
  }
  std::vector<SubmoduleBasis::Block> blocks;
  for (int n = 0; n <= b.maxDegree(); ++n) {
    const IndexRange rows = b.degreeSlice(n);
    std::vector<Eigen::Index> in, out;
    for (std::size_t i = rows.begin; i < rows.end; ++i) {
      const BasisElement e = b.elementAt(i);
      const bool member = std::any_of(generators.begin(), generators.end(), [&](const MonomialGenerator& g) {
        return g.component == e.component && e.alpha.dominates(g.alpha);
      });
      (member ? in : out).push_back(static_cast<Eigen::Index>(i - rows.begin));
    }
    const auto dim = static_cast<Eigen::Index>(rows.size());
    DenseMatrix sub = DenseMatrix::Zero(dim, static_cast<Eigen::Index>(in.size()));
    DenseMatrix comp = DenseMatrix::Zero(dim, static_cast<Eigen::Index>(out.size()));
    for (std::size_t c = 0; c < in.size(); ++c) sub(in[c], static_cast<Eigen::Index>(c)) = 1.0;
    for (std::size_t c = 0; c < out.size(); ++c) comp(out[c], static_cast<Eigen::Index>(c)) = 1.0;
    blocks.push_back({n, rows, std::move(sub), std::move(comp)});
  }
  return SubmoduleBasis(w.basis(), std::move(blocks), 0.0);
}

SubmoduleBasis homogeneous_submodule(const WeightSet& w, const std::vector<PolynomialGenerator>& generators,
                                     double rankTolerance) {
  if (generators.empty()) throw InvalidArgument("homogeneous_submodule: empty generator list");
  for (std::size_t g = 0; g < generators.size(); ++g) {
    requireCompatible(w, generators[g], g);
    if (!generators[g].homogeneousDegree())
      throw InvalidArgument("homogeneous_submodule: generator " + std::to_string(g) + " (" +
                            generators[g].toString() + ") is not homogeneous");
  }
  const GradedBasis& b = w.graded();
  auto monomialsOfDegree = [&](int d) {
    std::vector<MultiIndex> out;
    const IndexRange r = b.degreeSlice(d);
    for (std::size_t j = r.begin / b.multiplicity(); j < r.end / b.multiplicity(); ++j) out.push_back(b.monomialAt(j));
    return out;
  };

  std::vector<SubmoduleBasis::Block> blocks;
  for (int n = 0; n <= b.maxDegree(); ++n) {
    const IndexRange rows = b.degreeSlice(n);
    std::vector<Eigen::VectorXcd> spanning;
    for (const auto& g : generators) {
      const int d = *g.homogeneousDegree();
      if (d > n) continue;
      for (const auto& q : monomialsOfDegree(n - d)) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows.size()));
        accumulate_product(v, w, g, q, rows);
        spanning.push_back(std::move(v));
      }
    }
    DenseMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(spanning.size()));
    for (std::size_t c = 0; c < spanning.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = spanning[c];
    Split s = orthonormal_split(std::move(a), rankTolerance);
    blocks.push_back({n, rows, std::move(s.range), std::move(s.complement)});
  }
  return SubmoduleBasis(w.basis(), std::move(blocks), rankTolerance);
}

SubmoduleBasis polynomial_closure_submodule(const WeightSet& w, const std::vector<PolynomialGenerator>& generators,
                                            double rankTolerance) {
  if (generators.empty()) throw InvalidArgument("polynomial_closure_submodule: empty generator list");
  const GradedBasis& b = w.graded();
  const IndexRange all{0, b.dimension()};
  std::vector<Eigen::VectorXcd> spanning, interior;
  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    const auto& g = generators[gi];
    requireCompatible(w, g, gi);
    const int d = g.maxDegree();
    for (std::size_t j = 0; j < b.monomialCount(); ++j) {
      const MultiIndex& q = b.monomialAt(j);
      if (q.degree() + d > b.maxDegree()) break;
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.dimension()));
      accumulate_product(v, w, g, q, all);
      if (q.degree() + d < b.maxDegree()) interior.push_back(v);
      spanning.push_back(std::move(v));
    }
  }
  auto toMatrix = [&](const std::vector<Eigen::VectorXcd>& cols) {
    DenseMatrix a(static_cast<Eigen::Index>(b.dimension()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = cols[c];
    return a;
  };
  Split s = orthonormal_split(toMatrix(spanning), rankTolerance);
  std::vector<SubmoduleBasis::Block> blocks;
  blocks.push_back({Grading::kUngraded, all, std::move(s.range), std::move(s.complement)});
  SubmoduleBasis out(w.basis(), std::move(blocks), rankTolerance);
  out.interiorSubmodule = orthonormal_split(toMatrix(interior), rankTolerance).range;
  return out;
}

Eigen::VectorXcd kernel_vector(const WeightSet& w, const std::vector<Scalar>& point, int component) {
  const GradedBasis& b = w.graded();
  if (static_cast<int>(point.size()) != b.numVars())
    throw InvalidArgument("kernel_vector: point has " + std::to_string(point.size()) + " coordinates, expected " +
                          std::to_string(b.numVars()));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.dimension()));
  for (std::size_t j = 0; j < b.monomialCount(); ++j) {
    const MultiIndex& a = b.monomialAt(j);
    Scalar value = std::exp(-w.logLambdaAt(j));
    for (int i = 0; i < b.numVars(); ++i) value *= std::pow(std::conj(point[i]), a[i]);
    v[static_cast<Eigen::Index>(j * b.multiplicity() + component)] = value;
  }
  return v;
}

SubmoduleBasis span_of_point_evaluations(const WeightSet& w, const std::vector<std::vector<Scalar>>& points,
                                         double rankTolerance) {
  if (points.empty()) throw InvalidArgument("span_of_point_evaluations: no points");
  const GradedBasis& b = w.graded();
  const int k = b.multiplicity();
  DenseMatrix a(static_cast<Eigen::Index>(b.dimension()), static_cast<Eigen::Index>(points.size() * k));
  for (std::size_t p = 0; p < points.size(); ++p) {
    double normSq = 0.0;
    for (const auto& z : points[p]) normSq += std::norm(z);
    if (normSq >= 1.0) throw InvalidArgument("span_of_point_evaluations: point " + std::to_string(p) + " is not inside the unit ball");
    for (int c = 0; c < k; ++c) a.col(static_cast<Eigen::Index>(p * k + c)) = kernel_vector(w, points[p], c);
  }
  if (a.cols() > a.rows()) throw InvalidArgument("span_of_point_evaluations: more kernel vectors than dimensions");
  Split s = orthonormal_split(std::move(a), rankTolerance);
  if (s.range.cols() < static_cast<Eigen::Index>(points.size() * k)) {
    std::ostringstream os;
    os << "span_of_point_evaluations: kernel vectors are numerically dependent (condition number "
       << s.conditionNumber << "); points nearly coincide";
    throw InvalidArgument(os.str());
  }
  std::vector<SubmoduleBasis::Block> blocks;
  // complement first: S^perp is the kernel span
  blocks.push_back({Grading::kUngraded, IndexRange{0, b.dimension()}, std::move(s.complement), std::move(s.range)});
  SubmoduleBasis out(w.basis(), std::move(blocks), rankTolerance);
  out.conditionNumber = s.conditionNumber;
  return out;
}

SubmoduleBasis submodule_from_generators(const WeightSet& w, const std::vector<PolynomialGenerator>& generators) {
  if (generators.empty()) throw InvalidArgument("submodule_from_generators: empty generator list");
  const bool monomial = std::all_of(generators.begin(), generators.end(), [](const auto& g) { return g.isMonomial(); });
  if (monomial) {
    std::vector<MonomialGenerator> mons;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      requireCompatible(w, generators[g], g);
      mons.push_back({generators[g].terms().front().alpha, generators[g].terms().front().component});
    }
    return monomial_submodule(w, mons);
  }
  const bool homogeneous =
      std::all_of(generators.begin(), generators.end(), [](const auto& g) { return g.homogeneousDegree().has_value(); });
  return homogeneous ? homogeneous_submodule(w, generators) : polynomial_closure_submodule(w, generators);
}

TruncatedOperator projection_matrix(const SubmoduleBasis& s, Side side) { return projection_onto(s.subspace(side)); }

double module_residual(const SubmoduleBasis& s, const WeightSet& w) {
  if (!s.basis()->sameShape(w.graded())) throw InvalidArgument("module_residual: basis mismatch");
  const Subspace target = s.subspace(Side::Submodule);
  double worst = 0.0;
  for (int i = 0; i < w.graded().numVars(); ++i) {
    const TruncatedOperator z = coordinate_shift(w, i);
    if (s.isGraded() || !s.interiorSubmodule) {
      worst = std::max(worst, invariance_residual(z, target));
      continue;
    }
    const SparseMatrix from = to_sparse(*s.interiorSubmodule);
    SparseMatrix zu = z.matrix() * from;
    SparseMatrix r = zu - target.columns * (SparseMatrix(target.columns.adjoint()) * zu);
    double col = 0.0;
    for (int c = 0; c < r.outerSize(); ++c) {
      double sq = 0.0;
      for (SparseMatrix::InnerIterator it(r, c); it; ++it) sq += std::norm(it.value());
      col = std::max(col, std::sqrt(sq));
    }
    worst = std::max(worst, col / std::max(1.0, norm_bound(z.matrix())));
  }
  return worst;
}

}  // namespace hilbmod
