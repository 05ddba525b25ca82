#include "hilbmod/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hilbmod {

namespace {

std::vector<std::size_t> windowCoordinates(const TruncatedOperator& t, Window window) {
  if (window == Window::Interior) return t.interiorCoordinates();
  std::vector<std::size_t> all(t.dimension());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

void requireFinite(const SparseMatrix& m) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      if (!std::isfinite(it.value().real()) || !std::isfinite(it.value().imag()))
        throw InvalidArgument("singular_values: operator has non-finite entries");
}

std::vector<double> sortedDescending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

/// Per-degree blocks (rows of degree d + s, columns of degree d) of a
/// graded operator with known shift s; empty when the sparsity pattern does
/// not respect the grading.
std::optional<std::vector<DenseMatrix>> degreeBlocks(const TruncatedOperator& t,
                                                     const std::vector<std::size_t>& cols) {
  if (!t.degreeShift() || !t.grading()->fullyGraded()) return std::nullopt;
  const int s = *t.degreeShift();
  const auto& deg = t.grading()->degree;
  std::map<int, std::vector<std::size_t>> colsByDegree, rowsByDegree;
  for (std::size_t c : cols) colsByDegree[deg[c]].push_back(c);
  for (std::size_t r = 0; r < t.dimension(); ++r) rowsByDegree[deg[r]].push_back(r);

  const auto& m = t.matrix();
  for (std::size_t c : cols)
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(c)); it; ++it)
      if (deg[it.row()] != deg[c] + s) return std::nullopt;

  std::vector<DenseMatrix> blocks;
  std::vector<Eigen::Index> rowPos(t.dimension(), -1);
  for (const auto& [d, cs] : colsByDegree) {
    auto rit = rowsByDegree.find(d + s);
    const std::size_t nr = rit == rowsByDegree.end() ? 0 : rit->second.size();
    DenseMatrix b = DenseMatrix::Zero(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(cs.size()));
    if (nr > 0) {
      for (std::size_t i = 0; i < nr; ++i) rowPos[rit->second[i]] = static_cast<Eigen::Index>(i);
      for (std::size_t j = 0; j < cs.size(); ++j)
        for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(cs[j])); it; ++it)
          b(rowPos[it.row()], static_cast<Eigen::Index>(j)) = it.value();
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

DenseMatrix columnsOf(const TruncatedOperator& t, const std::vector<std::size_t>& cols) {
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(t.dimension()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (SparseMatrix::InnerIterator it(t.matrix(), static_cast<Eigen::Index>(cols[j])); it; ++it)
      out(it.row(), static_cast<Eigen::Index>(j)) = it.value();
  return out;
}

std::vector<double> hermitianEigenvalues(const DenseMatrix& h) {
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::vector<double> singular_values(const DenseMatrix& m, SvdRoute route) {
  const Eigen::Index n = std::min(m.rows(), m.cols());
  if (n == 0) return std::vector<double>(static_cast<std::size_t>(m.cols()), 0.0);
  std::vector<double> out;
  if (route == SvdRoute::Svd) {
    Eigen::BDCSVD<DenseMatrix> svd(m);
    const auto& s = svd.singularValues();
    out.assign(s.data(), s.data() + s.size());
  } else {
    DenseMatrix gram = m.adjoint() * m;
    for (double ev : hermitianEigenvalues(gram)) out.push_back(std::sqrt(std::max(0.0, ev)));
    out = sortedDescending(std::move(out));
    out.resize(static_cast<std::size_t>(n));
  }
  out.resize(static_cast<std::size_t>(m.cols()), 0.0);
  return sortedDescending(std::move(out));
}

std::vector<double> singular_values(const TruncatedOperator& t, Window window, SvdRoute route) {
  requireFinite(t.matrix());
  const auto cols = windowCoordinates(t, window);
  if (auto blocks = degreeBlocks(t, cols)) {
    std::vector<double> out;
    out.reserve(cols.size());
    for (const auto& b : *blocks) {
      auto s = singular_values(b, route);
      out.insert(out.end(), s.begin(), s.end());
    }
    return sortedDescending(std::move(out));
  }
  return singular_values(columnsOf(t, cols), route);
}

double schatten_norm_of(const std::vector<double>& sigma, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("schatten_norm: p must be >= 1 (got " + std::to_string(p) + ")");
  double top = 0.0;
  for (double s : sigma) top = std::max(top, std::abs(s));
  if (std::isinf(p) || top == 0.0) return top;
  double sum = 0.0;
  for (double s : sigma) sum += std::pow(std::abs(s) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double schatten_norm(const TruncatedOperator& t, double p, Window window) {
  if (!(p >= 1.0)) throw InvalidArgument("schatten_norm: p must be >= 1 (got " + std::to_string(p) + ")");
  return schatten_norm_of(singular_values(t, window), p);
}

Scalar trace(const TruncatedOperator& t, Window window) {
  Scalar sum = 0.0;
  for (std::size_t i : windowCoordinates(t, window)) sum += t.matrix().coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  return sum;
}

DenseMatrix window_matrix(const TruncatedOperator& t, Window window) {
  const auto idx = windowCoordinates(t, window);
  std::vector<Eigen::Index> pos(t.dimension(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<Eigen::Index>(i);
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (SparseMatrix::InnerIterator it(t.matrix(), static_cast<Eigen::Index>(idx[j])); it; ++it)
      if (pos[it.row()] >= 0) out(pos[it.row()], static_cast<Eigen::Index>(j)) = it.value();
  return out;
}

double min_eigenvalue(const TruncatedOperator& t, Window window) {
  const auto cols = windowCoordinates(t, window);
  if (t.degreeShift() && *t.degreeShift() == 0) {
    if (auto blocks = degreeBlocks(t, cols)) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& b : *blocks) {
        if (b.rows() != b.cols()) break;
        for (double ev : hermitianEigenvalues(b)) best = std::min(best, ev);
      }
      if (std::isfinite(best) || cols.empty()) return cols.empty() ? 0.0 : best;
    }
  }
  const auto ev = hermitianEigenvalues(window_matrix(t, window));
  return ev.empty() ? 0.0 : *std::min_element(ev.begin(), ev.end());
}

ApWitness ap_witness(const DenseMatrix& h, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("ap_witness: p must be >= 1");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (h.rows() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("ap_witness: input is not self-adjoint");
  ApWitness w;
  w.p = p;
  const Eigen::Index n = h.rows();
  w.positivePart = DenseMatrix::Zero(n, n);
  w.compactPart = DenseMatrix::Zero(n, n);
  if (n == 0) return w;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const auto& ev = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  std::vector<double> negatives;
  for (Eigen::Index i = 0; i < n; ++i) {
    const DenseMatrix outer = vecs.col(i) * vecs.col(i).adjoint();
    if (ev[i] > 0) {
      w.positivePart += ev[i] * outer;
      w.tracePositive += ev[i];
    } else {
      w.compactPart += ev[i] * outer;
      negatives.push_back(-ev[i]);
    }
  }
  w.pNormOfC = schatten_norm_of(negatives, p);
  const auto pev = hermitianEigenvalues(w.positivePart);
  w.minEigenvalueOfP = *std::min_element(pev.begin(), pev.end());
  return w;
}

ApWitness ap_witness(const TruncatedOperator& selfCommutator, double p, Window window) {
  return ap_witness(window_matrix(selfCommutator, window), p);
}

std::optional<double> DecayFit::criticalExponent() const {
  if (!exponent || !(*exponent > 0.0)) return std::nullopt;
  return 1.0 / *exponent;
}

DecayFit decay_exponent_fit(std::vector<double> sigma, FitWindow window) {
  if (!(window.begin >= 0.0 && window.end > window.begin && window.end <= 1.0))
    throw InvalidArgument("decay_exponent_fit: need 0 <= begin < end <= 1");
  sigma = sortedDescending(std::move(sigma));
  DecayFit fit;
  if (sigma.empty() || !(sigma.front() > 0.0)) return fit;
  const double floor = 1e-12 * sigma.front();
  std::size_t positive = 0;
  while (positive < sigma.size() && sigma[positive] > floor) ++positive;
  fit.positiveCount = positive;
  const auto first = static_cast<std::size_t>(std::ceil(window.begin * static_cast<double>(positive)));
  const auto last = static_cast<std::size_t>(std::ceil(window.end * static_cast<double>(positive)));
  fit.firstRank = first + 1;
  fit.lastRank = last;
  if (last < first + kMinFitPoints) return fit;

  const auto n = static_cast<double>(last - first);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = first; i < last; ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(sigma[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double r = std::log(sigma[i]) - (intercept + slope * std::log(static_cast<double>(i + 1)));
    ss += r * r;
  }
  fit.exponent = -slope;
  fit.intercept = intercept;
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::string ConvergenceThresholds::describe() const {
  std::ostringstream os;
  os << "relIncrementTol=" << relIncrementTol << ";convergeRate=" << convergeRate
     << ";divergeRate=" << divergeRate << ";divergeGrowth=" << divergeGrowth;
  return os.str();
}

ConvergenceResult convergence_diagnostic(const std::vector<std::pair<int, double>>& values,
                                         const ConvergenceThresholds& th) {
  ConvergenceResult out;
  out.thresholds = th;
  const std::size_t n = values.size();
  if (n < 4) {
    out.rule = "fewer than 4 points";
    return out;
  }
  for (std::size_t i = 1; i < n; ++i)
    if (values[i].first <= values[i - 1].first)
      throw InvalidArgument("convergence_diagnostic: degrees must be strictly increasing");

  std::vector<double> inc(n - 1);
  for (std::size_t i = 1; i < n; ++i) inc[i - 1] = std::abs(values[i].second - values[i - 1].second);
  const double last = std::abs(values.back().second);
  const double ref = last > 0.0 ? last : 1.0;

  const std::size_t quarter = std::max<std::size_t>(2, (inc.size() + 3) / 4);
  bool small = true, nonIncreasing = true;
  for (std::size_t i = inc.size() - quarter; i < inc.size(); ++i) {
    small = small && inc[i] / ref <= th.relIncrementTol;
    if (i > inc.size() - quarter) nonIncreasing = nonIncreasing && inc[i] <= inc[i - 1] * (1 + 1e-9) + 1e-300;
  }
  out.lastRelIncrement = inc.back() / ref;
  if (small && nonIncreasing) {
    out.verdict = Verdict::Converging;
    out.rule = "increment";
    return out;
  }

  // increment density vs degree, over the last half of the increments
  const std::size_t half = std::max<std::size_t>(2, (inc.size() + 1) / 2);
  std::vector<double> xs, ys, dens;
  for (std::size_t i = inc.size() - half; i < inc.size(); ++i) {
    const double step = values[i + 1].first - values[i].first;
    const double density = inc[i] / step;
    const double mid = 0.5 * (values[i + 1].first + values[i].first);
    dens.push_back(density);
    if (density > 0.0 && mid > 0.0) {
      xs.push_back(std::log(mid));
      ys.push_back(std::log(density));
    }
  }
  if (xs.size() < 2) {
    out.rule = "increments vanish irregularly";
    return out;
  }
  const double k = static_cast<double>(xs.size());
  const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double rate = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
  out.incrementRate = rate;
  bool densityDecreasing = true;
  for (std::size_t i = 1; i < dens.size(); ++i) densityDecreasing = densityDecreasing && dens[i] <= dens[i - 1] * (1 + 1e-9);

  if (rate >= th.convergeRate && densityDecreasing) {
    out.verdict = Verdict::Converging;
    out.rule = "rate";
    return out;
  }
  const double first = std::abs(values.front().second);
  const bool grew = first > 0.0 ? last >= th.divergeGrowth * first : last > 0.0;
  if (rate <= th.divergeRate && grew) {
    out.verdict = Verdict::Diverging;
    out.rule = "rate+growth";
    return out;
  }
  out.rule = "neither";
  return out;
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace hilbmod
