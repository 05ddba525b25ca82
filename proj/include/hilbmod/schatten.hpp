#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilbmod/operators.hpp"

namespace hilbmod {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Window { Full, Interior };

/// Two independent routes to singular values: a direct SVD, or square roots
/// of the eigenvalues of T^*T.
enum class SvdRoute { Svd, Gram };

/// Descending singular values of the windowed operator (window columns, all
/// rows). Operators with a known degree shift on graded coordinates are
/// decomposed into per-degree blocks before the SVD.
std::vector<double> singular_values(const TruncatedOperator& t, Window window = Window::Interior,
                                    SvdRoute route = SvdRoute::Svd);
std::vector<double> singular_values(const DenseMatrix& m, SvdRoute route = SvdRoute::Svd);

/// (sum sigma^p)^(1/p); p = kInfinity gives the largest value.
double schatten_norm_of(const std::vector<double>& sigma, double p);
double schatten_norm(const TruncatedOperator& t, double p, Window window = Window::Interior);

/// Sum of the diagonal over the window coordinates.
Scalar trace(const TruncatedOperator& t, Window window = Window::Interior);

/// Dense principal submatrix on the window coordinates.
DenseMatrix window_matrix(const TruncatedOperator& t, Window window);

/// Smallest eigenvalue of a self-adjoint operator on the window (principal block).
double min_eigenvalue(const TruncatedOperator& t, Window window = Window::Interior);

/// Spectral split of a self-adjoint operator: P = positive part, C = negative part.
struct ApWitness {
  DenseMatrix positivePart;
  DenseMatrix compactPart;
  double pNormOfC = 0.0;
  double p = 1.0;
  double tracePositive = 0.0;
  double minEigenvalueOfP = 0.0;
};

ApWitness ap_witness(const TruncatedOperator& selfCommutator, double p, Window window = Window::Full);
ApWitness ap_witness(const DenseMatrix& selfAdjoint, double p);

/// Rank window of the positive singular values used by the decay fit, as
/// fractions of the positive count. The upper ranks of a truncated spectrum
/// are dominated by the truncation and are excluded by default.
struct FitWindow {
  double begin = 0.05;
  double end = 0.5;
};

struct DecayFit {
  std::optional<double> exponent;  // beta in sigma_k ~ k^(-beta)
  double intercept = 0.0;
  double residual = 0.0;           // RMS of log residuals
  std::size_t firstRank = 0;       // 1-based, inclusive
  std::size_t lastRank = 0;        // 1-based, inclusive
  std::size_t positiveCount = 0;

  bool conclusive() const { return exponent.has_value(); }
  std::optional<double> criticalExponent() const;
};

inline constexpr std::size_t kMinFitPoints = 20;

DecayFit decay_exponent_fit(std::vector<double> sigma, FitWindow window = {});

struct ConvergenceThresholds {
  double relIncrementTol = 1e-3;  // last-quarter increments relative to the last value
  double convergeRate = 1.2;      // decay exponent of increment density for CONVERGING
  double divergeRate = 1.05;      // at or below this (with growth) -> DIVERGING
  double divergeGrowth = 2.0;     // last / first value required for DIVERGING

  std::string describe() const;
  bool operator==(const ConvergenceThresholds&) const = default;
};

struct ConvergenceResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<double> incrementRate;
  double lastRelIncrement = 0.0;
  std::string rule;
  ConvergenceThresholds thresholds;
};

/// Empirical verdict on a sequence of (degree, value) pairs, ordered by degree.
///
/// CONVERGING: the last-quarter relative increments are below relIncrementTol
/// and non-increasing, or the increment density (increment / degree step)
/// decays at least like N^(-convergeRate) and is non-increasing.
/// DIVERGING: the density decays no faster than N^(-divergeRate) and the value
/// grew by divergeGrowth over the observed range.
ConvergenceResult convergence_diagnostic(const std::vector<std::pair<int, double>>& values,
                                         const ConvergenceThresholds& thresholds = {});

struct SchattenEstimate {
  double p = 1.0;
  std::vector<std::pair<int, double>> valuesByDegree;
  DecayFit fit;
  ConvergenceResult convergence;
};

std::string format_p(double p);

}  // namespace hilbmod
