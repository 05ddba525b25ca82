#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hilbmod/graded_basis.hpp"

namespace hilbmod {

/// Positive weights lambda_alpha = ||z^alpha|| defining a module M_Lambda.
///
/// Stored as log(lambda) per monomial ordinal of the basis. The shift weight
/// of Z_i at alpha is lambda_{alpha+e_i} / lambda_alpha.
class WeightSet {
 public:
  WeightSet(BasisPtr basis, std::vector<double> logLambda, std::string label);

  const BasisPtr& basis() const { return basis_; }
  const GradedBasis& graded() const { return *basis_; }
  const std::string& label() const { return label_; }

  double logLambda(const MultiIndex& alpha) const { return logLambda_[basis_->monomialIndex(alpha)]; }
  double lambda(const MultiIndex& alpha) const;
  double logLambdaAt(std::size_t monomial) const { return logLambda_[monomial]; }
  const std::vector<double>& logLambdas() const { return logLambda_; }

  /// lambda_{alpha+e_var} / lambda_alpha, for deg(alpha) < N.
  double shiftWeight(const MultiIndex& alpha, int var) const;

  /// Same weights on the truncation at degree n <= N (a prefix of the ordering),
  /// optionally with a different multiplicity k.
  WeightSet truncated(int maxDegree, std::optional<int> multiplicity = std::nullopt) const;

 private:
  BasisPtr basis_;
  std::vector<double> logLambda_;
  std::string label_;
};

// Built-in families. All weights are computed in log space.

/// Symmetric Fock normalization: lambda_alpha^2 = alpha! / |alpha|!.
WeightSet drury_arveson_weights(BasisPtr basis);
/// Normalized volume measure on the ball: lambda_alpha^2 = alpha! m! / (|alpha|+m)!.
WeightSet bergman_ball_weights(BasisPtr basis);
/// Normalized surface measure on the sphere: lambda_alpha^2 = alpha! (m-1)! / (|alpha|+m-1)!.
WeightSet hardy_ball_weights(BasisPtr basis);
/// lambda_alpha = ((1+|alpha|)!)^(-delta); shift weight (2+|alpha|)^(-delta).
WeightSet factorial_delta_weights(BasisPtr basis, double delta);
/// One-variable shift with weight sqrt(k/n) on e_k (1 <= k <= n), 1 beyond.
/// Basis vector e_k of the l^2 model is the monomial of degree k-1.
WeightSet example3_weights(int n, BasisPtr basis);
/// lambda_alpha = 1.
WeightSet unit_weights(BasisPtr basis);
/// Random positive weights: each lambda_alpha is lambda of a predecessor
/// alpha - e_i times a factor drawn from [lo, hi]. Used for randomized identity checks.
WeightSet random_weights(BasisPtr basis, std::mt19937_64& rng, double lo = 0.3, double hi = 1.2);

/// Weight of the one-variable shift S_n on e_k (1-based k).
double example3_shift_weight(int n, int k);

struct FamilySpec {
  std::string id;
  std::string description;
  bool needsDelta = false;
  bool needsN = false;
};

const std::vector<FamilySpec>& weight_families();

/// Builds a family by id ("drury-arveson", "bergman-ball", "hardy-ball",
/// "factorial-delta", "example3", "unit").
WeightSet make_weights(const std::string& family, BasisPtr basis, double delta = 1.0,
                       int example3N = 1);

enum class Condition { Bounded, Contractive, CrossCommutatorSp };

std::string to_string(Condition c);

struct ConditionReport {
  Condition condition = Condition::Bounded;
  std::optional<double> p;
  bool satisfiedAtTruncation = false;
  double witnessValue = 0.0;
  std::vector<std::pair<int, double>> trend;
  std::optional<Verdict> verdict;
};

/// Boundedness or contractivity of the shifts, or S_p membership of the
/// cross-commutators, checked over the truncation. For CrossCommutatorSp the
/// trend holds the max over (i, j) of the interior S_p norm of [Z_i^*, Z_j]
/// at each requested degree (each <= N).
ConditionReport check_condition(const WeightSet& w, Condition condition,
                                std::optional<double> p = std::nullopt,
                                const std::vector<int>& degrees = {});

/// Plain-text table "a_1 ... a_m lambda", one multi-index per line.
void write_weight_table(std::ostream& os, const WeightSet& w);
WeightSet read_weight_table(std::istream& is, BasisPtr basis);

}  // namespace hilbmod
