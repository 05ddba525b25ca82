#include "hilbmod/weights.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hilbmod/operators.hpp"
#include "hilbmod/schatten.hpp"

namespace hilbmod {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converging: return "CONVERGING";
    case Verdict::Diverging: return "DIVERGING";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Bounded: return "BOUNDED";
    case Condition::Contractive: return "CONTRACTIVE";
    case Condition::CrossCommutatorSp: return "CROSS_COMMUTATOR_SP";
  }
  return "?";
}

WeightSet::WeightSet(BasisPtr basis, std::vector<double> logLambda, std::string label)
    : basis_(std::move(basis)), logLambda_(std::move(logLambda)), label_(std::move(label)) {
  if (!basis_) throw InvalidArgument("WeightSet: null basis");
  if (logLambda_.size() != basis_->monomialCount())
    throw InvalidArgument("WeightSet: expected " + std::to_string(basis_->monomialCount()) +
                          " weights, got " + std::to_string(logLambda_.size()));
  for (std::size_t j = 0; j < logLambda_.size(); ++j) {
    if (!std::isfinite(logLambda_[j]))
      throw InvalidArgument("WeightSet '" + label_ + "': non-finite weight at " +
                            basis_->monomialAt(j).toString());
  }
}

double WeightSet::lambda(const MultiIndex& alpha) const { return std::exp(logLambda(alpha)); }

double WeightSet::shiftWeight(const MultiIndex& alpha, int var) const {
  if (var < 0 || var >= basis_->numVars()) throw InvalidArgument("WeightSet::shiftWeight: variable out of range");
  if (alpha.degree() >= basis_->maxDegree())
    throw InvalidArgument("WeightSet::shiftWeight: " + alpha.toString() + " is at the truncation degree");
  return std::exp(logLambda(alpha.raised(var)) - logLambda(alpha));
}

WeightSet WeightSet::truncated(int maxDegree, std::optional<int> multiplicity) const {
  if (maxDegree < 0 || maxDegree > basis_->maxDegree())
    throw InvalidArgument("WeightSet::truncated: degree " + std::to_string(maxDegree) + " outside [0," +
                          std::to_string(basis_->maxDegree()) + "]");
  auto sub = enumerate_basis(basis_->numVars(), maxDegree, multiplicity.value_or(basis_->multiplicity()));
  std::vector<double> logs(logLambda_.begin(), logLambda_.begin() + sub->monomialCount());
  return WeightSet(std::move(sub), std::move(logs), label_);
}

namespace {

double logFactorial(int n) { return std::lgamma(n + 1.0); }

double sumLogFactorials(const MultiIndex& alpha) {
  double s = 0.0;
  for (int e : alpha.exponents()) s += logFactorial(e);
  return s;
}

template <class F>
WeightSet build(BasisPtr basis, std::string label, F&& logLambdaOf) {
  std::vector<double> logs;
  logs.reserve(basis->monomialCount());
  for (const auto& alpha : basis->monomials()) logs.push_back(logLambdaOf(alpha));
  return WeightSet(std::move(basis), std::move(logs), std::move(label));
}

}  // namespace

WeightSet drury_arveson_weights(BasisPtr basis) {
  return build(std::move(basis), "drury-arveson", [](const MultiIndex& a) {
    return 0.5 * (sumLogFactorials(a) - logFactorial(a.degree()));
  });
}

WeightSet bergman_ball_weights(BasisPtr basis) {
  const int m = basis->numVars();
  return build(std::move(basis), "bergman-ball", [m](const MultiIndex& a) {
    return 0.5 * (sumLogFactorials(a) + logFactorial(m) - logFactorial(a.degree() + m));
  });
}

WeightSet hardy_ball_weights(BasisPtr basis) {
  const int m = basis->numVars();
  return build(std::move(basis), "hardy-ball", [m](const MultiIndex& a) {
    return 0.5 * (sumLogFactorials(a) + logFactorial(m - 1) - logFactorial(a.degree() + m - 1));
  });
}

WeightSet factorial_delta_weights(BasisPtr basis, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InvalidArgument("factorial_delta_weights: delta must be a positive real");
  std::ostringstream label;
  label << "factorial-delta(" << delta << ")";
  return build(std::move(basis), label.str(),
               [delta](const MultiIndex& a) { return -delta * logFactorial(1 + a.degree()); });
}

double example3_shift_weight(int n, int k) {
  if (n < 1 || k < 1) throw InvalidArgument("example3_shift_weight: n and k must be >= 1");
  return k <= n ? std::sqrt(static_cast<double>(k) / n) : 1.0;
}

WeightSet example3_weights(int n, BasisPtr basis) {
  if (n < 1) throw InvalidArgument("example3_weights: n must be >= 1");
  if (basis->numVars() != 1) throw InvalidArgument("example3_weights: requires a one-variable basis");
  std::vector<double> logs(basis->monomialCount(), 0.0);
  // monomial of degree d is e_{d+1}; lambda_{d+1} = lambda_d * w(e_{d+1}).
  for (std::size_t d = 1; d < logs.size(); ++d)
    logs[d] = logs[d - 1] + std::log(example3_shift_weight(n, static_cast<int>(d)));
  return WeightSet(std::move(basis), std::move(logs), "example3(" + std::to_string(n) + ")");
}

WeightSet unit_weights(BasisPtr basis) {
  return build(std::move(basis), "unit", [](const MultiIndex&) { return 0.0; });
}

WeightSet random_weights(BasisPtr basis, std::mt19937_64& rng, double lo, double hi) {
  if (!(lo > 0.0 && hi >= lo)) throw InvalidArgument("random_weights: need 0 < lo <= hi");
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  std::vector<double> logs(basis->monomialCount(), 0.0);
  // each monomial other than 1 is reached from its predecessor z^alpha / z_i
  // for the first i with alpha_i > 0
  for (std::size_t j = 1; j < logs.size(); ++j) {
    const MultiIndex& a = basis->monomialAt(j);
    int var = 0;
    while (a[var] == 0) ++var;
    logs[j] = logs[basis->monomialIndex(a.lowered(var))] + dist(rng);
  }
  return WeightSet(std::move(basis), std::move(logs), "random");
}

const std::vector<FamilySpec>& weight_families() {
  static const std::vector<FamilySpec> families = {
      {"drury-arveson", "m-shift space H^2_m, lambda^2 = alpha!/|alpha|!", false, false},
      {"bergman-ball", "Bergman space of the unit ball, lambda^2 = alpha! m!/(|alpha|+m)!", false, false},
      {"hardy-ball", "Hardy space of the unit sphere, lambda^2 = alpha! (m-1)!/(|alpha|+m-1)!", false, false},
      {"factorial-delta", "lambda = ((1+|alpha|)!)^(-delta); needs --delta", true, false},
      {"example3", "one-variable shift with weights sqrt(k/n) for k <= n (m = 1; used by example3)", false,
       true},
      {"unit", "all lambda = 1", false, false},
  };
  return families;
}

WeightSet make_weights(const std::string& family, BasisPtr basis, double delta, int example3N) {
  if (family == "drury-arveson") return drury_arveson_weights(std::move(basis));
  if (family == "bergman-ball") return bergman_ball_weights(std::move(basis));
  if (family == "hardy-ball") return hardy_ball_weights(std::move(basis));
  if (family == "factorial-delta") return factorial_delta_weights(std::move(basis), delta);
  if (family == "example3") return example3_weights(example3N, std::move(basis));
  if (family == "unit") return unit_weights(std::move(basis));
  throw InvalidArgument("unknown weight family '" + family + "'");
}

ConditionReport check_condition(const WeightSet& w, Condition condition, std::optional<double> p,
                                const std::vector<int>& degrees) {
  ConditionReport report;
  report.condition = condition;
  report.p = p;
  const auto& basis = w.graded();

  if (condition == Condition::Bounded || condition == Condition::Contractive) {
    double sup = 0.0;
    for (std::size_t j = 0; j < basis.monomialCount(); ++j) {
      const MultiIndex& a = basis.monomialAt(j);
      if (a.degree() >= basis.maxDegree()) break;
      for (int i = 0; i < basis.numVars(); ++i) sup = std::max(sup, w.shiftWeight(a, i));
    }
    report.witnessValue = sup;
    report.satisfiedAtTruncation =
        condition == Condition::Bounded ? std::isfinite(sup) : sup <= 1.0 + 1e-12;
    return report;
  }

  if (!p || !(*p >= 1.0)) throw InvalidArgument("check_condition: CROSS_COMMUTATOR_SP requires p >= 1");
  const std::vector<int> sweep = degrees.empty() ? std::vector<int>{basis.maxDegree()} : degrees;
  for (int n : sweep) {
    WeightSet wn = w.truncated(n);
    double worst = 0.0;
    for (int i = 0; i < basis.numVars(); ++i)
      for (int j = 0; j < basis.numVars(); ++j)
        worst = std::max(worst, schatten_norm(cross_commutator(wn, i, j), *p, Window::Interior));
    report.trend.emplace_back(n, worst);
  }
  report.witnessValue = report.trend.back().second;
  if (report.trend.size() >= 4) {
    report.verdict = convergence_diagnostic(report.trend).verdict;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  report.satisfiedAtTruncation = report.verdict == Verdict::Converging;
  return report;
}

void write_weight_table(std::ostream& os, const WeightSet& w) {
  const auto& b = w.graded();
  os << "# weights " << w.label() << " m=" << b.numVars() << " N=" << b.maxDegree() << '\n';
  os << std::setprecision(17);
  for (std::size_t j = 0; j < b.monomialCount(); ++j) {
    for (int e : b.monomialAt(j).exponents()) os << e << ' ';
    os << std::exp(w.logLambdaAt(j)) << '\n';
  }
}

WeightSet read_weight_table(std::istream& is, BasisPtr basis) {
  std::vector<double> logs(basis->monomialCount(), std::numeric_limits<double>::quiet_NaN());
  std::string label = "table";
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line);
      std::string hash, word;
      hs >> hash >> word;
      if (word == "weights") hs >> label;
      continue;
    }
    std::istringstream ls(line);
    std::vector<int> e(basis->numVars());
    for (auto& x : e) {
      if (!(ls >> x)) throw InvalidArgument("read_weight_table: malformed line '" + line + "'");
    }
    double lambda = 0.0;
    if (!(ls >> lambda) || !(lambda > 0.0))
      throw InvalidArgument("read_weight_table: missing or non-positive weight in '" + line + "'");
    logs[basis->monomialIndex(MultiIndex(e))] = std::log(lambda);
  }
  return WeightSet(std::move(basis), std::move(logs), label);
}

}  // namespace hilbmod
