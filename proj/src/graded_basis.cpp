#include "hilbmod/graded_basis.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace hilbmod {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw InvalidArgument("MultiIndex: negative exponent in " + toString());
  }
}

MultiIndex MultiIndex::unit(int numVars, int var) {
  if (var < 0 || var >= numVars) throw InvalidArgument("MultiIndex::unit: variable out of range");
  std::vector<int> e(numVars, 0);
  e[var] = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::degree() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }

MultiIndex MultiIndex::raised(int var) const {
  MultiIndex out = *this;
  out.exponents_.at(var) += 1;
  return out;
}

MultiIndex MultiIndex::lowered(int var) const {
  if (exponents_.at(var) == 0) throw InvalidArgument("MultiIndex::lowered: exponent already zero");
  MultiIndex out = *this;
  out.exponents_[var] -= 1;
  return out;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.numVars() != numVars()) throw InvalidArgument("MultiIndex: variable count mismatch");
  MultiIndex out = *this;
  for (int i = 0; i < numVars(); ++i) out.exponents_[i] += other.exponents_[i];
  return out;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  if (other.numVars() != numVars()) return false;
  for (int i = 0; i < numVars(); ++i)
    if (exponents_[i] < other.exponents_[i]) return false;
  return true;
}

std::string MultiIndex::toString() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) os << ',';
    os << exponents_[i];
  }
  os << ')';
  return os.str();
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

namespace {

void appendDegree(int numVars, int var, int remaining, std::vector<int>& prefix,
                  std::vector<MultiIndex>& out) {
  if (var == numVars - 1) {
    prefix[var] = remaining;
    out.emplace_back(prefix);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    prefix[var] = v;
    appendDegree(numVars, var + 1, remaining - v, prefix, out);
  }
}

}  // namespace

GradedBasis::GradedBasis(int numVars, int maxDegree, int multiplicity, std::size_t dimensionCap)
    : numVars_(numVars), maxDegree_(maxDegree), multiplicity_(multiplicity) {
  if (numVars <= 0) throw InvalidArgument("GradedBasis: number of variables must be >= 1");
  if (maxDegree < 0) throw InvalidArgument("GradedBasis: maximal degree must be >= 0");
  if (multiplicity <= 0) throw InvalidArgument("GradedBasis: multiplicity must be >= 1");

  const double dim = multiplicity * binomial(maxDegree + numVars, numVars);
  if (dim > static_cast<double>(dimensionCap)) {
    std::ostringstream os;
    os << "GradedBasis: dimension " << dim << " for (m=" << numVars << ", N=" << maxDegree
       << ", k=" << multiplicity << ") exceeds cap " << dimensionCap;
    throw InvalidArgument(os.str());
  }

  const int top = maxDegree + numVars + 1;
  binom_.assign(top + 1, std::vector<std::size_t>(top + 1, 0));
  for (int n = 0; n <= top; ++n) {
    binom_[n][0] = 1;
    for (int k = 1; k <= n; ++k) binom_[n][k] = binom_[n - 1][k - 1] + (k < n ? binom_[n - 1][k] : 0);
  }

  monomials_.reserve(static_cast<std::size_t>(dim) / multiplicity);
  std::vector<int> prefix(numVars, 0);
  for (int n = 0; n <= maxDegree; ++n) {
    sliceStart_.push_back(monomials_.size());
    appendDegree(numVars, 0, n, prefix, monomials_);
  }
  sliceStart_.push_back(monomials_.size());
}

std::size_t GradedBasis::countCompositions(int total, int parts) const {
  if (parts == 0) return total == 0 ? 1 : 0;
  return binom_[total + parts - 1][parts - 1];
}

std::size_t GradedBasis::rankWithinDegree(const MultiIndex& alpha) const {
  std::size_t rank = 0;
  int remaining = alpha.degree();
  for (int i = 0; i + 1 < numVars_; ++i) {
    for (int v = alpha[i] + 1; v <= remaining; ++v)
      rank += countCompositions(remaining - v, numVars_ - i - 1);
    remaining -= alpha[i];
  }
  return rank;
}

std::size_t GradedBasis::monomialIndex(const MultiIndex& alpha) const {
  if (alpha.numVars() != numVars_)
    throw InvalidArgument("GradedBasis: multi-index " + alpha.toString() + " has wrong variable count");
  const int n = alpha.degree();
  if (n > maxDegree_)
    throw InvalidArgument("GradedBasis: multi-index " + alpha.toString() + " exceeds degree bound " +
                          std::to_string(maxDegree_));
  return sliceStart_[n] + rankWithinDegree(alpha);
}

std::size_t GradedBasis::indexOf(const MultiIndex& alpha, int component) const {
  if (component < 0 || component >= multiplicity_)
    throw InvalidArgument("GradedBasis: component " + std::to_string(component) + " out of range [0," +
                          std::to_string(multiplicity_) + ")");
  return monomialIndex(alpha) * multiplicity_ + component;
}

BasisElement GradedBasis::elementAt(std::size_t i) const {
  if (i >= dimension())
    throw InvalidArgument("GradedBasis: ordinal " + std::to_string(i) + " out of range [0," +
                          std::to_string(dimension()) + ")");
  return {monomials_[i / multiplicity_], static_cast<int>(i % multiplicity_)};
}

IndexRange GradedBasis::degreeSlice(int n) const {
  if (n < 0 || n > maxDegree_)
    throw InvalidArgument("GradedBasis: degree " + std::to_string(n) + " outside [0," +
                          std::to_string(maxDegree_) + "]");
  return {sliceStart_[n] * multiplicity_, sliceStart_[n + 1] * multiplicity_};
}

BasisPtr enumerate_basis(int numVars, int maxDegree, int multiplicity, std::size_t dimensionCap) {
  return std::make_shared<const GradedBasis>(numVars, maxDegree, multiplicity, dimensionCap);
}

}  // namespace hilbmod
