#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hilbmod/common.hpp"

namespace hilbmod {

/// Exponent vector (alpha_1, ..., alpha_m) of a monomial z^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex zero(int numVars) { return MultiIndex(std::vector<int>(numVars, 0)); }
  static MultiIndex unit(int numVars, int var);

  int numVars() const { return static_cast<int>(exponents_.size()); }
  int degree() const;
  int operator[](int i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }

  /// alpha + e_var
  MultiIndex raised(int var) const;
  /// alpha - e_var; requires alpha_var >= 1.
  MultiIndex lowered(int var) const;
  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise alpha >= other.
  bool dominates(const MultiIndex& other) const;

  std::string toString() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> exponents_;
};

/// Half-open ordinal range.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
};

struct BasisElement {
  MultiIndex alpha;
  int component = 0;
};

/// Monomial basis of C[z_1..z_m] (x) C^k truncated at total degree N.
///
/// Ordering: degree-major; within a degree, exponent vectors in descending
/// lexicographic order (z_1^n first); the coefficient component varies
/// fastest. Degree slices are therefore contiguous and truncating at a
/// smaller degree is a prefix of the ordering.
class GradedBasis {
 public:
  static constexpr std::size_t kDefaultDimensionCap = 50000;

  GradedBasis(int numVars, int maxDegree, int multiplicity = 1,
              std::size_t dimensionCap = kDefaultDimensionCap);

  int numVars() const { return numVars_; }
  int maxDegree() const { return maxDegree_; }
  int multiplicity() const { return multiplicity_; }
  std::size_t dimension() const { return monomials_.size() * multiplicity_; }
  /// Number of monomials (dimension with k = 1).
  std::size_t monomialCount() const { return monomials_.size(); }

  std::size_t indexOf(const MultiIndex& alpha, int component = 0) const;
  BasisElement elementAt(std::size_t i) const;
  IndexRange degreeSlice(int n) const;
  int degreeAt(std::size_t i) const { return monomials_[i / multiplicity_].degree(); }

  /// Ordinal of alpha among monomials only (component-free).
  std::size_t monomialIndex(const MultiIndex& alpha) const;
  const MultiIndex& monomialAt(std::size_t j) const { return monomials_[j]; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }

  bool sameShape(const GradedBasis& other) const {
    return numVars_ == other.numVars_ && maxDegree_ == other.maxDegree_ &&
           multiplicity_ == other.multiplicity_;
  }

 private:
  std::size_t rankWithinDegree(const MultiIndex& alpha) const;
  std::size_t countCompositions(int total, int parts) const;

  int numVars_;
  int maxDegree_;
  int multiplicity_;
  std::vector<MultiIndex> monomials_;
  std::vector<std::size_t> sliceStart_;  // monomial ordinal of first degree-n monomial
  std::vector<std::vector<std::size_t>> binom_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

BasisPtr enumerate_basis(int numVars, int maxDegree, int multiplicity = 1,
                         std::size_t dimensionCap = GradedBasis::kDefaultDimensionCap);

/// Binomial coefficient as a double (exact for the ranges used here).
double binomial(int n, int k);

}  // namespace hilbmod
