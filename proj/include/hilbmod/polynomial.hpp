#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hilbmod/common.hpp"
#include "hilbmod/graded_basis.hpp"

namespace hilbmod {

struct PolynomialTerm {
  MultiIndex alpha;
  int component = 0;
  Scalar coefficient{1.0, 0.0};
};

/// Element of C[z] (x) C^k given by its nonzero terms.
class PolynomialGenerator {
 public:
  /// Rejects duplicate (alpha, component) pairs, mixed variable counts and
  /// all-zero coefficient lists. Zero terms are dropped.
  explicit PolynomialGenerator(std::vector<PolynomialTerm> terms);

  const std::vector<PolynomialTerm>& terms() const { return terms_; }
  int numVars() const { return terms_.front().alpha.numVars(); }
  /// Common degree of all terms; nullopt when the generator is not homogeneous.
  std::optional<int> homogeneousDegree() const;
  int maxDegree() const;
  int maxComponent() const;
  bool isMonomial() const { return terms_.size() == 1; }

  std::string toString() const;

 private:
  std::vector<PolynomialTerm> terms_;
};

class PolynomialSyntaxError : public InvalidArgument {
 public:
  PolynomialSyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `term (+|- term)*` with
///   term = factor (* factor)* [(c<idx>)],  factor = number | z<i>[^e]
/// Variables are 1-based (z1..zm), components 0-based (c0..c{k-1}).
/// Whitespace is ignored; like terms are merged.
PolynomialGenerator parse_polynomial(std::string_view text, int numVars, int multiplicity = 1);

/// Short grammar description used by the command-line help.
const char* polynomial_grammar_help();

}  // namespace hilbmod
