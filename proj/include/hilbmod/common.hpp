#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hilbmod {

using Scalar = std::complex<double>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncation-level verdict on a sequence of norms; always empirical.
enum class Verdict { Converging, Diverging, Inconclusive };

std::string to_string(Verdict v);

}  // namespace hilbmod
