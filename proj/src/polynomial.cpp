#include "hilbmod/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace hilbmod {

PolynomialGenerator::PolynomialGenerator(std::vector<PolynomialTerm> terms) {
  if (terms.empty()) throw InvalidArgument("PolynomialGenerator: no terms");
  const int m = terms.front().alpha.numVars();
  for (std::size_t a = 0; a < terms.size(); ++a) {
    if (terms[a].alpha.numVars() != m) throw InvalidArgument("PolynomialGenerator: mixed variable counts");
    if (terms[a].component < 0) throw InvalidArgument("PolynomialGenerator: negative component index");
    for (std::size_t b = a + 1; b < terms.size(); ++b)
      if (terms[a].alpha == terms[b].alpha && terms[a].component == terms[b].component)
        throw InvalidArgument("PolynomialGenerator: duplicate term " + terms[a].alpha.toString());
  }
  std::erase_if(terms, [](const PolynomialTerm& t) { return t.coefficient == Scalar(0.0); });
  if (terms.empty()) throw InvalidArgument("PolynomialGenerator: all coefficients are zero");
  terms_ = std::move(terms);
}

std::optional<int> PolynomialGenerator::homogeneousDegree() const {
  const int d = terms_.front().alpha.degree();
  for (const auto& t : terms_)
    if (t.alpha.degree() != d) return std::nullopt;
  return d;
}

int PolynomialGenerator::maxDegree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.alpha.degree());
  return d;
}

int PolynomialGenerator::maxComponent() const {
  int c = 0;
  for (const auto& t : terms_) c = std::max(c, t.component);
  return c;
}

std::string PolynomialGenerator::toString() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coefficient.real();
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    os << std::abs(c);
    if (t.coefficient.imag() != 0.0) os << (t.coefficient.imag() < 0 ? "-" : "+") << std::abs(t.coefficient.imag()) << "i";
    for (int i = 0; i < t.alpha.numVars(); ++i) {
      if (t.alpha[i] == 0) continue;
      os << "*z" << (i + 1);
      if (t.alpha[i] > 1) os << '^' << t.alpha[i];
    }
    if (t.component != 0) os << " (c" << t.component << ')';
  }
  return os.str();
}

PolynomialSyntaxError::PolynomialSyntaxError(const std::string& message, std::size_t position)
    : InvalidArgument("polynomial syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int numVars, int multiplicity)
      : text_(text), numVars_(numVars), multiplicity_(multiplicity) {}

  PolynomialGenerator parse() {
    skipSpace();
    if (atEnd()) fail("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skipSpace();
    }
    term(sign);
    while (true) {
      skipSpace();
      if (atEnd()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("expected '+' or '-', found '") + c + "'");
      ++pos_;
      skipSpace();
      term(c == '-' ? -1.0 : 1.0);
    }
    std::vector<PolynomialTerm> terms;
    for (auto& [key, coef] : merged_) terms.push_back({MultiIndex(key.first), key.second, coef});
    try {
      return PolynomialGenerator(std::move(terms));
    } catch (const InvalidArgument& e) {
      throw PolynomialSyntaxError(e.what(), 0);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw PolynomialSyntaxError(msg, pos_); }
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skipSpace() {
    while (!atEnd() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  int integer() {
    skipSpace();
    const std::size_t start = pos_;
    while (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  double number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  void factor(double& coef, std::vector<int>& exps) {
    skipSpace();
    if (atEnd()) fail("expected a factor");
    const char c = peek();
    if (c == 'z' || c == 'Z') {
      ++pos_;
      const std::size_t varPos = pos_;
      const int var = integer();
      if (var < 1 || var > numVars_) {
        pos_ = varPos;
        fail("variable z" + std::to_string(var) + " outside z1..z" + std::to_string(numVars_));
      }
      int e = 1;
      skipSpace();
      if (!atEnd() && peek() == '^') {
        ++pos_;
        e = integer();
      }
      exps[var - 1] += e;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      coef *= number();
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }

  void term(double sign) {
    double coef = sign;
    std::vector<int> exps(numVars_, 0);
    int component = 0;
    factor(coef, exps);
    while (true) {
      skipSpace();
      if (atEnd()) break;
      if (peek() == '*') {
        ++pos_;
        factor(coef, exps);
        continue;
      }
      if (peek() == '(') {
        ++pos_;
        skipSpace();
        if (atEnd() || (peek() != 'c' && peek() != 'C')) fail("expected component marker 'c<idx>'");
        ++pos_;
        const std::size_t compPos = pos_;
        component = integer();
        if (component >= multiplicity_) {
          pos_ = compPos;
          fail("component c" + std::to_string(component) + " outside c0..c" + std::to_string(multiplicity_ - 1));
        }
        skipSpace();
        if (atEnd() || peek() != ')') fail("expected ')'");
        ++pos_;
      }
      break;
    }
    merged_[{exps, component}] += Scalar(coef);
  }

  std::string_view text_;
  int numVars_;
  int multiplicity_;
  std::size_t pos_ = 0;
  std::map<std::pair<std::vector<int>, int>, Scalar> merged_;
};

}  // namespace

PolynomialGenerator parse_polynomial(std::string_view text, int numVars, int multiplicity) {
  if (numVars < 1 || multiplicity < 1) throw InvalidArgument("parse_polynomial: need m >= 1 and k >= 1");
  return Parser(text, numVars, multiplicity).parse();
}

const char* polynomial_grammar_help() {
  return "Polynomial syntax: term (+|- term)*, term = [coef*] z<i>[^e] (* z<j>[^e])* [(c<idx>)]\n"
         "  variables z1..zm, components c0..c(k-1); a bare number is a constant term.\n"
         "  Examples: \"z1^2 + z2^2\", \"z1*z2\", \"2.5*z1^2*z2 (c1) - z2^3 (c0)\", \"z1 - 0.5\".\n"
         "  Separate several generators with ','.";
}

}  // namespace hilbmod
