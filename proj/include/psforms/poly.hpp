#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psforms/rational.hpp"

namespace psforms {

/// Exponent vector indexed by variable position.
using Exponents = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
class Poly {
 public:
  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t var);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const Rational& c);
  Poly homogeneous_part(int d) const;
  Poly derivative(std::size_t var) const;
  Poly pow(unsigned k) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const { return *this * Rational(-1); }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Renders with the given variable names, e.g. "1 - t1 + 3/2*t1^2".
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace psforms
