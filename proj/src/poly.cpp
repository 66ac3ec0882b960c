#include "psforms/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace psforms {

namespace {

int exponent_sum(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t var) {
  Poly p(nvars);
  Exponents e(nvars, 0);
  e.at(var) = 1;
  p.add_term(e, Rational(1));
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_sum(e));
  return d;
}

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Poly::add_term: exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::homogeneous_part(int d) const {
  Poly p(nvars_);
  for (const auto& [e, c] : terms_) {
    if (exponent_sum(e) == d) p.terms_.emplace(e, c);
  }
  return p;
}

Poly Poly::derivative(std::size_t var) const {
  Poly p(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    p.add_term(f, c * e[var]);
  }
  return p;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point.at(i);
    }
    sum += t;
  }
  return sum;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.nvars_ != nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.nvars_ != nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
  Poly p(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  }
  return p;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    std::string coef = mono.empty() || mag != 1 ? psforms::to_string(mag) : "";
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (first) {
      s = (sgn(c) < 0 ? "-" : "") + term;
    } else {
      s += (sgn(c) < 0 ? " - " : " + ") + term;
    }
    first = false;
  }
  return s;
}

}  // namespace psforms
