#pragma once

// Finite-dimensional Lie algebras over Q and their Chevalley-Eilenberg
// complex with trivial coefficients.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "psforms/errors.hpp"
#include "psforms/rational.hpp"

namespace psforms {

/// Subsets of the basis {0..n-1} are bit masks; n is at most 63.
using DualMask = std::uint64_t;

class JacobiViolation : public Error {
 public:
  JacobiViolation(int i, int j, int k, std::vector<Rational> defect);
  int i, j, k;
  /// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] in the basis e.
  std::vector<Rational> defect;
};

class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class LieAlgebra {
 public:
  static constexpr int kMaxDim = 63;

  explicit LieAlgebra(int dim = 0);
  static LieAlgebra abelian(int dim) { return LieAlgebra(dim); }

  int dim() const { return dim_; }

  /// Sets [e_i, e_j] = Σ value * e_k. Requires i != j; i > j stores the
  /// negated bracket.
  void set_bracket(int i, int j, const std::vector<std::pair<int, Rational>>& value);
  /// [e_i, e_j] as a coordinate vector of length dim().
  std::vector<Rational> bracket(int i, int j) const;
  std::vector<Rational> bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
  /// c[i][j][k] for i < j.
  const Rational& structure_constant(int i, int j, int k) const;
  bool is_abelian() const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::size_t pair_index(int i, int j) const;

  int dim_;
  std::vector<std::vector<Rational>> brackets_;  // one vector per pair i < j
  // d ε^k = Σ coeff ε^{mask}, cached when brackets change
  std::vector<std::vector<std::pair<DualMask, Rational>>> dual_differential_;

  friend const std::vector<std::pair<DualMask, Rational>>& dual_generator_differential(
      const LieAlgebra& g, int k);
};

/// Returns the first violated triple, or nothing when the Jacobi identity holds.
std::optional<JacobiViolation> jacobi_defect(const LieAlgebra& g);
/// Throws JacobiViolation on the first failing triple i < j < k.
void validate(const LieAlgebra& g);

/// An element of Λ^s g*: coefficients on the basis ε_T = ε^{t_1} ∧ ... ∧ ε^{t_s},
/// t_1 < ... < t_s.
class CECochain {
 public:
  explicit CECochain(int degree = 0) : degree_(degree) {}

  int degree() const { return degree_; }
  /// Adds value * ε_mask. The mask must have popcount == degree().
  void add(DualMask mask, const Rational& value);
  Rational coefficient(DualMask mask) const;
  const std::map<DualMask, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const CECochain&, const CECochain&) = default;

 private:
  int degree_;
  std::map<DualMask, Rational> terms_;
};

/// d ε^k = -Σ_{i<j} c_{ij}^k ε^i ∧ ε^j.
const std::vector<std::pair<DualMask, Rational>>& dual_generator_differential(const LieAlgebra& g,
                                                                              int k);

/// d_CE on a basis element ε_mask, as a list of (mask, coefficient).
std::vector<std::pair<DualMask, Rational>> ce_differential_basis(const LieAlgebra& g, DualMask mask);

/// (dξ)(x_0..x_s) = Σ_{i<j} (-1)^{i+j} ξ([x_i,x_j], x_0, .., x̂_i, .., x̂_j, .., x_s).
/// Throws DegreeOverflow if degree(c) >= dim g.
CECochain ce_differential(const LieAlgebra& g, const CECochain& c);

/// dim H^s_CE(g; Q) for s = 0..n.
std::vector<int> ce_cohomology(const LieAlgebra& g);

/// Sign of the shuffle that sorts the concatenation of disjoint masks a, b:
/// ε_a ∧ ε_b = shuffle_sign(a, b) ε_{a|b}.
int shuffle_sign(std::uint64_t a, std::uint64_t b);

/// All masks of popcount k within the low n bits, ascending.
std::vector<std::uint64_t> masks_of_size(int n, int k);

}  // namespace psforms
