#pragma once

// Polynomial forms on one simplex with values in Λg*.
//
// On a simplex Δ with vertices v_0 < ... < v_d the barycentric coordinate of
// the anchor v_0 is eliminated, t_{v_0} = 1 - Σ t_{v_i}, so coefficients live
// in the free algebra Q[t_{v_1}, ..., t_{v_d}]. A form is Σ P · dt_S ⊗ ε_T with
// S a set of free positions and T a set of fiber basis indices.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "psforms/complex.hpp"
#include "psforms/lie_algebra.hpp"
#include "psforms/poly.hpp"

namespace psforms {

/// Bit i stands for dt at vertex position i of the simplex. Bit 0 (the
/// anchor) is never set.
using DtMask = std::uint64_t;

struct FormKey {
  DtMask dt = 0;
  DualMask dual = 0;
  friend auto operator<=>(const FormKey&, const FormKey&) = default;
};

class SimplexMismatch : public Error {
 public:
  using Error::Error;
};

class NotAFace : public Error {
 public:
  using Error::Error;
};

class AlgebroidForm;

class AlgebroidForm {
 public:
  AlgebroidForm(Simplex simplex, int fiber_dim, int degree);

  static AlgebroidForm constant(const Simplex& s, int fiber_dim, const Rational& c);
  /// Barycentric coordinate t_v as a 0-form; for the anchor this is 1 - Σ t.
  static AlgebroidForm coordinate(const Simplex& s, int fiber_dim, const VertexId& v);
  /// dt_v as a 1-form; for the anchor this is -Σ dt.
  static AlgebroidForm coordinate_differential(const Simplex& s, int fiber_dim, const VertexId& v);
  /// 1 ⊗ ε_T.
  static AlgebroidForm dual(const Simplex& s, int fiber_dim, DualMask mask);

  const Simplex& simplex() const { return simplex_; }
  int fiber_dim() const { return fiber_dim_; }
  int degree() const { return degree_; }
  const std::map<FormKey, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const;
  Poly coefficient(const FormKey& key) const;

  /// Adds P · dt_key.dt ⊗ ε_key.dual. Throws InputError if the term does not
  /// have this form's degree, uses the anchor, or leaves the fiber.
  void add(const FormKey& key, const Poly& p);
  void add_monomial(const FormKey& key, const Exponents& e, const Rational& c);

  AlgebroidForm& operator+=(const AlgebroidForm& rhs);
  AlgebroidForm& operator-=(const AlgebroidForm& rhs);
  AlgebroidForm& operator*=(const Rational& c);
  friend AlgebroidForm operator+(AlgebroidForm a, const AlgebroidForm& b) { return a += b; }
  friend AlgebroidForm operator-(AlgebroidForm a, const AlgebroidForm& b) { return a -= b; }
  friend AlgebroidForm operator*(AlgebroidForm a, const Rational& c) { return a *= c; }
  AlgebroidForm operator-() const { return *this * Rational(-1); }
  friend bool operator==(const AlgebroidForm&, const AlgebroidForm&) = default;

  /// Highest weight (polynomial degree + number of dt factors); -1 if zero.
  int max_weight() const;
  /// Same value in ε-degree T attached: α ↦ α ⊗ ε_T, for forms without a dual part.
  AlgebroidForm with_dual(DualMask mask) const;

  std::string to_string() const;

 private:
  void check_compatible(const AlgebroidForm& rhs) const;

  Simplex simplex_;
  int fiber_dim_;
  int degree_;
  std::map<FormKey, Poly> terms_;
};

class IncompatibleBoundary : public Error {
 public:
  IncompatibleBoundary(Simplex face, AlgebroidForm difference);
  Simplex face;
  AlgebroidForm difference;
};

/// (α⊗ε_T) ∧ (β⊗ε_T') = (-1)^{|T|·|β|} (α∧β) ⊗ (ε_T∧ε_T').
AlgebroidForm wedge(const AlgebroidForm& a, const AlgebroidForm& b);

/// D(α⊗ε_T) = dα⊗ε_T + (-1)^{|α|} α⊗d_CE ε_T.
AlgebroidForm differential(const LieAlgebra& g, const AlgebroidForm& w);

/// Pulls ω back to the face s: t_v, dt_v vanish for v ∉ s, and when the anchor
/// of Δ is not in s the anchor of s is re-eliminated.
AlgebroidForm restrict_to_face(const AlgebroidForm& w, const Simplex& s);

/// A form on `target` whose restriction to each facet f in `boundary` is
/// boundary[f]. Facets are absorbed one at a time in order of the removed
/// vertex; each correction is the radial pullback of the residual, scaled by
/// a power of the complementary coordinate so that it stays polynomial and
/// vanishes on the facets already handled. Throws IncompatibleBoundary if two
/// facet forms disagree on their common face.
AlgebroidForm extend_from_boundary(const LieAlgebra& g, const Simplex& target, int degree,
                                   const std::map<Simplex, AlgebroidForm>& boundary);

/// Homogeneous-weight parts of ω, ascending, zero parts omitted.
std::vector<std::pair<int, AlgebroidForm>> weight_components(const AlgebroidForm& w);

}  // namespace psforms
