#pragma once

// Face-compatible families of local forms over a simplicial complex with a
// trivialized algebroid fiber, and the restriction maps between them.

#include <map>
#include <memory>
#include <optional>

#include "psforms/complex.hpp"
#include "psforms/forms.hpp"
#include "psforms/lie_algebra.hpp"

namespace psforms {

/// The family {A_Δ} of trivialized transitive algebroids TΔ ⊕ (Δ × g).
/// Restricting A_Δ to a face gives A_face by construction.
class AlgebroidComplex {
 public:
  /// Validates the fiber (throws JacobiViolation).
  AlgebroidComplex(SimplicialComplex base, LieAlgebra fiber);

  const SimplicialComplex& base() const { return base_; }
  const LieAlgebra& fiber() const { return fiber_; }

  friend bool operator==(const AlgebroidComplex&, const AlgebroidComplex&) = default;

 private:
  SimplicialComplex base_;
  LieAlgebra fiber_;
};

using ComplexPtr = std::shared_ptr<const AlgebroidComplex>;

ComplexPtr make_complex(SimplicialComplex base, LieAlgebra fiber);

class ParentMismatch : public Error {
 public:
  using Error::Error;
};

class NotASubcomplex : public Error {
 public:
  using Error::Error;
};

/// Two components that disagree under face restriction.
struct Incompatibility {
  Simplex simplex;
  Simplex face;
  /// restrict(ω_simplex, face) - ω_face
  AlgebroidForm difference;
};

class Incompatible : public Error {
 public:
  explicit Incompatible(Incompatibility witness);
  Incompatibility witness;
};

class PiecewiseForm {
 public:
  /// The zero form of the given degree.
  PiecewiseForm(ComplexPtr parent, int degree);

  const ComplexPtr& parent() const { return parent_; }
  const SimplicialComplex& base() const { return parent_->base(); }
  int degree() const { return degree_; }
  const std::map<Simplex, AlgebroidForm>& components() const { return components_; }
  const AlgebroidForm& operator[](const Simplex& s) const;

  /// Replaces the component on s. Compatibility is not checked here.
  void set(const Simplex& s, AlgebroidForm w);

  bool is_zero() const;
  PiecewiseForm& operator+=(const PiecewiseForm& rhs);
  PiecewiseForm& operator-=(const PiecewiseForm& rhs);
  PiecewiseForm& operator*=(const Rational& c);
  friend PiecewiseForm operator+(PiecewiseForm a, const PiecewiseForm& b) { return a += b; }
  friend PiecewiseForm operator-(PiecewiseForm a, const PiecewiseForm& b) { return a -= b; }
  friend PiecewiseForm operator*(PiecewiseForm a, const Rational& c) { return a *= c; }
  /// Same parent (by value), degree and components.
  friend bool operator==(const PiecewiseForm& a, const PiecewiseForm& b);

 private:
  ComplexPtr parent_;
  int degree_;
  std::map<Simplex, AlgebroidForm> components_;
};

/// First failing (simplex, facet) pair in (dim, lex) order, if any.
/// Facet checks suffice because restriction is transitive.
std::optional<Incompatibility> find_incompatibility(const PiecewiseForm& w);
/// Throws Incompatible with the first witness.
void validate_piecewise(const PiecewiseForm& w);

/// The family obtained by restricting a form on a simplex that contains
/// every vertex of the base to each simplex of the base. Always compatible.
PiecewiseForm from_ambient(ComplexPtr parent, const AlgebroidForm& ambient);

/// r^K_L: drops components outside L.
PiecewiseForm restrict_to_subcomplex(const PiecewiseForm& w, const SimplicialComplex& L);

/// Extends a valid form on a subcomplex L to the whole of `parent`, filling
/// simplices of K \ L in (dim, lex) order from their already-defined facets.
PiecewiseForm extend_from_subcomplex(ComplexPtr parent, const PiecewiseForm& on_sub);

/// The section over St σ, carried by the closed star subcomplex.
PiecewiseForm section_over(const PiecewiseForm& w, const StarOpen& U);

PiecewiseForm wedge(const PiecewiseForm& a, const PiecewiseForm& b);
PiecewiseForm differential(const PiecewiseForm& w);

/// The derived family K^U: the cofaces of the carrier of U.
struct DerivedComplex {
  ComplexPtr parent;
  StarOpen opening;
  std::vector<Simplex> members;
  /// Closure of the members, on which sections over U are represented.
  ComplexPtr carrier;
};

DerivedComplex derived_complex(ComplexPtr parent, const StarOpen& U);

}  // namespace psforms
