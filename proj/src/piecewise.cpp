#include "psforms/piecewise.hpp"

#include <algorithm>

namespace psforms {

AlgebroidComplex::AlgebroidComplex(SimplicialComplex base, LieAlgebra fiber)
    : base_(std::move(base)), fiber_(std::move(fiber)) {
  validate(fiber_);
}

ComplexPtr make_complex(SimplicialComplex base, LieAlgebra fiber) {
  return std::make_shared<const AlgebroidComplex>(std::move(base), std::move(fiber));
}

Incompatible::Incompatible(Incompatibility w)
    : Error("component on " + w.simplex.to_string() + " restricts to " + w.face.to_string() +
            " with difference " + w.difference.to_string()),
      witness(std::move(w)) {}

PiecewiseForm::PiecewiseForm(ComplexPtr parent, int degree) : parent_(std::move(parent)), degree_(degree) {
  const int n = parent_->fiber().dim();
  for (const auto& s : parent_->base().simplices()) components_.emplace(s, AlgebroidForm(s, n, degree));
}

const AlgebroidForm& PiecewiseForm::operator[](const Simplex& s) const {
  auto it = components_.find(s);
  if (it == components_.end()) throw NotInComplex(s.to_string() + " is not a simplex of the base");
  return it->second;
}

void PiecewiseForm::set(const Simplex& s, AlgebroidForm w) {
  auto it = components_.find(s);
  if (it == components_.end()) throw NotInComplex(s.to_string() + " is not a simplex of the base");
  if (w.simplex() != s) throw SimplexMismatch("component placed on the wrong simplex");
  if (w.fiber_dim() != parent_->fiber().dim()) throw SimplexMismatch("component has a different fiber");
  if (w.degree() != degree_ && !w.is_zero()) throw InputError("component has the wrong degree");
  if (w.degree() != degree_) w = AlgebroidForm(s, w.fiber_dim(), degree_);
  it->second = std::move(w);
}

bool PiecewiseForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

void require_same_parent(const PiecewiseForm& a, const PiecewiseForm& b) {
  if (a.parent() != b.parent() && !(*a.parent() == *b.parent())) {
    throw ParentMismatch("piecewise forms over different algebroid complexes");
  }
}

}  // namespace

PiecewiseForm& PiecewiseForm::operator+=(const PiecewiseForm& rhs) {
  require_same_parent(*this, rhs);
  if (rhs.degree_ != degree_) {
    if (rhs.is_zero()) return *this;
    if (!is_zero()) throw InputError("cannot add piecewise forms of different degree");
    *this = PiecewiseForm(parent_, rhs.degree_);
  }
  for (auto& [s, w] : components_) w += rhs.components_.at(s);
  return *this;
}

PiecewiseForm& PiecewiseForm::operator-=(const PiecewiseForm& rhs) { return *this += rhs * Rational(-1); }

PiecewiseForm& PiecewiseForm::operator*=(const Rational& c) {
  for (auto& [s, w] : components_) w *= c;
  return *this;
}

bool operator==(const PiecewiseForm& a, const PiecewiseForm& b) {
  if (a.parent_ != b.parent_ && !(*a.parent_ == *b.parent_)) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.components_ == b.components_;
}

std::optional<Incompatibility> find_incompatibility(const PiecewiseForm& w) {
  for (const auto& [s, ws] : w.components()) {
    for (const auto& f : s.facets()) {
      AlgebroidForm diff = restrict_to_face(ws, f) - w[f];
      if (!diff.is_zero()) return Incompatibility{s, f, std::move(diff)};
    }
  }
  return std::nullopt;
}

void validate_piecewise(const PiecewiseForm& w) {
  if (auto bad = find_incompatibility(w)) throw Incompatible(std::move(*bad));
}

PiecewiseForm from_ambient(ComplexPtr parent, const AlgebroidForm& ambient) {
  for (const auto& v : parent->base().vertices()) {
    if (!ambient.simplex().contains(v)) throw NotAFace("ambient simplex misses vertex " + v);
  }
  if (ambient.fiber_dim() != parent->fiber().dim()) throw SimplexMismatch("ambient form has a different fiber");
  PiecewiseForm out(parent, ambient.degree());
  for (const auto& s : parent->base().simplices()) out.set(s, restrict_to_face(ambient, s));
  return out;
}

PiecewiseForm restrict_to_subcomplex(const PiecewiseForm& w, const SimplicialComplex& L) {
  if (!L.is_subcomplex_of(w.base())) throw NotASubcomplex("not a subcomplex of the base");
  if (L == w.base()) return w;
  PiecewiseForm out(make_complex(L, w.parent()->fiber()), w.degree());
  for (const auto& s : L.simplices()) out.set(s, w[s]);
  return out;
}

PiecewiseForm extend_from_subcomplex(ComplexPtr parent, const PiecewiseForm& on_sub) {
  const SimplicialComplex& L = on_sub.base();
  if (!L.is_subcomplex_of(parent->base())) throw NotASubcomplex("not a subcomplex of the base");
  if (!(on_sub.parent()->fiber() == parent->fiber())) throw ParentMismatch("fibers differ");
  PiecewiseForm out(parent, on_sub.degree());
  for (const auto& s : L.simplices()) out.set(s, on_sub[s]);
  // std::set<Simplex> iterates in (dim, lex) order, so every facet is
  // defined before the simplices it bounds.
  for (const auto& s : parent->base().simplices()) {
    if (L.contains(s)) continue;
    std::map<Simplex, AlgebroidForm> boundary;
    for (const auto& f : s.facets()) boundary.emplace(f, out[f]);
    try {
      out.set(s, extend_from_boundary(parent->fiber(), s, on_sub.degree(), boundary));
    } catch (const IncompatibleBoundary& e) {
      throw std::logic_error(std::string("extension produced an incompatible boundary: ") + e.what());
    }
  }
  return out;
}

PiecewiseForm section_over(const PiecewiseForm& w, const StarOpen& U) {
  return restrict_to_subcomplex(w, closed_star_subcomplex(w.base(), U));
}

PiecewiseForm wedge(const PiecewiseForm& a, const PiecewiseForm& b) {
  require_same_parent(a, b);
  PiecewiseForm out(a.parent(), a.degree() + b.degree());
  for (const auto& [s, w] : a.components()) out.set(s, wedge(w, b[s]));
  return out;
}

PiecewiseForm differential(const PiecewiseForm& w) {
  PiecewiseForm out(w.parent(), w.degree() + 1);
  for (const auto& [s, ws] : w.components()) out.set(s, differential(w.parent()->fiber(), ws));
  return out;
}

DerivedComplex derived_complex(ComplexPtr parent, const StarOpen& U) {
  DerivedComplex d{parent, U, open_star_members(parent->base(), U), nullptr};
  d.carrier = make_complex(SimplicialComplex::closure(d.members), parent->fiber());
  return d;
}

}  // namespace psforms
