#include "psforms/sheaf.hpp"

#include <sstream>

namespace psforms {

namespace {

bool is_scalar_form(const AlgebroidForm& w) {
  if (w.degree() != 0) return false;
  for (const auto& [key, p] : w.terms())
    if (key.dual != 0 || key.dt != 0) return false;
  return true;
}

AlgebroidForm one_on(const Simplex& s, int fiber_dim) { return AlgebroidForm::constant(s, fiber_dim, Rational(1)); }

}  // namespace

RationalForm::RationalForm(AlgebroidForm numerator)
    : num_(numerator), den_(one_on(numerator.simplex(), numerator.fiber_dim())) {}

RationalForm::RationalForm(AlgebroidForm numerator, AlgebroidForm denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (!is_scalar_form(den_) || den_.is_zero()) throw InputError("denominator must be a nonzero function");
  if (den_.simplex() != num_.simplex() || den_.fiber_dim() != num_.fiber_dim())
    throw SimplexMismatch("numerator and denominator live on different simplices");
}

RationalForm& RationalForm::operator+=(const RationalForm& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = wedge(rhs.den_, num_) + wedge(den_, rhs.num_);
    den_ = wedge(den_, rhs.den_);
  }
  return *this;
}

RationalForm operator-(const RationalForm& a, const RationalForm& b) {
  return a + RationalForm(-b.num_, b.den_);
}

bool operator==(const RationalForm& a, const RationalForm& b) {
  return wedge(b.den_, a.num_) == wedge(a.den_, b.num_);
}

RationalForm wedge(const RationalForm& a, const RationalForm& b) {
  return RationalForm(wedge(a.numerator(), b.numerator()), wedge(a.denominator(), b.denominator()));
}

RationalForm differential(const LieAlgebra& g, const RationalForm& w) {
  const auto& q = w.denominator();
  AlgebroidForm top = wedge(q, differential(g, w.numerator())) - wedge(differential(g, q), w.numerator());
  return RationalForm(std::move(top), wedge(q, q));
}

RationalForm restrict_to_face(const RationalForm& w, const Simplex& s) {
  AlgebroidForm den = restrict_to_face(w.denominator(), s);
  if (den.is_zero()) throw Error("denominator vanishes on " + s.to_string());
  return RationalForm(restrict_to_face(w.numerator(), s), std::move(den));
}

PiecewiseRationalForm::PiecewiseRationalForm(ComplexPtr parent, int degree)
    : parent_(std::move(parent)), degree_(degree) {
  const int n = parent_->fiber().dim();
  for (const auto& s : parent_->base().simplices()) components_.emplace(s, RationalForm(AlgebroidForm(s, n, degree)));
}

PiecewiseRationalForm::PiecewiseRationalForm(const PiecewiseForm& w) : parent_(w.parent()), degree_(w.degree()) {
  for (const auto& [s, c] : w.components()) components_.emplace(s, RationalForm(c));
}

const RationalForm& PiecewiseRationalForm::operator[](const Simplex& s) const {
  auto it = components_.find(s);
  if (it == components_.end()) throw NotInComplex(s.to_string() + " is not in the complex");
  return it->second;
}

void PiecewiseRationalForm::set(const Simplex& s, RationalForm w) {
  auto it = components_.find(s);
  if (it == components_.end()) throw NotInComplex(s.to_string() + " is not in the complex");
  if (w.simplex() != s || w.degree() != degree_) throw SimplexMismatch("component does not match " + s.to_string());
  it->second = std::move(w);
}

bool PiecewiseRationalForm::is_zero() const {
  for (const auto& [s, c] : components_)
    if (!c.is_zero()) return false;
  return true;
}

PiecewiseRationalForm& PiecewiseRationalForm::operator+=(const PiecewiseRationalForm& rhs) {
  if (!(*parent_ == *rhs.parent_) || degree_ != rhs.degree_) throw ParentMismatch("forms live on different complexes");
  for (auto& [s, c] : components_) c += rhs.components_.at(s);
  return *this;
}

bool operator==(const PiecewiseRationalForm& a, const PiecewiseRationalForm& b) {
  if (!(*a.parent_ == *b.parent_) || a.degree_ != b.degree_) return false;
  for (const auto& [s, c] : a.components_)
    if (!(c == b.components_.at(s))) return false;
  return true;
}

std::optional<Incompatibility> find_incompatibility(const PiecewiseRationalForm& w) {
  for (const auto& [s, c] : w.components()) {
    if (s.dim() == 0) continue;
    for (const auto& f : s.facets()) {
      RationalForm r = restrict_to_face(c, f);
      const RationalForm& other = w[f];
      if (!(r == other)) {
        AlgebroidForm diff = wedge(other.denominator(), r.numerator()) - wedge(r.denominator(), other.numerator());
        return Incompatibility{s, f, std::move(diff)};
      }
    }
  }
  return std::nullopt;
}

PiecewiseRationalForm wedge(const PiecewiseRationalForm& a, const PiecewiseRationalForm& b) {
  if (!(*a.parent() == *b.parent())) throw ParentMismatch("forms live on different complexes");
  PiecewiseRationalForm out(a.parent(), a.degree() + b.degree());
  for (const auto& [s, c] : a.components()) out.set(s, wedge(c, b[s]));
  return out;
}

PiecewiseRationalForm differential(const PiecewiseRationalForm& w) {
  PiecewiseRationalForm out(w.parent(), w.degree() + 1);
  for (const auto& [s, c] : w.components()) out.set(s, differential(w.parent()->fiber(), c));
  return out;
}

PiecewiseRationalForm restrict_to_subcomplex(const PiecewiseRationalForm& w, const SimplicialComplex& L) {
  if (!L.is_subcomplex_of(w.parent()->base())) throw NotASubcomplex("not a subcomplex");
  PiecewiseRationalForm out(make_complex(L, w.parent()->fiber()), w.degree());
  for (const auto& s : L.simplices()) out.set(s, w[s]);
  return out;
}

// --- covers ------------------------------------------------------------------

NotACover::NotACover(Simplex m) : Error("no cover member contains " + m.to_string()), missing(std::move(m)) {}

CoverCheck is_cover(const SimplicialComplex& K, const Cover& cover) {
  for (const auto& m : cover.members)
    if (!K.contains(m.center)) throw NotInComplex("cover member St " + m.center.to_string() + " is not in the complex");
  for (const auto& s : K.simplices()) {
    bool hit = false;
    for (const auto& m : cover.members)
      if (m.center.is_face_of(s)) {
        hit = true;
        break;
      }
    if (!hit) return CoverCheck{s};
  }
  return CoverCheck{};
}

Cover vertex_star_cover(const SimplicialComplex& K) {
  Cover c;
  for (const auto& v : K.vertices()) c.members.push_back(StarOpen{Simplex{v}});
  return c;
}

// --- partitions of unity -----------------------------------------------------

namespace {

AlgebroidForm monomial(const Simplex& center, const Simplex& s, int fiber_dim) {
  AlgebroidForm out = one_on(s, fiber_dim);
  for (const auto& v : center.vertices()) out = wedge(out, AlgebroidForm::coordinate(s, fiber_dim, v));
  return out;
}

}  // namespace

AlgebroidForm RationalFn::denominator_on(const Simplex& s) const {
  const int n = numerator.parent()->fiber().dim();
  AlgebroidForm out(s, n, 0);
  for (const auto& c : denominator_monomials)
    if (c.is_face_of(s)) out += monomial(c, s, n);
  return out;
}

RationalForm RationalFn::on(const Simplex& s) const { return RationalForm(numerator[s], denominator_on(s)); }

PartitionOfUnity partition_of_unity(ComplexPtr parent, const Cover& cover) {
  auto check = is_cover(parent->base(), cover);
  if (!check.ok()) throw NotACover(*check.missing);
  PartitionOfUnity p{parent, cover, {}};
  std::vector<Simplex> centers;
  for (const auto& m : cover.members) centers.push_back(m.center);
  const int n = parent->fiber().dim();
  for (const auto& m : cover.members) {
    PiecewiseForm num(parent, 0);
    for (const auto& s : parent->base().simplices())
      if (m.center.is_face_of(s)) num.set(s, monomial(m.center, s, n));
    p.functions.push_back(RationalFn{std::move(num), centers});
  }
  return p;
}

PartitionCertificate certify(const PartitionOfUnity& p) {
  PartitionCertificate cert;
  const auto& K = p.parent->base();
  const int n = p.parent->fiber().dim();
  for (std::size_t j = 0; j < p.functions.size(); ++j) {
    if (auto bad = find_incompatibility(p.functions[j].numerator)) {
      cert.subordinate = false;
      if (cert.failure.empty()) cert.failure = "numerator " + std::to_string(j) + " is not face-compatible";
    }
  }
  for (const auto& s : K.simplices()) {
    AlgebroidForm total(s, n, 0);
    for (const auto& f : p.functions) total += f.numerator[s];
    AlgebroidForm den = p.functions.empty() ? AlgebroidForm(s, n, 0) : p.functions.front().denominator_on(s);
    if (!(total == den)) {
      cert.sum_is_one = false;
      if (cert.failure.empty()) cert.failure = "numerators do not sum to the denominator on " + s.to_string();
    }
    int witness = -1;
    for (std::size_t j = 0; j < p.functions.size(); ++j) {
      const Simplex& c = p.cover.members[j].center;
      if (c.is_face_of(s)) {
        if (witness < 0) witness = static_cast<int>(j);
      } else if (!p.functions[j].numerator[s].is_zero()) {
        cert.subordinate = false;
        if (cert.failure.empty())
          cert.failure = "function " + std::to_string(j) + " is nonzero on " + s.to_string();
      }
    }
    cert.positivity_witness[s] = witness;
    if (witness < 0) {
      cert.denominator_positive = false;
      if (cert.failure.empty()) cert.failure = "denominator vanishes on the interior of " + s.to_string();
    }
  }
  return cert;
}

std::vector<PiecewiseRationalForm> fineness_operators(const PartitionOfUnity& p, const PiecewiseForm& w) {
  if (!(*p.parent == *w.parent())) throw ParentMismatch("form and partition live on different complexes");
  std::vector<PiecewiseRationalForm> out;
  for (const auto& f : p.functions) {
    PiecewiseRationalForm h(p.parent, w.degree());
    for (const auto& [s, c] : w.components()) h.set(s, RationalForm(wedge(f.numerator[s], c), f.denominator_on(s)));
    out.push_back(std::move(h));
  }
  return out;
}

// --- gluing ------------------------------------------------------------------

SectionsIncompatible::SectionsIncompatible(std::size_t i, std::size_t j, Simplex s, AlgebroidForm d)
    : Error("sections " + std::to_string(i) + " and " + std::to_string(j) + " disagree on " + s.to_string()),
      first(i),
      second(j),
      simplex(std::move(s)),
      difference(std::move(d)) {}

SectionFamily sections_of(const PiecewiseForm& w, const Cover& cover) {
  SectionFamily f;
  for (const auto& m : cover.members) f.sections.push_back(section_over(w, m));
  return f;
}

PiecewiseForm check_gluing(ComplexPtr parent, const Cover& cover, const SectionFamily& family) {
  const auto& K = parent->base();
  auto check = is_cover(K, cover);
  if (!check.ok()) throw NotACover(*check.missing);
  if (family.sections.size() != cover.members.size())
    throw InputError("expected " + std::to_string(cover.members.size()) + " sections, got " +
                     std::to_string(family.sections.size()));
  if (family.sections.empty()) throw InputError("empty section family");
  const int degree = family.sections.front().degree();
  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    const auto& sec = family.sections[i];
    if (sec.degree() != degree) throw InputError("sections have different degrees");
    if (!(sec.parent()->fiber() == parent->fiber()) ||
        !(sec.base() == closed_star_subcomplex(K, cover.members[i])))
      throw ParentMismatch("section " + std::to_string(i) + " is not carried by the closed star of St " +
                           cover.members[i].center.to_string());
  }

  for (std::size_t i = 0; i < cover.members.size(); ++i) {
    for (std::size_t j = i + 1; j < cover.members.size(); ++j) {
      auto overlap = star_intersection(K, cover.members[i], cover.members[j]);
      if (!overlap) continue;
      const SimplicialComplex common = closed_star_subcomplex(K, *overlap);
      for (const auto& s : common.simplices()) {
        AlgebroidForm d = family.sections[i][s] - family.sections[j][s];
        if (!d.is_zero()) throw SectionsIncompatible(i, j, s, std::move(d));
      }
    }
  }
  for (const auto& sec : family.sections) validate_piecewise(sec);

  // Δ takes its component from any member whose open star contains it; the
  // overlap checks make the choice irrelevant.
  PiecewiseForm glued(parent, degree);
  for (const auto& s : K.simplices()) {
    for (std::size_t i = 0; i < cover.members.size(); ++i) {
      if (cover.members[i].center.is_face_of(s)) {
        glued.set(s, family.sections[i][s]);
        break;
      }
    }
  }
  validate_piecewise(glued);
  return glued;
}

// --- presheaf laws -----------------------------------------------------------

LawViolation::LawViolation(std::string l, std::string w)
    : Error("presheaf law '" + l + "' fails: " + w), law(std::move(l)), witness(std::move(w)) {}

std::vector<std::string> presheaf_law_names() {
  return {"restriction-valid", "identity", "composition", "wedge", "differential"};
}

namespace {

std::string first_difference(const PiecewiseForm& a, const PiecewiseForm& b) {
  if (!(a.base() == b.base())) return "restrictions have different carriers";
  if (a.degree() != b.degree()) return "restrictions have different degrees";
  for (const auto& [s, c] : a.components()) {
    AlgebroidForm d = c - b[s];
    if (!d.is_zero()) return "on " + s.to_string() + " difference " + d.to_string();
  }
  return "forms differ";
}

}  // namespace

std::vector<std::string> check_presheaf_laws(const AlgebroidComplex& parent, const StarChain& chain,
                                             const PiecewiseForm& omega, const PiecewiseForm& eta,
                                             const SectionRestriction& restrict) {
  const auto& K = parent.base();
  for (const auto* u : {&chain.outer, &chain.middle, &chain.inner})
    if (!K.contains(u->center)) throw NotInComplex("St " + u->center.to_string() + " is not in the complex");
  if (!chain.outer.center.is_face_of(chain.middle.center) || !chain.middle.center.is_face_of(chain.inner.center))
    throw InputError("stars are not nested");
  SimplicialComplex carrier = closed_star_subcomplex(K, chain.outer);
  for (const auto* w : {&omega, &eta}) {
    if (!(w->base() == carrier) || !(w->parent()->fiber() == parent.fiber()))
      throw ParentMismatch("sections must be carried by the closed star of St " + chain.outer.center.to_string());
  }

  auto fail = [](const std::string& law, const std::string& why) { throw LawViolation(law, why); };
  auto restricted = [&](const PiecewiseForm& w, const StarOpen& to) {
    PiecewiseForm r = restrict(w, to);
    if (!(r.base() == closed_star_subcomplex(K, to)))
      fail("restriction-valid", "restriction to St " + to.center.to_string() + " has the wrong carrier");
    if (auto bad = find_incompatibility(r))
      fail("restriction-valid", "restriction to St " + to.center.to_string() + " is not compatible on " +
                                    bad->simplex.to_string() + " / " + bad->face.to_string());
    return r;
  };

  for (const auto* w : {&omega, &eta}) {
    PiecewiseForm same = restricted(*w, chain.outer);
    if (!(same == *w)) fail("identity", first_difference(same, *w));
  }

  for (const auto* w : {&omega, &eta}) {
    PiecewiseForm via = restricted(restricted(*w, chain.middle), chain.inner);
    PiecewiseForm direct = restricted(*w, chain.inner);
    if (!(via == direct)) fail("composition", first_difference(via, direct));
  }

  for (const auto* to : {&chain.middle, &chain.inner}) {
    PiecewiseForm lhs = restricted(wedge(omega, eta), *to);
    PiecewiseForm rhs = wedge(restricted(omega, *to), restricted(eta, *to));
    if (!(lhs == rhs)) fail("wedge", first_difference(lhs, rhs));
  }

  for (const auto* w : {&omega, &eta}) {
    for (const auto* to : {&chain.middle, &chain.inner}) {
      PiecewiseForm lhs = restricted(differential(*w), *to);
      PiecewiseForm rhs = differential(restricted(*w, *to));
      if (!(lhs == rhs)) fail("differential", first_difference(lhs, rhs));
    }
  }
  return presheaf_law_names();
}

}  // namespace psforms
