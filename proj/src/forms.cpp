#include "psforms/forms.hpp"

#include <algorithm>
#include <bit>

namespace psforms {

namespace {

DtMask bit(std::size_t i) { return DtMask{1} << i; }

int parity_sign(int k) { return (k & 1) ? -1 : 1; }

}  // namespace

AlgebroidForm::AlgebroidForm(Simplex simplex, int fiber_dim, int degree)
    : simplex_(std::move(simplex)), fiber_dim_(fiber_dim), degree_(degree) {
  if (simplex_.size() > 63) throw InputError("simplex too large for local forms");
  if (fiber_dim < 0 || fiber_dim > LieAlgebra::kMaxDim) throw InputError("bad fiber dimension");
  if (degree < 0) throw InputError("negative form degree");
}

AlgebroidForm AlgebroidForm::constant(const Simplex& s, int fiber_dim, const Rational& c) {
  AlgebroidForm w(s, fiber_dim, 0);
  w.add(FormKey{}, Poly::constant(s.size(), c));
  return w;
}

AlgebroidForm AlgebroidForm::coordinate(const Simplex& s, int fiber_dim, const VertexId& v) {
  const auto pos = s.position(v);
  if (!pos) throw NotAFace(v + " is not a vertex of " + s.to_string());
  AlgebroidForm w(s, fiber_dim, 0);
  if (*pos > 0) {
    w.add(FormKey{}, Poly::variable(s.size(), *pos));
  } else {
    Poly p = Poly::constant(s.size(), 1);
    for (std::size_t i = 1; i < s.size(); ++i) p -= Poly::variable(s.size(), i);
    w.add(FormKey{}, p);
  }
  return w;
}

AlgebroidForm AlgebroidForm::coordinate_differential(const Simplex& s, int fiber_dim,
                                                     const VertexId& v) {
  const auto pos = s.position(v);
  if (!pos) throw NotAFace(v + " is not a vertex of " + s.to_string());
  AlgebroidForm w(s, fiber_dim, 1);
  const Poly one = Poly::constant(s.size(), 1);
  if (*pos > 0) {
    w.add(FormKey{bit(*pos), 0}, one);
  } else {
    for (std::size_t i = 1; i < s.size(); ++i) w.add(FormKey{bit(i), 0}, -one);
  }
  return w;
}

AlgebroidForm AlgebroidForm::dual(const Simplex& s, int fiber_dim, DualMask mask) {
  AlgebroidForm w(s, fiber_dim, std::popcount(mask));
  w.add(FormKey{0, mask}, Poly::constant(s.size(), 1));
  return w;
}

std::size_t AlgebroidForm::term_count() const {
  std::size_t n = 0;
  for (const auto& [k, p] : terms_) n += p.terms().size();
  return n;
}

Poly AlgebroidForm::coefficient(const FormKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Poly(simplex_.size()) : it->second;
}

void AlgebroidForm::add(const FormKey& key, const Poly& p) {
  if (std::popcount(key.dt) + std::popcount(key.dual) != degree_) {
    throw InputError("term degree does not match form degree " + std::to_string(degree_));
  }
  if ((key.dt & 1) || (key.dt >> simplex_.size()) != 0) {
    throw InputError("dt index outside the free coordinates of " + simplex_.to_string());
  }
  if (fiber_dim_ < 64 && (key.dual >> fiber_dim_) != 0) {
    throw InputError("dual index outside the fiber");
  }
  if (p.nvars() != simplex_.size()) throw InputError("coefficient has wrong variable count");
  for (const auto& [e, c] : p.terms()) {
    if (e[0] != 0) throw InputError("coefficient uses the anchor coordinate of " + simplex_.to_string());
  }
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void AlgebroidForm::add_monomial(const FormKey& key, const Exponents& e, const Rational& c) {
  Poly p(simplex_.size());
  p.add_term(e, c);
  add(key, p);
}

void AlgebroidForm::check_compatible(const AlgebroidForm& rhs) const {
  if (simplex_ != rhs.simplex_) {
    throw SimplexMismatch("forms live on " + simplex_.to_string() + " and " + rhs.simplex_.to_string());
  }
  if (fiber_dim_ != rhs.fiber_dim_) throw SimplexMismatch("forms have different fibers");
}

AlgebroidForm& AlgebroidForm::operator+=(const AlgebroidForm& rhs) {
  check_compatible(rhs);
  if (rhs.degree_ != degree_ && !rhs.is_zero()) {
    if (is_zero()) {
      degree_ = rhs.degree_;
    } else {
      throw InputError("cannot add forms of different degree");
    }
  }
  for (const auto& [k, p] : rhs.terms_) add(k, p);
  return *this;
}

AlgebroidForm& AlgebroidForm::operator-=(const AlgebroidForm& rhs) { return *this += -rhs; }

AlgebroidForm& AlgebroidForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, p] : terms_) p *= c;
  return *this;
}

int AlgebroidForm::max_weight() const {
  int w = -1;
  for (const auto& [k, p] : terms_) w = std::max(w, p.degree() + std::popcount(k.dt));
  return w;
}

AlgebroidForm AlgebroidForm::with_dual(DualMask mask) const {
  AlgebroidForm out(simplex_, fiber_dim_, degree_ + std::popcount(mask));
  for (const auto& [k, p] : terms_) {
    if (k.dual) throw InputError("with_dual: form already has a dual part");
    out.add(FormKey{k.dt, mask}, p);
  }
  return out;
}

std::string AlgebroidForm::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::string> names;
  for (const auto& v : simplex_.vertices()) names.push_back("t_" + v);
  std::string s;
  for (const auto& [k, p] : terms_) {
    if (!s.empty()) s += " + ";
    std::string factor;
    for (std::size_t i = 0; i < simplex_.size(); ++i) {
      if (k.dt & bit(i)) factor += (factor.empty() ? "dt_" : "^dt_") + simplex_[i];
    }
    std::string eps;
    for (int i = 0; i < 64; ++i) {
      if (k.dual & (DualMask{1} << i)) eps += (eps.empty() ? "e" : "^e") + std::to_string(i);
    }
    s += "(" + p.to_string(names) + ")";
    if (!factor.empty()) s += " " + factor;
    if (!eps.empty()) s += " (x) " + eps;
  }
  return s;
}

IncompatibleBoundary::IncompatibleBoundary(Simplex f, AlgebroidForm diff)
    : Error("boundary forms disagree on " + f.to_string() + ": difference " + diff.to_string()),
      face(std::move(f)),
      difference(std::move(diff)) {}

AlgebroidForm wedge(const AlgebroidForm& a, const AlgebroidForm& b) {
  if (a.simplex() != b.simplex()) {
    throw SimplexMismatch("wedge of forms on " + a.simplex().to_string() + " and " +
                          b.simplex().to_string());
  }
  if (a.fiber_dim() != b.fiber_dim()) throw SimplexMismatch("wedge of forms with different fibers");
  AlgebroidForm out(a.simplex(), a.fiber_dim(), a.degree() + b.degree());
  for (const auto& [ka, pa] : a.terms()) {
    for (const auto& [kb, pb] : b.terms()) {
      if ((ka.dt & kb.dt) || (ka.dual & kb.dual)) continue;
      int sign = shuffle_sign(ka.dt, kb.dt) * shuffle_sign(ka.dual, kb.dual) *
                 parity_sign(std::popcount(ka.dual) * std::popcount(kb.dt));
      Poly p = pa * pb;
      if (sign < 0) p *= Rational(-1);
      out.add(FormKey{ka.dt | kb.dt, ka.dual | kb.dual}, p);
    }
  }
  return out;
}

AlgebroidForm differential(const LieAlgebra& g, const AlgebroidForm& w) {
  if (g.dim() != w.fiber_dim()) throw SimplexMismatch("form fiber does not match the Lie algebra");
  AlgebroidForm out(w.simplex(), w.fiber_dim(), w.degree() + 1);
  const std::size_t n = w.simplex().size();
  std::map<DualMask, std::vector<std::pair<DualMask, Rational>>> ce_cache;
  for (const auto& [k, p] : w.terms()) {
    for (std::size_t v = 1; v < n; ++v) {
      if (k.dt & bit(v)) continue;
      Poly dp = p.derivative(v);
      if (dp.is_zero()) continue;
      if (shuffle_sign(bit(v), k.dt) < 0) dp *= Rational(-1);
      out.add(FormKey{k.dt | bit(v), k.dual}, dp);
    }
    auto it = ce_cache.find(k.dual);
    if (it == ce_cache.end()) it = ce_cache.emplace(k.dual, ce_differential_basis(g, k.dual)).first;
    const int sign = parity_sign(std::popcount(k.dt));
    for (const auto& [mask, c] : it->second) out.add(FormKey{k.dt, mask}, p * (sign < 0 ? Rational(-c) : c));
  }
  return out;
}

AlgebroidForm restrict_to_face(const AlgebroidForm& w, const Simplex& s) {
  const Simplex& D = w.simplex();
  if (!s.is_face_of(D)) throw NotAFace(s.to_string() + " is not a face of " + D.to_string());
  if (s == D) return w;

  const std::size_t m = s.size();
  std::vector<long> to_face(D.size(), -1);
  for (std::size_t i = 0, j = 0; i < D.size(); ++i) {
    if (j < m && D[i] == s[j]) to_face[i] = static_cast<long>(j++);
  }
  DtMask kept = 0;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (to_face[i] >= 0) kept |= bit(i);
  }

  // t_{anchor(s)} = 1 - Σ_{j≥1} t_j and its powers, used when anchor(Δ) ∉ s.
  Poly anchor_coord = Poly::constant(m, 1);
  for (std::size_t j = 1; j < m; ++j) anchor_coord -= Poly::variable(m, j);
  std::vector<Poly> anchor_powers{Poly::constant(m, 1)};

  AlgebroidForm out(s, w.fiber_dim(), w.degree());
  for (const auto& [k, p] : w.terms()) {
    if (k.dt & ~kept) continue;
    Poly q(m);
    Exponents f(m, 0);
    for (const auto& [e, c] : p.terms()) {
      bool vanishes = false;
      for (std::size_t i = 1; i < D.size(); ++i) {
        if (e[i] && to_face[i] < 0) {
          vanishes = true;
          break;
        }
      }
      if (vanishes) continue;
      std::fill(f.begin(), f.end(), 0);
      for (std::size_t i = 1; i < D.size(); ++i) {
        if (to_face[i] >= 0) f[to_face[i]] = e[i];
      }
      const unsigned e0 = f[0];
      f[0] = 0;
      Poly mono(m);
      mono.add_term(f, c);
      if (e0 == 0) {
        q += mono;
      } else {
        while (anchor_powers.size() <= e0) anchor_powers.push_back(anchor_powers.back() * anchor_coord);
        q += mono * anchor_powers[e0];
      }
    }
    if (q.is_zero()) continue;
    DtMask dt = 0;
    for (std::size_t i = 1; i < D.size(); ++i) {
      if (k.dt & bit(i)) dt |= bit(to_face[i]);
    }
    if (!(dt & 1)) {
      out.add(FormKey{dt, k.dual}, q);
      continue;
    }
    // dt_{anchor(s)} is the first factor; dt_{anchor(s)} = -Σ_j dt_j.
    const DtMask rest = dt & ~DtMask{1};
    for (std::size_t j = 1; j < m; ++j) {
      if (rest & bit(j)) continue;
      Poly r = q;
      if (shuffle_sign(bit(j), rest) > 0) r *= Rational(-1);
      out.add(FormKey{rest | bit(j), k.dual}, r);
    }
  }
  return out;
}

namespace {

// (1 - t_i)^N π_i^* ρ for ρ on the facet opposite vertex position i, where
// π_i is the radial projection from that vertex.
AlgebroidForm radial_extension(const AlgebroidForm& rho, const Simplex& D, std::size_t i) {
  const int n = rho.fiber_dim();
  const Simplex& f = rho.simplex();
  const AlgebroidForm one = AlgebroidForm::constant(D, n, 1);
  const AlgebroidForm ti = AlgebroidForm::coordinate(D, n, D[i]);
  const AlgebroidForm dti = AlgebroidForm::coordinate_differential(D, n, D[i]);
  const AlgebroidForm complement = one - ti;

  int N = 0;
  for (const auto& [k, p] : rho.terms()) N = std::max(N, p.degree() + 2 * std::popcount(k.dt));
  // On an edge the other facet is the vertex itself, where the radial
  // pullback says nothing; one factor of (1 - t_i) forces vanishing there.
  if (D.dim() == 1) N = std::max(N, 1);

  std::vector<AlgebroidForm> complement_powers{one};
  auto complement_pow = [&](int k) -> const AlgebroidForm& {
    while (static_cast<int>(complement_powers.size()) <= k) {
      complement_powers.push_back(wedge(complement_powers.back(), complement));
    }
    return complement_powers[k];
  };

  std::vector<AlgebroidForm> coords, lifts;
  for (std::size_t j = 0; j < f.size(); ++j) {
    coords.push_back(AlgebroidForm::coordinate(D, n, f[j]));
    // (1 - t_i) dB_u + B_u dt_i
    lifts.push_back(wedge(complement, AlgebroidForm::coordinate_differential(D, n, f[j])) +
                    wedge(coords.back(), dti));
  }

  AlgebroidForm out(D, n, rho.degree());
  for (const auto& [k, p] : rho.terms()) {
    AlgebroidForm frame = one;
    int r = 0;
    for (std::size_t j = 1; j < f.size(); ++j) {
      if (k.dt & bit(j)) {
        frame = wedge(frame, lifts[j]);
        ++r;
      }
    }
    for (const auto& [e, c] : p.terms()) {
      int deg = 0;
      AlgebroidForm mono = AlgebroidForm::constant(D, n, c);
      for (std::size_t j = 1; j < f.size(); ++j) {
        for (unsigned a = 0; a < e[j]; ++a) mono = wedge(mono, coords[j]);
        deg += e[j];
      }
      mono = wedge(wedge(mono, complement_pow(N - deg - 2 * r)), frame);
      out += mono.with_dual(k.dual);
    }
  }
  return out;
}

}  // namespace

AlgebroidForm extend_from_boundary(const LieAlgebra& g, const Simplex& target, int degree,
                                   const std::map<Simplex, AlgebroidForm>& boundary) {
  const int n = g.dim();
  for (const auto& [f, w] : boundary) {
    if (f.size() + 1 != target.size() || !f.is_face_of(target)) {
      throw NotAFace(f.to_string() + " is not a facet of " + target.to_string());
    }
    if (w.simplex() != f) throw SimplexMismatch("boundary form keyed by the wrong facet");
    if (w.fiber_dim() != n) throw SimplexMismatch("boundary form has a different fiber");
    if (w.degree() != degree && !w.is_zero()) throw InputError("boundary form has the wrong degree");
  }
  for (auto a = boundary.begin(); a != boundary.end(); ++a) {
    for (auto b = std::next(a); b != boundary.end(); ++b) {
      std::vector<VertexId> common;
      std::set_intersection(a->first.vertices().begin(), a->first.vertices().end(),
                            b->first.vertices().begin(), b->first.vertices().end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      const Simplex face(std::move(common));
      AlgebroidForm diff = restrict_to_face(a->second, face) - restrict_to_face(b->second, face);
      if (!diff.is_zero()) throw IncompatibleBoundary(face, std::move(diff));
    }
  }

  AlgebroidForm omega(target, n, degree);
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target.size() < 2) break;
    const Simplex facet = target.without(i);
    auto it = boundary.find(facet);
    if (it == boundary.end()) continue;
    AlgebroidForm residual = it->second - restrict_to_face(omega, facet);
    if (residual.is_zero()) continue;
    omega += radial_extension(residual, target, i);
  }
  return omega;
}

std::vector<std::pair<int, AlgebroidForm>> weight_components(const AlgebroidForm& w) {
  std::map<int, AlgebroidForm> parts;
  for (const auto& [k, p] : w.terms()) {
    const int r = std::popcount(k.dt);
    std::map<int, Poly> by_degree;
    for (const auto& [e, c] : p.terms()) {
      int d = 0;
      for (auto x : e) d += x;
      auto [it, _] = by_degree.try_emplace(d, Poly(p.nvars()));
      it->second.add_term(e, c);
    }
    for (const auto& [d, q] : by_degree) {
      auto [it, _] = parts.try_emplace(d + r, AlgebroidForm(w.simplex(), w.fiber_dim(), w.degree()));
      it->second.add(k, q);
    }
  }
  return {parts.begin(), parts.end()};
}

}  // namespace psforms
