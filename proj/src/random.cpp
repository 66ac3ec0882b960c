#include "psforms/random.hpp"

#include <algorithm>

namespace psforms::random {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<Simplex> cofaces(const SimplicialComplex& K, const Simplex& s) {
  std::vector<Simplex> out;
  for (const auto& t : K.simplices())
    if (s.is_face_of(t)) out.push_back(t);
  return out;
}

/// Dense inverse by Gauss-Jordan; the matrix must be invertible.
std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && a[r][c] == 0) ++r;
    if (r == n) throw Error("singular basis change");
    std::swap(a[r], a[c]);
    std::swap(inv[r], inv[c]);
    const Rational p = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] -= f * a[c][k];
        inv[i][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

Rational nonzero_rational(Rng& rng, int span) {
  int a = 0;
  while (a == 0) a = uniform(rng, -span, span);
  Rational r(a, uniform(rng, 1, span));
  r.canonicalize();
  return r;
}

SimplicialComplex complex(Rng& rng, int max_vertices, int max_dim) {
  const int n = uniform(rng, 1, max_vertices);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<Simplex> gens;
  const int count = uniform(rng, 1, n + 1);
  for (int k = 0; k < count; ++k) {
    auto shuffled = names;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const int size = uniform(rng, 1, std::min(n, max_dim + 1));
    gens.emplace_back(std::vector<VertexId>(shuffled.begin(), shuffled.begin() + size));
  }
  return SimplicialComplex::closure(gens);
}

SimplicialComplex subcomplex(Rng& rng, const SimplicialComplex& K) {
  std::vector<Simplex> all(K.simplices().begin(), K.simplices().end());
  std::vector<Simplex> gens;
  const int count = uniform(rng, 1, std::max<int>(1, static_cast<int>(all.size()) / 2));
  for (int k = 0; k < count; ++k) gens.push_back(pick(rng, all));
  return SimplicialComplex::closure(gens);
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (int n = 0; n <= 3; ++n) out.push_back({"abelian" + std::to_string(n), LieAlgebra::abelian(n)});

  LieAlgebra aff(2);
  aff.set_bracket(0, 1, {{1, Rational(1)}});
  out.push_back({"aff1", aff});

  LieAlgebra heis(3);
  heis.set_bracket(0, 1, {{2, Rational(1)}});
  out.push_back({"heisenberg", heis});

  LieAlgebra sl2(3);  // h, e, f
  sl2.set_bracket(0, 1, {{1, Rational(2)}});
  sl2.set_bracket(0, 2, {{2, Rational(-2)}});
  sl2.set_bracket(1, 2, {{0, Rational(1)}});
  out.push_back({"sl2", sl2});

  LieAlgebra so3(3);
  so3.set_bracket(0, 1, {{2, Rational(1)}});
  so3.set_bracket(1, 2, {{0, Rational(1)}});
  so3.set_bracket(2, 0, {{1, Rational(1)}});
  out.push_back({"so3", so3});

  LieAlgebra r3(3);  // [x, y] = y, [x, z] = z
  r3.set_bracket(0, 1, {{1, Rational(1)}});
  r3.set_bracket(0, 2, {{2, Rational(1)}});
  out.push_back({"r3", r3});

  LieAlgebra aff_r(3);
  aff_r.set_bracket(0, 1, {{1, Rational(1)}});
  out.push_back({"aff1+R", aff_r});
  return out;
}

LieAlgebra change_basis(const LieAlgebra& g, const std::vector<std::vector<Rational>>& P) {
  const int n = g.dim();
  auto Pinv = inverse(P);
  LieAlgebra out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rational> x(n), y(n);
      for (int a = 0; a < n; ++a) {
        x[a] = P[a][i];
        y[a] = P[a][j];
      }
      auto v = g.bracket(x, y);
      std::vector<std::pair<int, Rational>> value;
      for (int k = 0; k < n; ++k) {
        Rational c = 0;
        for (int a = 0; a < n; ++a) c += Pinv[k][a] * v[a];
        if (c != 0) value.emplace_back(k, c);
      }
      out.set_bracket(i, j, value);
    }
  }
  return out;
}

LieAlgebra lie_algebra(Rng& rng, int max_dim) {
  std::vector<CatalogEntry> fits;
  for (auto& e : catalog())
    if (e.algebra.dim() <= max_dim) fits.push_back(e);
  const LieAlgebra& g = pick(rng, fits).algebra;
  const int n = g.dim();
  // Unitriangular times a random permutation: always invertible.
  std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n, 0));
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) {
    P[perm[i]][i] = 1;
    for (int j = i + 1; j < n; ++j)
      if (uniform(rng, 0, 1)) P[perm[i]][j] = nonzero_rational(rng, 2);
  }
  return change_basis(g, P);
}

AlgebroidForm local_form(Rng& rng, const Simplex& s, int fiber_dim, int degree, int max_poly_degree, int terms) {
  AlgebroidForm out(s, fiber_dim, degree);
  const int nfree = static_cast<int>(s.size()) - 1;
  for (int t = 0; t < terms; ++t) {
    const int lo = std::max(0, degree - fiber_dim);
    const int hi = std::min(degree, nfree);
    if (lo > hi) break;
    const int r = uniform(rng, lo, hi);
    auto dts = masks_of_size(nfree, r);
    auto duals = masks_of_size(fiber_dim, degree - r);
    FormKey key{pick(rng, dts) << 1, pick(rng, duals)};
    Exponents e(s.size(), 0);
    const int d = uniform(rng, 0, max_poly_degree);
    for (int k = 0; k < d && nfree > 0; ++k) ++e[uniform(rng, 1, nfree)];
    out.add_monomial(key, e, nonzero_rational(rng));
  }
  return out;
}

PiecewiseForm piecewise(Rng& rng, ComplexPtr parent, int degree, int max_poly_degree) {
  const auto& K = parent->base();
  const int n = parent->fiber().dim();
  Simplex all(K.vertices());
  PiecewiseForm out = from_ambient(parent, local_form(rng, all, n, degree, max_poly_degree, 3));
  if (degree <= n) {
    std::vector<Simplex> verts;
    for (const auto& v : K.vertices()) verts.push_back(Simplex{v});
    auto skeleton = make_complex(SimplicialComplex::closure(verts), parent->fiber());
    PiecewiseForm bump(skeleton, degree);
    for (const auto& v : verts) bump.set(v, local_form(rng, v, n, degree, 0, 1));
    out += extend_from_subcomplex(parent, bump);
  }
  return out;
}

StarChain star_chain(Rng& rng, const SimplicialComplex& K) {
  std::vector<Simplex> all(K.simplices().begin(), K.simplices().end());
  Simplex u = pick(rng, all);
  Simplex v = pick(rng, cofaces(K, u));
  Simplex w = pick(rng, cofaces(K, v));
  return StarChain{StarOpen{u}, StarOpen{v}, StarOpen{w}};
}

}  // namespace psforms::random
