#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace psforms;
using namespace fixtures;

namespace {

using Point = std::map<VertexId, Rational>;

AlgebroidForm t(const Simplex& s, const char* v, int n = 0) { return AlgebroidForm::coordinate(s, n, v); }
AlgebroidForm dt(const Simplex& s, const char* v, int n = 0) { return AlgebroidForm::coordinate_differential(s, n, v); }

Simplex random_simplex(random::Rng& rng, int max_size = 5) {
  const int m = 1 + static_cast<int>(rng() % max_size);
  std::vector<VertexId> vs;
  for (int i = 0; i < 8; ++i) vs.push_back("v" + std::to_string(i));
  std::shuffle(vs.begin(), vs.end(), rng);
  vs.resize(m);
  return Simplex(vs);
}

/// Random interior point of s (all coordinates positive).
Point interior_point(random::Rng& rng, const Simplex& s) {
  std::vector<Rational> w;
  Rational total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    w.push_back(Rational(1 + static_cast<long>(rng() % 7)));
    total += w.back();
  }
  Point p;
  for (std::size_t i = 0; i < s.size(); ++i) p[s[i]] = w[i] / total;
  return p;
}

/// Random tangent vector of s: components sum to zero.
Point tangent(random::Rng& rng, const Simplex& s) {
  Point u;
  Rational total = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    u[s[i]] = Rational(static_cast<long>(rng() % 9) - 4);
    total += u[s[i]];
  }
  u[s[0]] = -total;
  return u;
}

}  // namespace

TEST_CASE("coordinates eliminate the anchor") {
  Simplex s = S({"v0", "v1", "v2"});
  auto sum = t(s, "v0") + t(s, "v1") + t(s, "v2");
  CHECK(sum == AlgebroidForm::constant(s, 0, q(1)));
  auto dsum = dt(s, "v0") + dt(s, "v1") + dt(s, "v2");
  CHECK(dsum.is_zero());
  CHECK_THROWS_AS(AlgebroidForm::coordinate(s, 0, "v7"), Error);
}

TEST_CASE("wedge signs") {
  Simplex s = S({"v0", "v1", "v2"});
  CHECK(wedge(dt(s, "v1"), dt(s, "v2")) == -wedge(dt(s, "v2"), dt(s, "v1")));
  auto a = wedge(t(s, "v1", 1), AlgebroidForm::dual(s, 1, 0b1));
  CHECK(wedge(a, AlgebroidForm::dual(s, 1, 0b1)).is_zero());
  CHECK_THROWS_AS(wedge(t(s, "v1"), t(S({"v0", "v1"}), "v1")), SimplexMismatch);
}

TEST_CASE("wedge of 1-forms matches the determinant formula") {
  random::Rng rng(8);
  for (int k = 0; k < 40; ++k) {
    Simplex s = random_simplex(rng);
    if (s.size() < 3) continue;
    auto a = random::local_form(rng, s, 0, 1, 2, 3);
    auto b = random::local_form(rng, s, 0, 1, 2, 3);
    Point x = interior_point(rng, s);
    Point u = tangent(rng, s), v = tangent(rng, s);
    auto av = oracle::evaluate(a, x, {u}), au = oracle::evaluate(a, x, {v});
    auto bv = oracle::evaluate(b, x, {v}), bu = oracle::evaluate(b, x, {u});
    auto get = [](const std::map<DualMask, Rational>& m) { return m.count(0) ? m.at(0) : Rational(0); };
    Rational expect = get(av) * get(bv) - get(au) * get(bu);
    CHECK(get(oracle::evaluate(wedge(a, b), x, {u, v})) == expect);
  }
}

TEST_CASE("graded commutativity") {
  random::Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    Simplex s = random_simplex(rng);
    const int n = static_cast<int>(rng() % 4);
    const int p = static_cast<int>(rng() % 3), r = static_cast<int>(rng() % 3);
    auto a = random::local_form(rng, s, n, p);
    auto b = random::local_form(rng, s, n, r);
    auto ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((p * r) % 2 ? -ba : ba));
  }
}

TEST_CASE("total differential examples") {
  Simplex e = S({"v0", "v1"});
  auto g0 = LieAlgebra::abelian(0);
  CHECK(differential(g0, t(e, "v1")) == dt(e, "v1"));
  auto g = aff1();
  auto w = wedge(t(e, "v1", 2), AlgebroidForm::dual(e, 2, 0b10));
  auto expect = wedge(dt(e, "v1", 2), AlgebroidForm::dual(e, 2, 0b10)) -
                wedge(t(e, "v1", 2), AlgebroidForm::dual(e, 2, 0b11));
  CHECK(differential(g, w) == expect);
}

TEST_CASE("D squares to zero and satisfies Leibniz") {
  random::Rng rng(10);
  for (int k = 0; k < 200; ++k) {
    Simplex s = random_simplex(rng);
    LieAlgebra g = random::lie_algebra(rng, 3);
    auto w = random::local_form(rng, s, g.dim(), static_cast<int>(rng() % 4), 3, 4);
    CHECK(differential(g, differential(g, w)).is_zero());
  }
  for (int k = 0; k < 100; ++k) {
    Simplex s = random_simplex(rng);
    LieAlgebra g = random::lie_algebra(rng, 3);
    const int p = static_cast<int>(rng() % 3);
    auto a = random::local_form(rng, s, g.dim(), p);
    auto b = random::local_form(rng, s, g.dim(), static_cast<int>(rng() % 3));
    auto lhs = differential(g, wedge(a, b));
    auto rhs = wedge(differential(g, a), b) + wedge(a, differential(g, b)) * Rational(p % 2 ? -1 : 1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("restriction examples") {
  Simplex s = S({"v0", "v1", "v2"});
  auto w = wedge(t(s, "v1"), dt(s, "v2"));
  CHECK(restrict_to_face(w, S({"v0", "v2"})).is_zero());
  Simplex f = S({"v1", "v2"});
  auto expect = wedge(AlgebroidForm::constant(f, 0, q(1)) - t(f, "v2"), dt(f, "v2"));
  CHECK(restrict_to_face(w, f) == expect);
  CHECK(restrict_to_face(w, s) == w);
  CHECK_THROWS_AS(restrict_to_face(w, S({"v0", "v3"})), NotAFace);
}

TEST_CASE("restriction agrees with pointwise evaluation on the face") {
  random::Rng rng(12);
  for (int k = 0; k < 150; ++k) {
    Simplex s = random_simplex(rng);
    const int n = static_cast<int>(rng() % 3);
    const int p = static_cast<int>(rng() % 3);
    auto w = random::local_form(rng, s, n, p, 3, 4);
    auto faces = s.faces();
    const Simplex& f = faces[rng() % faces.size()];
    auto r = restrict_to_face(w, f);
    Point x = interior_point(rng, f);
    Point xs = x;
    for (const auto& v : s.vertices()) xs.try_emplace(v, 0);
    const int forms_part = std::min<int>(p, f.dim());
    for (int rdeg = 0; rdeg <= forms_part; ++rdeg) {
      std::vector<Point> us, uss;
      for (int i = 0; i < rdeg; ++i) {
        us.push_back(tangent(rng, f));
        uss.push_back(us.back());
        for (const auto& v : s.vertices()) uss.back().try_emplace(v, 0);
      }
      CHECK(oracle::evaluate(r, x, us) == oracle::evaluate(w, xs, uss));
    }
  }
}

TEST_CASE("restriction is transitive and a morphism") {
  random::Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    Simplex s = random_simplex(rng);
    LieAlgebra g = random::lie_algebra(rng, 3);
    auto a = random::local_form(rng, s, g.dim(), static_cast<int>(rng() % 3));
    auto b = random::local_form(rng, s, g.dim(), static_cast<int>(rng() % 3));
    auto faces = s.faces();
    const Simplex& f = faces[rng() % faces.size()];
    auto sub = f.faces();
    const Simplex& h = sub[rng() % sub.size()];
    CHECK(restrict_to_face(restrict_to_face(a, f), h) == restrict_to_face(a, h));
    CHECK(restrict_to_face(differential(g, a), f) == differential(g, restrict_to_face(a, f)));
    CHECK(restrict_to_face(wedge(a, b), f) == wedge(restrict_to_face(a, f), restrict_to_face(b, f)));
  }
}

TEST_CASE("extension from the boundary") {
  auto g0 = LieAlgebra::abelian(0);
  Simplex e = S({"v0", "v1"});
  std::map<Simplex, AlgebroidForm> vals{{S({"v0"}), AlgebroidForm::constant(S({"v0"}), 0, q(3))},
                                        {S({"v1"}), AlgebroidForm::constant(S({"v1"}), 0, q(5))}};
  auto w = extend_from_boundary(g0, e, 0, vals);
  CHECK(w == AlgebroidForm::constant(e, 0, q(3)) + t(e, "v1") * q(2));
  CHECK(restrict_to_face(w, S({"v0"})) == vals.at(S({"v0"})));
  CHECK(restrict_to_face(w, S({"v1"})) == vals.at(S({"v1"})));

  Simplex tri = S({"v0", "v1", "v2"});
  std::map<Simplex, AlgebroidForm> zeros;
  for (const auto& f : tri.facets()) zeros.emplace(f, AlgebroidForm(f, 0, 1));
  CHECK(extend_from_boundary(g0, tri, 1, zeros).is_zero());

  std::map<Simplex, AlgebroidForm> clash{{S({"v0", "v1"}), AlgebroidForm(S({"v0", "v1"}), 0, 0)},
                                         {S({"v1", "v2"}), AlgebroidForm::constant(S({"v1", "v2"}), 0, q(1))}};
  CHECK_THROWS_AS(extend_from_boundary(g0, tri, 0, clash), IncompatibleBoundary);
}

TEST_CASE("extension is a right inverse of facet restriction") {
  random::Rng rng(14);
  for (int k = 0; k < 60; ++k) {
    Simplex s = random_simplex(rng);
    if (s.size() < 2) continue;
    LieAlgebra g = random::lie_algebra(rng, 2);
    const int p = static_cast<int>(rng() % 3);
    auto w0 = random::local_form(rng, s, g.dim(), p, 3, 3);
    std::map<Simplex, AlgebroidForm> fam;
    for (const auto& f : s.facets())
      if (rng() % 4 != 0) fam.emplace(f, restrict_to_face(w0, f));
    auto w = extend_from_boundary(g, s, p, fam);
    for (const auto& [f, v] : fam) CHECK(restrict_to_face(w, f) == v);
  }
}

TEST_CASE("weights") {
  Simplex s = S({"v0", "v1", "v2"});
  auto parts = weight_components(wedge(t(s, "v1"), dt(s, "v2")));
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].first == 2);
  auto two = weight_components(AlgebroidForm::constant(s, 0, q(1)) + t(s, "v1"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].first == 0);
  CHECK(two[1].first == 1);

  random::Rng rng(15);
  for (int k = 0; k < 100; ++k) {
    Simplex x = random_simplex(rng);
    LieAlgebra g = random::lie_algebra(rng, 3);
    auto w = random::local_form(rng, x, g.dim(), static_cast<int>(rng() % 3), 3, 4);
    auto parts = weight_components(w);
    AlgebroidForm sum(x, g.dim(), w.degree());
    for (const auto& [wt, part] : parts) {
      sum += part;
      auto dp = differential(g, part);
      if (!dp.is_zero()) {
        auto dparts = weight_components(dp);
        CHECK(dparts.size() == 1);
        CHECK(dparts[0].first == wt);
      }
    }
    CHECK(sum == w);
    auto faces = x.faces();
    CHECK(restrict_to_face(w, faces[rng() % faces.size()]).max_weight() <= w.max_weight());
    auto other = random::local_form(rng, x, g.dim(), 0, 2, 1);
    if (!w.is_zero() && !other.is_zero()) {
      auto prod = wedge(parts.back().second, weight_components(other).back().second);
      if (!prod.is_zero()) CHECK(prod.max_weight() == parts.back().first + weight_components(other).back().first);
    }
  }
}
