#include <doctest.h>

#include <algorithm>
#include <iterator>

#include "fixtures.hpp"

using namespace psforms;
using namespace fixtures;

namespace {

ComplexPtr trivial_on(const SimplicialComplex& K) { return make_complex(K, LieAlgebra::abelian(0)); }

/// The barycentric coordinate of v as a global piecewise function.
PiecewiseForm global_t(ComplexPtr parent, const char* v) {
  Simplex all(parent->base().vertices());
  return from_ambient(parent, AlgebroidForm::coordinate(all, parent->fiber().dim(), v));
}

AlgebroidForm c(const Simplex& s, long x) { return AlgebroidForm::constant(s, 0, q(x)); }
AlgebroidForm t(const Simplex& s, const char* v) { return AlgebroidForm::coordinate(s, 0, v); }

}  // namespace

TEST_CASE("validation on the circle") {
  auto P = trivial_on(circle());
  auto w = global_t(P, "v1");
  CHECK_FALSE(find_incompatibility(w).has_value());
  CHECK(w[S({"v0", "v1"})] == t(S({"v0", "v1"}), "v1"));
  CHECK(w[S({"v1", "v2"})] == c(S({"v1", "v2"}), 1) - t(S({"v1", "v2"}), "v2"));
  CHECK(w[S({"v0", "v2"})].is_zero());
  CHECK(w[S({"v1"})] == c(S({"v1"}), 1));

  PiecewiseForm bad(P, 0);
  bad.set(S({"v0", "v1"}), t(S({"v0", "v1"}), "v1"));
  auto wit = find_incompatibility(bad);
  REQUIRE(wit.has_value());
  CHECK(wit->simplex == S({"v0", "v1"}));
  CHECK(wit->face == S({"v1"}));
  CHECK(wit->difference == c(S({"v1"}), 1));
  CHECK_THROWS_AS(validate_piecewise(bad), Incompatible);

  CHECK_NOTHROW(validate_piecewise(PiecewiseForm(trivial_on(tetra_boundary()), 2)));
}

TEST_CASE("restriction to subcomplexes") {
  auto P = trivial_on(circle());
  auto w = global_t(P, "v1");
  CHECK(restrict_to_subcomplex(w, circle()) == w);
  auto L = complex_of({{"v0", "v1"}});
  auto r = restrict_to_subcomplex(w, L);
  CHECK(r.components().size() == 3);
  CHECK(r[S({"v0"})].is_zero());
  CHECK(r[S({"v1"})] == c(S({"v1"}), 1));
  CHECK(r[S({"v0", "v1"})] == t(S({"v0", "v1"}), "v1"));
  CHECK_THROWS_AS(restrict_to_subcomplex(w, triangle()), NotASubcomplex);
}

TEST_CASE("functoriality on random subcomplex chains") {
  random::Rng rng(21);
  for (int k = 0; k < 30; ++k) {
    auto K = random::complex(rng, 6, 3);
    auto P = make_complex(K, random::lie_algebra(rng, 2));
    auto L = random::subcomplex(rng, K);
    auto T = random::subcomplex(rng, L);
    auto w = random::piecewise(rng, P, static_cast<int>(rng() % 3));
    auto eta = random::piecewise(rng, P, static_cast<int>(rng() % 2));
    CHECK_FALSE(find_incompatibility(w).has_value());
    auto wl = restrict_to_subcomplex(w, L);
    CHECK_FALSE(find_incompatibility(wl).has_value());
    CHECK(restrict_to_subcomplex(wl, T) == restrict_to_subcomplex(w, T));
    CHECK(restrict_to_subcomplex(differential(w), L) == differential(wl));
    CHECK(restrict_to_subcomplex(wedge(w, eta), L) == wedge(wl, restrict_to_subcomplex(eta, L)));
  }
}

TEST_CASE("extension from subcomplexes") {
  auto T = trivial_on(triangle());
  auto S1 = trivial_on(circle());
  auto w = global_t(S1, "v1");
  auto ext = extend_from_subcomplex(T, w);
  CHECK_FALSE(find_incompatibility(ext).has_value());
  CHECK(restrict_to_subcomplex(ext, circle()) == w);

  auto V = trivial_on(point());
  PiecewiseForm seven(V, 0);
  seven.set(S({"v0"}), c(S({"v0"}), 7));
  auto e7 = extend_from_subcomplex(T, seven);
  CHECK_FALSE(find_incompatibility(e7).has_value());
  CHECK(e7[S({"v0"})] == c(S({"v0"}), 7));

  CHECK(extend_from_subcomplex(T, ext) == ext);

  random::Rng rng(22);
  for (int k = 0; k < 20; ++k) {
    auto K = random::complex(rng, 6, 3);
    auto P = make_complex(K, random::lie_algebra(rng, 2));
    auto L = random::subcomplex(rng, K);
    auto PL = make_complex(L, P->fiber());
    auto wl = random::piecewise(rng, PL, static_cast<int>(rng() % 3));
    auto e = extend_from_subcomplex(P, wl);
    CHECK_FALSE(find_incompatibility(e).has_value());
    CHECK(restrict_to_subcomplex(e, L) == wl);
  }
}

TEST_CASE("sections over stars") {
  auto T = trivial_on(triangle());
  auto w = global_t(T, "v2");
  CHECK(section_over(w, StarOpen{S({"v0"})}).components().size() == 7);

  auto P = trivial_on(circle());
  auto u = section_over(global_t(P, "v1"), StarOpen{S({"v0"})});
  CHECK(u.components().size() == 5);
  CHECK(u.base().contains(S({"v0", "v1"})));
  CHECK_FALSE(u.base().contains(S({"v1", "v2"})));
  CHECK_THROWS_AS(section_over(u, StarOpen{S({"v1", "v2"})}), NotInComplex);

  random::Rng rng(23);
  for (int k = 0; k < 30; ++k) {
    auto K = random::complex(rng, 6, 3);
    auto Q = make_complex(K, random::lie_algebra(rng, 2));
    auto x = random::piecewise(rng, Q, static_cast<int>(rng() % 2));
    auto chain = random::star_chain(rng, K);
    auto direct = section_over(x, chain.middle);
    CHECK(section_over(section_over(x, chain.outer), chain.middle) == direct);
  }
}

TEST_CASE("componentwise algebra") {
  auto P = trivial_on(circle());
  auto d = differential(global_t(P, "v1"));
  CHECK(d.degree() == 1);
  CHECK(d[S({"v0", "v1"})] == AlgebroidForm::coordinate_differential(S({"v0", "v1"}), 0, "v1"));
  CHECK(d[S({"v1", "v2"})] == -AlgebroidForm::coordinate_differential(S({"v1", "v2"}), 0, "v2"));
  CHECK(d[S({"v0", "v2"})].is_zero());
  CHECK_FALSE(find_incompatibility(d).has_value());

  random::Rng rng(24);
  for (int k = 0; k < 100; ++k) {
    auto K = random::complex(rng, 6, 3);
    auto Q = make_complex(K, random::lie_algebra(rng, 3));
    auto x = random::piecewise(rng, Q, static_cast<int>(rng() % 3));
    CHECK(differential(differential(x)).is_zero());
  }
  auto other = trivial_on(triangle());
  CHECK_THROWS_AS(wedge(global_t(P, "v1"), global_t(other, "v1")), ParentMismatch);
}

TEST_CASE("derived complexes") {
  auto P = trivial_on(circle());
  auto D = derived_complex(P, StarOpen{S({"v0"})});
  CHECK(D.members.size() == 3);
  CHECK(D.carrier->base().size() == 5);
  for (const auto& a : D.members) {
    CHECK(S({"v0"}).is_face_of(a));
    for (const auto& b : D.members) {
      std::vector<VertexId> common;
      std::set_intersection(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
                            std::back_inserter(common));
      CHECK(D.carrier->base().contains(Simplex(common)));
    }
  }
}
