#include <doctest.h>

#include "fixtures.hpp"

using namespace psforms;
using namespace fixtures;

namespace {

ComplexPtr trivial_on(const SimplicialComplex& K) { return make_complex(K, LieAlgebra::abelian(0)); }

PiecewiseForm global_t(ComplexPtr parent, const char* v) {
  Simplex all(parent->base().vertices());
  return from_ambient(parent, AlgebroidForm::coordinate(all, parent->fiber().dim(), v));
}

Cover cover_of(std::initializer_list<std::initializer_list<const char*>> centers) {
  Cover c;
  for (auto x : centers) c.members.push_back(StarOpen{Simplex(std::vector<VertexId>(x.begin(), x.end()))});
  return c;
}

}  // namespace

TEST_CASE("cover checks") {
  CHECK(is_cover(circle(), cover_of({{"v0"}, {"v1"}, {"v2"}})).ok());
  auto edges = is_cover(circle(), cover_of({{"v0", "v1"}, {"v1", "v2"}, {"v0", "v2"}}));
  REQUIRE_FALSE(edges.ok());
  CHECK(*edges.missing == S({"v0"}));
  auto mixed = is_cover(triangle(), cover_of({{"v0"}, {"v1", "v2"}}));
  REQUIRE_FALSE(mixed.ok());
  CHECK(*mixed.missing == S({"v1"}));
  CHECK_THROWS_AS(is_cover(path(), cover_of({{"v0", "v2"}})), NotInComplex);
  CHECK_THROWS_AS(partition_of_unity(trivial_on(circle()), cover_of({{"v0", "v1"}})), NotACover);
}

TEST_CASE("vertex-star partitions are barycentric coordinates") {
  for (auto K : {circle(), triangle()}) {
    auto P = trivial_on(K);
    auto cover = vertex_star_cover(K);
    auto pu = partition_of_unity(P, cover);
    CHECK(certify(pu).ok());
    for (std::size_t j = 0; j < cover.members.size(); ++j) {
      auto tv = global_t(P, cover.members[j].center[0].c_str());
      for (const auto& s : K.simplices()) CHECK(pu.functions[j].on(s) == RationalForm(tv[s]));
    }
  }
}

TEST_CASE("redundant cover of the circle") {
  auto P = trivial_on(circle());
  auto cover = cover_of({{"v0"}, {"v1"}, {"v2"}, {"v0", "v1"}});
  auto pu = partition_of_unity(P, cover);
  auto cert = certify(pu);
  CHECK(cert.sum_is_one);
  CHECK(cert.subordinate);
  CHECK(cert.denominator_positive);
  Simplex e = S({"v0", "v1"});
  auto t0 = AlgebroidForm::coordinate(e, 0, "v0"), t1 = AlgebroidForm::coordinate(e, 0, "v1");
  auto one = AlgebroidForm::constant(e, 0, q(1));
  CHECK(pu.functions[3].on(e) == RationalForm(wedge(t0, t1), one + wedge(t0, t1)));
  CHECK(pu.functions[3].numerator[S({"v1", "v2"})].is_zero());
  CHECK(pu.functions[3].numerator[S({"v0", "v2"})].is_zero());
  auto K = circle();
  for (const auto& s : K.simplices()) {
    RationalForm total(AlgebroidForm(s, 0, 0));
    for (const auto& f : pu.functions) total += f.on(s);
    CHECK(total == RationalForm(AlgebroidForm::constant(s, 0, q(1))));
  }
  CHECK(cert.positivity_witness.at(e) == 0);
}

TEST_CASE("fineness operators sum to the identity") {
  random::Rng rng(31);
  auto covers = std::vector<std::pair<SimplicialComplex, Cover>>{
      {circle(), cover_of({{"v0"}, {"v1"}, {"v2"}, {"v0", "v1"}})},
      {triangle(), cover_of({{"v0"}, {"v1"}, {"v2"}, {"v1", "v2"}, {"v0", "v1", "v2"}})},
      {tetra_boundary(), vertex_star_cover(tetra_boundary())}};
  for (const auto& [K, cover] : covers) {
    auto P = make_complex(K, aff1());
    auto pu = partition_of_unity(P, cover);
    for (int k = 0; k < 5; ++k) {
      auto w = random::piecewise(rng, P, static_cast<int>(rng() % 3));
      auto hs = fineness_operators(pu, w);
      PiecewiseRationalForm sum(P, w.degree());
      for (std::size_t j = 0; j < hs.size(); ++j) {
        sum += hs[j];
        CHECK_FALSE(find_incompatibility(hs[j]).has_value());
        for (const auto& s : K.simplices())
          if (!cover.members[j].center.is_face_of(s)) CHECK(hs[j][s].is_zero());
      }
      CHECK(sum == PiecewiseRationalForm(w));
    }
    for (const auto& h : fineness_operators(pu, PiecewiseForm(P, 1))) CHECK(h.is_zero());
  }
  auto other = trivial_on(circle());
  auto pu = partition_of_unity(make_complex(circle(), aff1()), vertex_star_cover(circle()));
  CHECK_THROWS_AS(fineness_operators(pu, PiecewiseForm(other, 0)), ParentMismatch);
}

TEST_CASE("rational forms") {
  Simplex e = S({"v0", "v1"});
  auto g = LieAlgebra::abelian(0);
  auto t1 = AlgebroidForm::coordinate(e, 0, "v1");
  auto one = AlgebroidForm::constant(e, 0, q(1));
  RationalForm r(t1, one + t1);
  CHECK(r == RationalForm(t1 * q(2), (one + t1) * q(2)));
  // d(t/(1+t)) = dt/(1+t)^2
  auto dt1 = AlgebroidForm::coordinate_differential(e, 0, "v1");
  CHECK(differential(g, r) == RationalForm(dt1, wedge(one + t1, one + t1)));
  CHECK(restrict_to_face(r, S({"v1"})) ==
        RationalForm(AlgebroidForm::constant(S({"v1"}), 0, q(1)), AlgebroidForm::constant(S({"v1"}), 0, q(2))));
  CHECK_THROWS_AS(RationalForm(t1, AlgebroidForm(e, 0, 0)), InputError);
  CHECK_THROWS_AS(restrict_to_face(RationalForm(one, t1), S({"v0"})), Error);
}

TEST_CASE("gluing") {
  auto P = trivial_on(circle());
  auto cover = vertex_star_cover(circle());
  auto w = global_t(P, "v1");
  CHECK(check_gluing(P, cover, sections_of(w, cover)) == w);

  auto fam = sections_of(w, cover);
  Simplex e = S({"v0", "v1"});
  fam.sections[0].set(e, fam.sections[0][e] + AlgebroidForm::constant(e, 0, q(1)));
  try {
    check_gluing(P, cover, fam);
    FAIL("expected an overlap mismatch");
  } catch (const SectionsIncompatible& x) {
    CHECK(x.first == 0);
    CHECK(x.second == 1);
    CHECK(x.simplex == e);
    CHECK(x.difference == AlgebroidForm::constant(e, 0, q(1)));
  }

  // Whitney form of the edge {v0,v1}: t0 dt1 - t1 dt0 = dt1 in free coordinates.
  PiecewiseForm whitney(P, 1);
  auto t0 = AlgebroidForm::coordinate(e, 0, "v0"), t1 = AlgebroidForm::coordinate(e, 0, "v1");
  auto d0 = AlgebroidForm::coordinate_differential(e, 0, "v0"), d1 = AlgebroidForm::coordinate_differential(e, 0, "v1");
  whitney.set(e, wedge(t0, d1) - wedge(t1, d0));
  CHECK(whitney[e] == d1);
  auto glued = check_gluing(P, cover, sections_of(whitney, cover));
  CHECK(glued == whitney);
  CHECK_FALSE(find_incompatibility(glued).has_value());

  SectionFamily short_fam{{fam.sections[0]}};
  CHECK_THROWS_AS(check_gluing(P, cover, short_fam), InputError);
  CHECK_THROWS_AS(check_gluing(P, cover_of({{"v0", "v1"}}), sections_of(w, cover_of({{"v0", "v1"}}))), NotACover);
}

TEST_CASE("gluing rejects corrupted overlaps on random inputs") {
  random::Rng rng(32);
  for (int k = 0; k < 15; ++k) {
    auto K = random::complex(rng, 6, 3);
    auto P = make_complex(K, random::lie_algebra(rng, 2));
    auto cover = vertex_star_cover(K);
    auto w = random::piecewise(rng, P, static_cast<int>(rng() % 2));
    CHECK(check_gluing(P, cover, sections_of(w, cover)) == w);
    auto fam = sections_of(w, cover);
    // Perturb one simplex shared by two members' closed stars.
    for (std::size_t i = 0; i < cover.members.size(); ++i) {
      bool done = false;
      for (std::size_t j = i + 1; j < cover.members.size() && !done; ++j) {
        auto meet = star_intersection(K, cover.members[i], cover.members[j]);
        if (!meet) continue;
        const Simplex& s = meet->center;
        auto bump = random::local_form(rng, s, P->fiber().dim(), w.degree(), 1, 1);
        if (bump.is_zero()) continue;
        fam.sections[j].set(s, fam.sections[j][s] + bump);
        bool caught = false;
        try {
          check_gluing(P, cover, fam);
        } catch (const SectionsIncompatible& x) {
          caught = true;
          CHECK(x.difference == fam.sections[x.first][x.simplex] - fam.sections[x.second][x.simplex]);
          CHECK_FALSE(x.difference.is_zero());
        }
        CHECK(caught);
        done = true;
      }
      if (done) break;
    }
  }
}

TEST_CASE("presheaf laws") {
  auto P = trivial_on(triangle());
  StarChain chain{StarOpen{S({"v0"})}, StarOpen{S({"v0", "v1"})}, StarOpen{S({"v0", "v1", "v2"})}};
  auto w = section_over(global_t(P, "v1"), chain.outer);
  CHECK(check_presheaf_laws(*P, chain, w, w) == presheaf_law_names());
  StarChain same{chain.outer, chain.outer, chain.outer};
  CHECK_NOTHROW(check_presheaf_laws(*P, same, w, w));

  SectionRestriction doubled = [](const PiecewiseForm& x, const StarOpen& U) {
    return section_over(x, U) * Rational(2);
  };
  try {
    check_presheaf_laws(*P, chain, w, w, doubled);
    FAIL("expected a law violation");
  } catch (const LawViolation& e) {
    CHECK(e.law == "identity");
  }

  // Identity on the own carrier, scaled otherwise: breaks composition only.
  SectionRestriction drifting = [](const PiecewiseForm& x, const StarOpen& U) {
    auto r = section_over(x, U);
    return r.base() == x.base() ? r : r * Rational(2);
  };
  auto big = make_complex(tetra_boundary(), LieAlgebra::abelian(0));
  StarChain deep{StarOpen{S({"v0"})}, StarOpen{S({"v0", "v1"})}, StarOpen{S({"v0", "v1", "v2"})}};
  auto u = section_over(global_t(big, "v1"), deep.outer);
  try {
    check_presheaf_laws(*big, deep, u, u, drifting);
    FAIL("expected a law violation");
  } catch (const LawViolation& e) {
    CHECK(e.law == "composition");
  }

  CHECK_THROWS_AS(check_presheaf_laws(*P, StarChain{chain.inner, chain.middle, chain.outer}, w, w), InputError);

  random::Rng rng(33);
  for (int k = 0; k < 20; ++k) {
    auto K = random::complex(rng, 6, 3);
    auto Q = make_complex(K, random::lie_algebra(rng, 2));
    auto ch = random::star_chain(rng, K);
    auto carrier = make_complex(closed_star_subcomplex(K, ch.outer), Q->fiber());
    auto a = random::piecewise(rng, carrier, static_cast<int>(rng() % 2));
    auto b = random::piecewise(rng, carrier, static_cast<int>(rng() % 2));
    CHECK_NOTHROW(check_presheaf_laws(*Q, ch, a, b));
  }
}
