#pragma once

// Seeded generators for complexes, Lie algebras and forms, used by the
// randomized checks of the command line tool and by the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "psforms/sheaf.hpp"

namespace psforms::random {

using Rng = std::mt19937_64;

/// Nonzero rational a/b with |a| <= span and 1 <= b <= span.
Rational nonzero_rational(Rng& rng, int span = 4);

/// Closure of a few random simplices on vertices v0..v{n-1}, n <= max_vertices.
SimplicialComplex complex(Rng& rng, int max_vertices = 8, int max_dim = 3);
/// Closure of a random nonempty selection of simplices of K.
SimplicialComplex subcomplex(Rng& rng, const SimplicialComplex& K);

/// Named Lie algebras with rational structure constants.
struct CatalogEntry {
  std::string name;
  LieAlgebra algebra;
};
std::vector<CatalogEntry> catalog();
/// The same algebra written in the basis f_i = Σ_a P[a][i] e_a.
LieAlgebra change_basis(const LieAlgebra& g, const std::vector<std::vector<Rational>>& P);
/// A catalog algebra of dimension <= max_dim in a random basis.
LieAlgebra lie_algebra(Rng& rng, int max_dim = 3);

/// Sum of up to `terms` random monomial terms of the given degree.
AlgebroidForm local_form(Rng& rng, const Simplex& s, int fiber_dim, int degree, int max_poly_degree = 2,
                         int terms = 3);

/// A valid piecewise form: the restriction of a random form on the simplex
/// spanned by all vertices plus an extension of random vertex values, so
/// the result is not globally polynomial in general.
PiecewiseForm piecewise(Rng& rng, ComplexPtr parent, int degree, int max_poly_degree = 2);

/// σ_U ⊆ σ_V ⊆ σ_W in K.
StarChain star_chain(Rng& rng, const SimplicialComplex& K);

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace psforms::random
