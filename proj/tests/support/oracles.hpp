#pragma once

// Reference computations written independently of the library's algorithms:
// dense elimination, Chevalley-Eilenberg by evaluation on basis tuples,
// simplicial coboundaries, and pointwise evaluation of forms.

#include <map>
#include <vector>

#include "psforms/forms.hpp"

namespace oracle {

using namespace psforms;
using Dense = std::vector<std::vector<Rational>>;

std::size_t dense_rank(Dense m);
Rational determinant(Dense m);

/// Coefficients of d_CE ε_T from (dξ)(x_0..x_s) = Σ_{i<j} (-1)^{i+j} ξ([x_i,x_j], ...).
std::map<DualMask, Rational> ce_differential(const LieAlgebra& g, DualMask t);
std::vector<int> ce_betti(const LieAlgebra& g);

std::vector<int> simplicial_betti(const SimplicialComplex& K);
std::vector<int> convolve(const std::vector<int>& a, const std::vector<int>& b);

/// Value of ω at a point (barycentric coordinates for every vertex of its
/// simplex) on tangent vectors (components per vertex, summing to 0), as
/// a Λg* element keyed by dual mask.
std::map<DualMask, Rational> evaluate(const AlgebroidForm& w, const std::map<VertexId, Rational>& point,
                                      const std::vector<std::map<VertexId, Rational>>& vectors);

}  // namespace oracle
