#pragma once

// Cohomology of the piecewise cochain algebra, computed block by block.
//
// F_w is the subcomplex of piecewise forms whose components all have weight
// at most w (weight = polynomial degree + number of dt factors, measured in
// each simplex's own free coordinates). Restriction never raises weight and
// D preserves it term by term, so D acts on the leading parts
// L_w = {weight-w part of ω : ω ∈ F_w}. The (p, w) block is L_w in degree p,
// and betti numbers are summed over the blocks w = 0..W.

#include <cstddef>
#include <string>
#include <vector>

#include "psforms/linalg.hpp"
#include "psforms/piecewise.hpp"

namespace psforms {

/// Basis of the (p, w) block. Each element is a valid piecewise form in F_w;
/// their weight-w parts are linearly independent and span L_w.
struct CochainBasis {
  ComplexPtr parent;
  int degree = 0;
  int weight = 0;
  std::vector<PiecewiseForm> elements;

  std::size_t dim() const { return elements.size(); }
};

CochainBasis block_basis(ComplexPtr parent, int p, int w);

/// Matrix of D: L_w^p -> L_w^{p+1} in the bases of block_basis.
linalg::SparseMatrix differential_matrix(ComplexPtr parent, int p, int w);

struct BlockReport {
  int p = 0;
  int w = 0;
  std::size_t dim = 0;
  /// Rank of D leaving the block.
  std::size_t rank = 0;
  /// Contribution of the block to H^p.
  std::size_t cohomology = 0;
};

struct BettiTable {
  std::vector<int> betti;
  int weights_used = 0;
  /// Weights W-1 and W contribute nothing to any degree <= p_max.
  bool stabilized = false;
  /// Every rank agreed under Markowitz and natural pivoting.
  bool pivot_orders_agree = true;
  /// Number of rank computations that were cross-checked.
  std::size_t ranks_checked = 0;
  std::vector<BlockReport> blocks;
  /// Set when the table is not stabilized.
  std::string warning;
};

struct BettiOptions {
  /// Recompute every rank under natural pivoting and compare.
  bool cross_check_pivots = true;
};

BettiTable betti(ComplexPtr parent, int p_max, int W, const BettiOptions& opts = {});

/// Rational simplicial cohomology dims H^0..H^{dim K}.
std::vector<int> simplicial_betti(const SimplicialComplex& K);

/// Graded tensor product of simplicial_betti(K) and ce_cohomology(g), with
/// trailing zeros dropped down to the length of simplicial_betti(K).
std::vector<int> kunneth_oracle(const SimplicialComplex& K, const LieAlgebra& g);

}  // namespace psforms
