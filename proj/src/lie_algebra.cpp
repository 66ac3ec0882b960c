#include "psforms/lie_algebra.hpp"

#include <bit>
#include <string>

#include "psforms/linalg.hpp"

namespace psforms {

int shuffle_sign(std::uint64_t a, std::uint64_t b) {
  // Count pairs (x in a, y in b) with x > y.
  int inversions = 0;
  while (b) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

std::vector<std::uint64_t> masks_of_size(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {0};
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = n >= 64 ? 0 : (std::uint64_t{1} << n);
  while (m < limit) {
    out.push_back(m);
    // Gosper's hack
    const std::uint64_t c = m & -m;
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

JacobiViolation::JacobiViolation(int i_, int j_, int k_, std::vector<Rational> defect_)
    : Error("Jacobi identity fails for (" + std::to_string(i_) + "," + std::to_string(j_) + "," +
            std::to_string(k_) + ")"),
      i(i_),
      j(j_),
      k(k_),
      defect(std::move(defect_)) {}

LieAlgebra::LieAlgebra(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) throw InputError("Lie algebra dimension out of range");
  brackets_.assign(static_cast<std::size_t>(dim) * (dim > 0 ? dim - 1 : 0) / 2,
                   std::vector<Rational>(dim));
  dual_differential_.assign(dim, {});
}

std::size_t LieAlgebra::pair_index(int i, int j) const {
  // i < j; row-major over the strict upper triangle
  return static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2 + (j - i - 1);
}

void LieAlgebra::set_bracket(int i, int j, const std::vector<std::pair<int, Rational>>& value) {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || i == j) {
    throw InputError("bracket indices out of range");
  }
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  auto& slot = brackets_[pair_index(i, j)];
  for (auto& c : slot) c = 0;
  for (const auto& [k, v] : value) {
    if (k < 0 || k >= dim_) throw InputError("bracket component index out of range");
    slot[k] += flip ? Rational(-v) : v;
  }
  // refresh d ε^k = -Σ_{i<j} c_ij^k ε^i∧ε^j
  for (int k = 0; k < dim_; ++k) {
    auto& d = dual_differential_[k];
    d.clear();
    for (int a = 0; a < dim_; ++a) {
      for (int b = a + 1; b < dim_; ++b) {
        const Rational& c = brackets_[pair_index(a, b)][k];
        if (c != 0) d.emplace_back((DualMask{1} << a) | (DualMask{1} << b), -c);
      }
    }
  }
}

std::vector<Rational> LieAlgebra::bracket(int i, int j) const {
  if (i == j) return std::vector<Rational>(dim_);
  if (i < j) return brackets_[pair_index(i, j)];
  auto v = brackets_[pair_index(j, i)];
  for (auto& c : v) c = -c;
  return v;
}

std::vector<Rational> LieAlgebra::bracket(const std::vector<Rational>& x,
                                          const std::vector<Rational>& y) const {
  std::vector<Rational> out(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == 0 || i == j) continue;
      const auto b = bracket(i, j);
      for (int k = 0; k < dim_; ++k) out[k] += x[i] * y[j] * b[k];
    }
  }
  return out;
}

const Rational& LieAlgebra::structure_constant(int i, int j, int k) const {
  return brackets_.at(pair_index(i, j)).at(k);
}

bool LieAlgebra::is_abelian() const {
  for (const auto& b : brackets_) {
    for (const auto& c : b) {
      if (c != 0) return false;
    }
  }
  return true;
}

std::optional<JacobiViolation> jacobi_defect(const LieAlgebra& g) {
  const int n = g.dim();
  auto unit = [n](int i) {
    std::vector<Rational> e(n);
    e[i] = 1;
    return e;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        auto a = g.bracket(g.bracket(i, j), unit(k));
        const auto b = g.bracket(g.bracket(j, k), unit(i));
        const auto c = g.bracket(g.bracket(k, i), unit(j));
        bool zero = true;
        for (int m = 0; m < n; ++m) {
          a[m] += b[m] + c[m];
          if (a[m] != 0) zero = false;
        }
        if (!zero) return JacobiViolation(i, j, k, std::move(a));
      }
    }
  }
  return std::nullopt;
}

void validate(const LieAlgebra& g) {
  if (auto v = jacobi_defect(g)) throw *v;
}

void CECochain::add(DualMask mask, const Rational& value) {
  if (std::popcount(mask) != degree_) throw InputError("cochain term has wrong degree");
  if (value == 0) return;
  auto [it, inserted] = terms_.try_emplace(mask, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational CECochain::coefficient(DualMask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Rational(0) : it->second;
}

const std::vector<std::pair<DualMask, Rational>>& dual_generator_differential(const LieAlgebra& g,
                                                                              int k) {
  return g.dual_differential_.at(k);
}

std::vector<std::pair<DualMask, Rational>> ce_differential_basis(const LieAlgebra& g, DualMask mask) {
  // Graded derivation: d(ε^{t1}∧..∧ε^{ts}) = Σ_a (-1)^a ε^{t1}∧..∧dε^{ta}∧..∧ε^{ts}.
  std::map<DualMask, Rational> acc;
  int a = 0;
  for (DualMask rest = mask; rest; rest &= rest - 1, ++a) {
    const int t = std::countr_zero(rest);
    const DualMask before = mask & ((DualMask{1} << t) - 1);
    const DualMask after = mask & ~((DualMask{1} << (t + 1)) - 1);
    for (const auto& [pair, c] : dual_generator_differential(g, t)) {
      if (pair & (before | after)) continue;
      // ε_before ∧ ε_pair ∧ ε_after
      const int sign = (a & 1 ? -1 : 1) * shuffle_sign(before, pair) * shuffle_sign(before | pair, after);
      Rational v = c;
      if (sign < 0) v = -v;
      acc[before | pair | after] += v;
    }
  }
  std::vector<std::pair<DualMask, Rational>> out;
  for (auto& [m, v] : acc) {
    if (v != 0) out.emplace_back(m, std::move(v));
  }
  return out;
}

CECochain ce_differential(const LieAlgebra& g, const CECochain& c) {
  if (c.degree() >= g.dim()) {
    throw DegreeOverflow("CE differential of a degree-" + std::to_string(c.degree()) +
                         " cochain on a " + std::to_string(g.dim()) + "-dimensional algebra");
  }
  CECochain out(c.degree() + 1);
  for (const auto& [mask, v] : c.terms()) {
    for (const auto& [m, w] : ce_differential_basis(g, mask)) out.add(m, v * w);
  }
  return out;
}

std::vector<int> ce_cohomology(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<std::vector<std::uint64_t>> basis(n + 2);
  for (int s = 0; s <= n; ++s) basis[s] = masks_of_size(n, s);
  std::vector<std::size_t> ranks(n + 1, 0);  // rank of d: Λ^s -> Λ^{s+1}
  for (int s = 0; s < n; ++s) {
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t r = 0; r < basis[s + 1].size(); ++r) index[basis[s + 1][r]] = r;
    linalg::SparseMatrix m(basis[s + 1].size(), basis[s].size());
    for (std::size_t c = 0; c < basis[s].size(); ++c) {
      for (const auto& [mask, v] : ce_differential_basis(g, basis[s][c])) m.add(index.at(mask), c, v);
    }
    ranks[s] = linalg::rank(m);
  }
  std::vector<int> dims(n + 1);
  for (int s = 0; s <= n; ++s) {
    const std::size_t in = s > 0 ? ranks[s - 1] : 0;
    dims[s] = static_cast<int>(basis[s].size() - ranks[s] - in);
  }
  return dims;
}

}  // namespace psforms
