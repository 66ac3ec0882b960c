#include "oracles.hpp"

#include <bit>

namespace oracle {

std::size_t dense_rank(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t r = rank;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

Rational determinant(Dense m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(m[r], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

namespace {

std::vector<int> bits(std::uint64_t m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) out.push_back(i);
  return out;
}

/// ε_T evaluated on vectors given in coordinates.
Rational eval_dual(const std::vector<int>& t, const std::vector<std::vector<Rational>>& vecs) {
  Dense m(t.size(), std::vector<Rational>(t.size()));
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) m[a][b] = vecs[b][t[a]];
  return determinant(m);
}

std::vector<std::uint64_t> subsets(int n, int k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

}  // namespace

std::map<DualMask, Rational> ce_differential(const LieAlgebra& g, DualMask tmask) {
  const int n = g.dim();
  auto t = bits(tmask);
  const int s = static_cast<int>(t.size());
  std::map<DualMask, Rational> out;
  auto unit = [&](int i) {
    std::vector<Rational> v(n, 0);
    v[i] = 1;
    return v;
  };
  for (auto jmask : subsets(n, s + 1)) {
    auto j = bits(jmask);
    Rational total = 0;
    for (int a = 0; a < s + 1; ++a) {
      for (int b = a + 1; b < s + 1; ++b) {
        std::vector<std::vector<Rational>> args{g.bracket(unit(j[a]), unit(j[b]))};
        for (int c = 0; c < s + 1; ++c)
          if (c != a && c != b) args.push_back(unit(j[c]));
        Rational v = eval_dual(t, args);
        total += ((a + b) % 2 == 0) ? v : Rational(-v);
      }
    }
    if (total != 0) out[jmask] = total;
  }
  return out;
}

std::vector<int> ce_betti(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<std::size_t> rk(n + 1, 0);
  for (int s = 0; s < n; ++s) {
    auto src = subsets(n, s), dst = subsets(n, s + 1);
    Dense m(dst.size(), std::vector<Rational>(src.size(), 0));
    for (std::size_t c = 0; c < src.size(); ++c)
      for (auto& [mask, v] : ce_differential(g, src[c]))
        for (std::size_t r = 0; r < dst.size(); ++r)
          if (dst[r] == mask) m[r][c] = v;
    rk[s] = dense_rank(m);
  }
  std::vector<int> out(n + 1);
  for (int s = 0; s <= n; ++s)
    out[s] = static_cast<int>(subsets(n, s).size() - rk[s] - (s > 0 ? rk[s - 1] : 0));
  return out;
}

std::vector<int> simplicial_betti(const SimplicialComplex& K) {
  const int top = K.dim();
  std::vector<std::vector<Simplex>> cells(top + 2);
  for (const auto& s : K.simplices()) cells[s.dim()].push_back(s);
  std::vector<std::size_t> rk(top + 1, 0);
  for (int k = 0; k < top; ++k) {
    Dense m(cells[k + 1].size(), std::vector<Rational>(cells[k].size(), 0));
    for (std::size_t r = 0; r < cells[k + 1].size(); ++r) {
      const auto& big = cells[k + 1][r].vertices();
      for (std::size_t c = 0; c < cells[k].size(); ++c) {
        const auto& small = cells[k][c].vertices();
        // incidence sign (-1)^i where big minus vertex i equals small
        for (std::size_t i = 0; i < big.size(); ++i) {
          std::vector<VertexId> rest = big;
          rest.erase(rest.begin() + static_cast<long>(i));
          if (rest == small) m[r][c] = (i % 2 == 0) ? 1 : -1;
        }
      }
    }
    rk[k] = dense_rank(m);
  }
  std::vector<int> out(top + 1);
  for (int k = 0; k <= top; ++k) out[k] = static_cast<int>(cells[k].size() - rk[k] - (k > 0 ? rk[k - 1] : 0));
  return out;
}

std::vector<int> convolve(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::map<DualMask, Rational> evaluate(const AlgebroidForm& w, const std::map<VertexId, Rational>& point,
                                      const std::vector<std::map<VertexId, Rational>>& vectors) {
  const Simplex& s = w.simplex();
  std::map<DualMask, Rational> out;
  for (const auto& [key, poly] : w.terms()) {
    auto S = bits(key.dt);
    if (S.size() != vectors.size()) continue;
    Rational value = 0;
    for (const auto& [e, c] : poly.terms()) {
      Rational m = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) m *= point.at(s[i]);
      value += m;
    }
    Dense dm(S.size(), std::vector<Rational>(S.size()));
    for (std::size_t a = 0; a < S.size(); ++a)
      for (std::size_t b = 0; b < S.size(); ++b) {
        auto it = vectors[b].find(s[S[a]]);
        dm[a][b] = it == vectors[b].end() ? Rational(0) : it->second;
      }
    out[key.dual] += value * determinant(dm);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace oracle
