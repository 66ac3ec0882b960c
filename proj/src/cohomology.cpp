#include "psforms/cohomology.hpp"

#include <bit>
#include <map>
#include <tuple>

namespace psforms {

namespace {

using linalg::PivotRule;
using linalg::SparseMatrix;
using linalg::SparseVector;

struct Slot {
  Simplex simplex;
  FormKey key;
  Exponents exps;
  int weight;
};

using TermId = std::pair<FormKey, Exponents>;

/// Monomials of total degree d in positions 1..m-1 (position 0 stays 0).
void monomials(std::size_t m, int d, std::vector<Exponents>& out) {
  Exponents e(m, 0);
  if (m == 1) {
    if (d == 0) out.push_back(e);
    return;
  }
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == m - 1) {
      e[pos] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = static_cast<std::uint16_t>(k);
      self(self, pos + 1, left - k);
    }
    e[pos] = 0;
  };
  rec(rec, 1, d);
}

DtMask free_dt_mask(std::uint64_t m_over_free) { return m_over_free << 1; }

/// Terms of all weights <= w (or exactly w) and degree p on every simplex.
class TermIndex {
 public:
  TermIndex(const SimplicialComplex& K, int fiber_dim, int p, int w) {
    for (const auto& s : K.simplices()) {
      const std::size_t m = s.size();
      const int nfree = static_cast<int>(m) - 1;
      for (int r = 0; r <= std::min(p, nfree); ++r) {
        const int q = p - r;
        if (q > fiber_dim) continue;
        for (auto smask : masks_of_size(nfree, r)) {
          for (auto tmask : masks_of_size(fiber_dim, q)) {
            for (int d = 0; d + r <= w; ++d) {
              std::vector<Exponents> ms;
              monomials(m, d, ms);
              for (auto& e : ms) {
                FormKey key{free_dt_mask(smask), tmask};
                lookup_[s][{key, e}] = slots_.size();
                slots_.push_back(Slot{s, key, std::move(e), d + r});
              }
            }
          }
        }
      }
    }
  }

  const std::vector<Slot>& slots() const { return slots_; }
  std::size_t size() const { return slots_.size(); }
  std::size_t at(const Simplex& s, const TermId& t) const { return lookup_.at(s).at(t); }
  const std::map<TermId, std::size_t>* on(const Simplex& s) const {
    auto it = lookup_.find(s);
    return it == lookup_.end() ? nullptr : &it->second;
  }

 private:
  std::vector<Slot> slots_;
  std::map<Simplex, std::map<TermId, std::size_t>> lookup_;
};

struct Block {
  int p = 0, w = 0;
  TermIndex index;
  /// Full null vectors (lifts) whose top parts form the basis.
  std::vector<SparseVector> lifts;
  /// Slot index of the free column attached to each basis element.
  std::vector<std::size_t> coord_slot;
  std::map<std::size_t, std::size_t> coord_of;
  bool pivots_agree = true;
  std::size_t ranks_checked = 0;
};

class Engine {
 public:
  Engine(ComplexPtr parent, bool cross_check) : parent_(std::move(parent)), cross_check_(cross_check) {}

  const Block& block(int p, int w) {
    auto key = std::make_pair(p, w);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;
    return blocks_.emplace(key, build(p, w)).first->second;
  }

  /// D of the weight-w part of each basis element, in coordinates of (p+1, w).
  SparseMatrix differential(int p, int w) {
    const Block& src = block(p, w);
    const Block& dst = block(p + 1, w);
    SparseMatrix m(dst.lifts.size(), src.lifts.size());
    const auto& g = parent_->fiber();
    for (std::size_t j = 0; j < src.lifts.size(); ++j) {
      std::map<Simplex, AlgebroidForm> parts;
      for (const auto& [col, v] : src.lifts[j]) {
        const Slot& sl = src.index.slots()[col];
        if (sl.weight != w) continue;
        auto [it, fresh] = parts.try_emplace(sl.simplex, sl.simplex, g.dim(), p);
        it->second.add_monomial(sl.key, sl.exps, v);
      }
      for (const auto& [s, form] : parts) {
        AlgebroidForm dw = psforms::differential(g, form);
        for (const auto& [key, poly] : dw.terms()) {
          for (const auto& [e, c] : poly.terms()) {
            std::size_t slot = dst.index.at(s, {key, e});
            auto ci = dst.coord_of.find(slot);
            if (ci != dst.coord_of.end()) m.add(ci->second, j, c);
          }
        }
      }
    }
    return m;
  }

  PiecewiseForm to_form(const Block& b, const SparseVector& v) const {
    PiecewiseForm out(parent_, b.p);
    std::map<Simplex, AlgebroidForm> parts;
    for (const auto& [col, c] : v) {
      const Slot& sl = b.index.slots()[col];
      auto [it, fresh] = parts.try_emplace(sl.simplex, sl.simplex, parent_->fiber().dim(), b.p);
      it->second.add_monomial(sl.key, sl.exps, c);
    }
    for (auto& [s, form] : parts) out.set(s, std::move(form));
    return out;
  }

 private:
  using RestrictKey = std::tuple<Simplex, Simplex, FormKey, Exponents>;
  using Restricted = std::vector<std::tuple<FormKey, Exponents, Rational>>;

  const Restricted& restricted(const Simplex& s, const Simplex& f, const Slot& sl, int p) {
    RestrictKey key{s, f, sl.key, sl.exps};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    AlgebroidForm term(s, parent_->fiber().dim(), p);
    term.add_monomial(sl.key, sl.exps, Rational(1));
    Restricted out;
    const AlgebroidForm r = restrict_to_face(term, f);
    for (const auto& [k, poly] : r.terms())
      for (const auto& [e, c] : poly.terms()) out.emplace_back(k, e, c);
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  Block build(int p, int w) {
    const auto& K = parent_->base();
    Block b{p, w, TermIndex(K, parent_->fiber().dim(), p, w), {}, {}, {}, true, 0};
    const auto& slots = b.index.slots();

    // One equation per (simplex, facet, facet term): restrict(ω_s, f) - ω_f = 0.
    SparseMatrix m(0, b.index.size());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> rows;
    std::size_t pair_id = 0;
    for (const auto& s : K.simplices()) {
      if (s.dim() == 0) continue;
      const auto* terms_s = b.index.on(s);
      for (const auto& f : s.facets()) {
        const auto* terms_f = b.index.on(f);
        auto row_for = [&](std::size_t fslot) {
          auto [it, fresh] = rows.try_emplace({pair_id, fslot}, rows.size());
          if (fresh) m.append_row({});
          return it->second;
        };
        if (terms_f)
          for (const auto& [t, fslot] : *terms_f) m.add(row_for(fslot), fslot, Rational(-1));
        if (terms_s)
          for (const auto& [t, col] : *terms_s)
            for (const auto& [k, e, c] : restricted(s, f, slots[col], p))
              m.add(row_for(b.index.at(f, {k, e})), col, c);
        ++pair_id;
      }
    }

    linalg::EliminationOptions opts;
    opts.column_class.resize(slots.size());
    for (std::size_t c = 0; c < slots.size(); ++c) opts.column_class[c] = slots[c].weight == w ? 1 : 0;
    auto ech = linalg::row_reduce(m, opts);
    if (cross_check_) {
      b.pivots_agree = linalg::rank(m, PivotRule::natural) == ech.pivot_cols.size();
      ++b.ranks_checked;
    }
    b.lifts = linalg::null_space(ech, [&](std::size_t c) { return slots[c].weight == w; });
    // null_space emits one vector per kept free column, in column order.
    for (auto c : ech.free_cols()) {
      if (slots[c].weight != w) continue;
      b.coord_of[c] = b.coord_slot.size();
      b.coord_slot.push_back(c);
    }
    return b;
  }

  ComplexPtr parent_;
  bool cross_check_;
  std::map<std::pair<int, int>, Block> blocks_;
  std::map<RestrictKey, Restricted> cache_;
};

}  // namespace

CochainBasis block_basis(ComplexPtr parent, int p, int w) {
  if (p < 0 || w < 0) throw InputError("block indices must be nonnegative");
  Engine eng(parent, false);
  const Block& b = eng.block(p, w);
  CochainBasis out{parent, p, w, {}};
  for (const auto& v : b.lifts) out.elements.push_back(eng.to_form(b, v));
  return out;
}

SparseMatrix differential_matrix(ComplexPtr parent, int p, int w) {
  if (p < 0 || w < 0) throw InputError("block indices must be nonnegative");
  Engine eng(std::move(parent), false);
  return eng.differential(p, w);
}

BettiTable betti(ComplexPtr parent, int p_max, int W, const BettiOptions& opts) {
  if (p_max < 0 || W < 0) throw InputError("p_max and W must be nonnegative");
  Engine eng(parent, opts.cross_check_pivots);
  BettiTable t;
  t.weights_used = W;
  t.betti.assign(p_max + 1, 0);
  std::vector<std::vector<std::size_t>> contrib(W + 1, std::vector<std::size_t>(p_max + 1, 0));
  for (int w = 0; w <= W; ++w) {
    std::vector<std::size_t> rank_out(p_max + 1, 0);
    for (int p = 0; p <= p_max; ++p) {
      SparseMatrix d = eng.differential(p, w);
      rank_out[p] = linalg::rank(d, PivotRule::markowitz);
      if (opts.cross_check_pivots) {
        if (linalg::rank(d, PivotRule::natural) != rank_out[p]) t.pivot_orders_agree = false;
        ++t.ranks_checked;
      }
    }
    for (int p = 0; p <= p_max + 1; ++p) {
      const Block& b = eng.block(p, w);
      if (!b.pivots_agree) t.pivot_orders_agree = false;
      t.ranks_checked += b.ranks_checked;
    }
    for (int p = 0; p <= p_max; ++p) {
      const std::size_t dim = eng.block(p, w).lifts.size();
      const std::size_t in = p > 0 ? rank_out[p - 1] : 0;
      const std::size_t h = dim - rank_out[p] - in;
      contrib[w][p] = h;
      t.betti[p] += static_cast<int>(h);
      t.blocks.push_back(BlockReport{p, w, dim, rank_out[p], h});
    }
  }
  t.stabilized = true;
  for (int w = std::max(0, W - 1); w <= W; ++w)
    for (int p = 0; p <= p_max; ++p)
      if (contrib[w][p] != 0) t.stabilized = false;
  if (!t.stabilized)
    t.warning = "weights " + std::to_string(std::max(0, W - 1)) + ".." + std::to_string(W) +
                " still contribute; raise the weight bound";
  return t;
}

std::vector<int> simplicial_betti(const SimplicialComplex& K) {
  if (K.empty()) throw InputError("empty complex");
  const int top = K.dim();
  std::vector<std::vector<Simplex>> cells(top + 1);
  std::vector<std::map<Simplex, std::size_t>> pos(top + 1);
  for (int k = 0; k <= top; ++k) {
    cells[k] = K.simplices_of_dim(k);
    for (std::size_t i = 0; i < cells[k].size(); ++i) pos[k][cells[k][i]] = i;
  }
  // rank of δ_k : C^k -> C^{k+1}
  std::vector<std::size_t> rk(top + 1, 0);
  for (int k = 0; k < top; ++k) {
    SparseMatrix d(cells[k + 1].size(), cells[k].size());
    for (std::size_t r = 0; r < cells[k + 1].size(); ++r) {
      const Simplex& t = cells[k + 1][r];
      for (std::size_t i = 0; i < t.size(); ++i)
        d.add(r, pos[k].at(t.without(i)), Rational(i % 2 == 0 ? 1 : -1));
    }
    rk[k] = linalg::rank(d);
  }
  std::vector<int> out(top + 1);
  for (int k = 0; k <= top; ++k)
    out[k] = static_cast<int>(cells[k].size() - rk[k] - (k > 0 ? rk[k - 1] : 0));
  return out;
}

std::vector<int> kunneth_oracle(const SimplicialComplex& K, const LieAlgebra& g) {
  validate(g);
  auto a = simplicial_betti(K);
  auto b = ce_cohomology(g);
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  while (out.size() > a.size() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace psforms
