#include "psforms/linalg.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace psforms::linalg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_.size() || c >= cols_) throw std::out_of_range("SparseMatrix::add");
  if (value == 0) return;
  auto [it, inserted] = rows_[r].try_emplace(c, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) rows_[r].erase(it);
  }
}

void SparseMatrix::append_row(const SparseVector& row) {
  rows_.emplace_back();
  for (const auto& [c, v] : row) add(rows_.size() - 1, c, v);
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = rows_.at(r).find(c);
  return it == rows_[r].end() ? Rational(0) : it->second;
}

SparseVector SparseMatrix::row(std::size_t r) const {
  return SparseVector(rows_.at(r).begin(), rows_.at(r).end());
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace(r, v);
  }
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows()) throw std::invalid_argument("SparseMatrix product: shape mismatch");
  SparseMatrix out(rows_.size(), rhs.cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [k, a] : rows_[r]) {
      for (const auto& [c, b] : rhs.rows_[k]) out.add(r, c, a * b);
    }
  }
  return out;
}

SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.add(r, c, rows[r][c]);
  }
  return m;
}

std::vector<std::size_t> Echelon::free_cols() const {
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) out.push_back(c);
  }
  return out;
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

IntRow to_primitive(const std::map<std::size_t, Rational>& row) {
  Integer den = 1;
  for (const auto& [c, v] : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& [c, v] : row) {
    Integer x = v.get_num() * (den / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.emplace_back(c, std::move(x));
  }
  if (g > 1) {
    for (auto& [c, x] : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

void make_primitive(IntRow& row) {
  Integer g = 0;
  for (const auto& [c, x] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [c, x] : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

const Integer* entry(const IntRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// target := (p/g) * target - (a/g) * pivot_row, where a = target[col], p = pivot_row[col].
void eliminate(IntRow& target, const IntRow& pivot_row, std::size_t col) {
  const Integer& p = *entry(pivot_row, col);
  const Integer a = *entry(target, col);
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
  const Integer ps = p / g;
  const Integer as = a / g;
  IntRow out;
  out.reserve(target.size() + pivot_row.size());
  auto i = target.begin();
  auto j = pivot_row.begin();
  Integer x;
  while (i != target.end() || j != pivot_row.end()) {
    if (j == pivot_row.end() || (i != target.end() && i->first < j->first)) {
      out.emplace_back(i->first, ps * i->second);
      ++i;
    } else if (i == target.end() || j->first < i->first) {
      out.emplace_back(j->first, -as * j->second);
      ++j;
    } else {
      x = ps * i->second - as * j->second;
      if (x != 0) out.emplace_back(i->first, x);
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  target = std::move(out);
}

// Forward elimination with column bookkeeping for pivot selection.
class Eliminator {
 public:
  Eliminator(const SparseMatrix& m, const EliminationOptions& opts)
      : opts_(opts), cols_(m.cols()), col_rows_(m.cols()) {
    if (!opts_.column_class.empty() && opts_.column_class.size() != cols_) {
      throw std::invalid_argument("column_class size mismatch");
    }
    for (std::size_t c = 0; c < cols_; ++c) {
      const int k = class_of(c);
      if (k < 0) throw std::invalid_argument("negative column class");
      if (static_cast<std::size_t>(k) >= by_count_.size()) {
        by_count_.resize(k + 1);
        by_index_.resize(k + 1);
      }
    }
    if (by_count_.empty()) {
      by_count_.resize(1);
      by_index_.resize(1);
    }
    rows_.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto sv = m.row(r);
      std::map<std::size_t, Rational> mp(sv.begin(), sv.end());
      rows_.push_back(to_primitive(mp));
      for (const auto& [c, x] : rows_.back()) col_rows_[c].insert(r);
    }
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!col_rows_[c].empty()) index_col(c);
    }
  }

  void run() {
    while (true) {
      auto [r, c] = choose_pivot();
      if (r == npos) break;
      pivot_rows_.push_back(r);
      pivot_cols_.push_back(c);
      detach(r);
      const std::vector<std::size_t> targets(col_rows_[c].begin(), col_rows_[c].end());
      for (std::size_t i : targets) {
        detach(i);
        eliminate(rows_[i], rows_[r], c);
        attach(i);
      }
    }
  }

  std::size_t rank() const { return pivot_cols_.size(); }

  Echelon reduce() {
    const std::size_t k = pivot_rows_.size();
    for (std::size_t b = k; b-- > 0;) {
      const std::size_t col = pivot_cols_[b];
      const IntRow& prow = rows_[pivot_rows_[b]];
      for (std::size_t a = 0; a < b; ++a) {
        IntRow& target = rows_[pivot_rows_[a]];
        if (entry(target, col)) eliminate(target, prow, col);
      }
    }
    Echelon e;
    e.cols = cols_;
    e.pivot_cols = pivot_cols_;
    e.rows.reserve(k);
    for (std::size_t a = 0; a < k; ++a) {
      const IntRow& row = rows_[pivot_rows_[a]];
      const Integer p = *entry(row, pivot_cols_[a]);
      SparseVector sv;
      sv.reserve(row.size());
      for (const auto& [c, x] : row) {
        Rational q(x, p);
        q.canonicalize();
        sv.emplace_back(c, std::move(q));
      }
      e.rows.push_back(std::move(sv));
    }
    return e;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  int class_of(std::size_t c) const { return opts_.column_class.empty() ? 0 : opts_.column_class[c]; }

  void index_col(std::size_t c) {
    by_count_[class_of(c)].emplace(col_rows_[c].size(), c);
    by_index_[class_of(c)].insert(c);
  }
  void unindex_col(std::size_t c) {
    by_count_[class_of(c)].erase({col_rows_[c].size(), c});
    by_index_[class_of(c)].erase(c);
  }

  void detach(std::size_t r) {
    for (const auto& [c, x] : rows_[r]) {
      unindex_col(c);
      col_rows_[c].erase(r);
      if (!col_rows_[c].empty()) index_col(c);
    }
  }
  void attach(std::size_t r) {
    for (const auto& [c, x] : rows_[r]) {
      if (!col_rows_[c].empty()) unindex_col(c);
      col_rows_[c].insert(r);
      index_col(c);
    }
  }

  std::pair<std::size_t, std::size_t> choose_pivot() const {
    for (std::size_t k = 0; k < by_count_.size(); ++k) {
      if (by_index_[k].empty()) continue;
      if (opts_.rule == PivotRule::natural) {
        const std::size_t c = *by_index_[k].begin();
        return {*col_rows_[c].begin(), c};
      }
      // Markowitz: examine the few sparsest columns of this class.
      constexpr int kColumnsExamined = 4;
      std::size_t best_r = npos, best_c = npos;
      unsigned long best_cost = std::numeric_limits<unsigned long>::max();
      int seen = 0;
      for (auto it = by_count_[k].begin(); it != by_count_[k].end() && seen < kColumnsExamined;
           ++it, ++seen) {
        const auto [count, c] = *it;
        for (std::size_t r : col_rows_[c]) {
          const unsigned long cost = (rows_[r].size() - 1) * (count - 1);
          if (cost < best_cost || (cost == best_cost && (c < best_c || (c == best_c && r < best_r)))) {
            best_cost = cost;
            best_r = r;
            best_c = c;
          }
        }
        if (best_cost == 0) break;
      }
      return {best_r, best_c};
    }
    return {npos, npos};
  }

  EliminationOptions opts_;
  std::size_t cols_;
  std::vector<IntRow> rows_;
  std::vector<std::set<std::size_t>> col_rows_;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> by_count_;
  std::vector<std::set<std::size_t>> by_index_;
  std::vector<std::size_t> pivot_rows_;
  std::vector<std::size_t> pivot_cols_;
};

}  // namespace

std::size_t rank(const SparseMatrix& m, PivotRule rule) {
  EliminationOptions opts;
  opts.rule = rule;
  Eliminator e(m, opts);
  e.run();
  return e.rank();
}

Echelon row_reduce(const SparseMatrix& m, const EliminationOptions& opts) {
  Eliminator e(m, opts);
  e.run();
  return e.reduce();
}

std::vector<SparseVector> null_space(const Echelon& e) {
  return null_space(e, [](std::size_t) { return true; });
}

}  // namespace psforms::linalg
