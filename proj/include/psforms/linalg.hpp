#pragma once

// Exact sparse linear algebra over the rationals.
//
// Elimination runs fraction-free: every row is scaled to a primitive integer
// row, and row updates are integer combinations followed by content removal.
// Pivots are picked by Markowitz cost (row_len - 1) * (col_count - 1), or in
// natural column order for cross-checking.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "psforms/rational.hpp"

namespace psforms::linalg {

/// Sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Accumulates `value` into entry (r, c).
  void add(std::size_t r, std::size_t c, const Rational& value);
  /// Appends a row; the vector must be sorted with indices below cols().
  void append_row(const SparseVector& row);
  Rational at(std::size_t r, std::size_t c) const;
  SparseVector row(std::size_t r) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> rows_;
};

enum class PivotRule { markowitz, natural };

struct EliminationOptions {
  PivotRule rule = PivotRule::markowitz;
  /// Optional priority class per column. Pivots are taken from the lowest
  /// class that still has nonzeros among the active rows. Empty means one
  /// class for all columns.
  std::vector<int> column_class;
};

/// Reduced row echelon form: row k has a 1 in pivot_cols[k] and zeros in
/// every other pivot column.
struct Echelon {
  std::size_t cols = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<SparseVector> rows;

  std::vector<std::size_t> free_cols() const;
};

std::size_t rank(const SparseMatrix& m, PivotRule rule = PivotRule::markowitz);

Echelon row_reduce(const SparseMatrix& m, const EliminationOptions& opts = {});

/// Null-space vectors attached to the free columns of `e`, one per free
/// column, restricted to free columns for which `keep(col)` holds. Vector
/// attached to free column f has a 1 at f and 0 at every other free column.
template <typename Keep>
std::vector<SparseVector> null_space(const Echelon& e, Keep keep);

std::vector<SparseVector> null_space(const Echelon& e);

/// Dense helper for small matrices and tests.
SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

// ---------------------------------------------------------------------------

template <typename Keep>
std::vector<SparseVector> null_space(const Echelon& e, Keep keep) {
  std::vector<char> is_pivot(e.cols, 0);
  for (auto c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<long> slot(e.cols, -1);
  std::vector<SparseVector> out;
  for (std::size_t c = 0; c < e.cols; ++c) {
    if (!is_pivot[c] && keep(c)) {
      slot[c] = static_cast<long>(out.size());
      out.push_back({{c, Rational(1)}});
    }
  }
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    for (const auto& [c, v] : e.rows[k]) {
      if (c != e.pivot_cols[k] && slot[c] >= 0) out[slot[c]].emplace_back(e.pivot_cols[k], -v);
    }
  }
  for (auto& v : out) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace psforms::linalg
