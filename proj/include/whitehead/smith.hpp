#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "whitehead/errors.hpp"

namespace whitehead {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Sparse integer matrix in coordinate form. Duplicate coordinates add up.
class IntegerMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t value;
  };

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, std::int64_t v) {
    if (r >= rows_ || c >= cols_)
      throw domain_error("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                         ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    if (v != 0) entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), v});
    compressed_ = false;
  }

  /// Sorted by (row, col), duplicates merged, zeros dropped.
  const std::vector<Entry>& entries() const {
    compress();
    return entries_;
  }

  std::size_t nonzeros() const { return entries().size(); }

  std::int64_t at(std::size_t r, std::size_t c) const {
    const auto& e = entries();
    auto it = std::lower_bound(e.begin(), e.end(), std::pair{r, c}, [](const Entry& x, const auto& key) {
      return std::pair<std::size_t, std::size_t>{x.row, x.col} < key;
    });
    if (it != e.end() && it->row == r && it->col == c) return it->value;
    return 0;
  }

  bool is_zero() const { return entries().empty(); }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw domain_error("matrix product: inner dimensions differ");
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> brows(b.rows_);
    for (const auto& e : b.entries()) brows[e.row].emplace_back(e.col, e.value);
    IntegerMatrix out(a.rows_, b.cols_);
    for (const auto& e : a.entries())
      for (auto [c, v] : brows[e.col]) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(e.value, v, &prod)) throw std::overflow_error("matrix product overflow");
        out.add(e.row, c, prod);
      }
    out.compress();
    return out;
  }

 private:
  void compress() const {
    if (compressed_) return;
    std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) {
      return x.row != y.row ? x.row < y.row : x.col < y.col;
    });
    std::vector<Entry> merged;
    for (const auto& e : entries_) {
      if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
        if (__builtin_add_overflow(merged.back().value, e.value, &merged.back().value))
          throw std::overflow_error("matrix entry overflow");
      } else {
        merged.push_back(e);
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.value == 0; });
    entries_ = std::move(merged);
    compressed_ = true;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  mutable std::vector<Entry> entries_;
  mutable bool compressed_ = true;
};

/// int64 that throws std::overflow_error instead of wrapping.
struct CheckedInt {
  std::int64_t v = 0;

  CheckedInt() = default;
  CheckedInt(std::int64_t x) : v(x) {}  // NOLINT(implicit)

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw std::overflow_error("int64 overflow");
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw std::overflow_error("int64 overflow");
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw std::overflow_error("int64 overflow");
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw std::overflow_error("int64 overflow");
    return a.v / b.v;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  CheckedInt operator-() const { return CheckedInt{0} - *this; }
  friend bool operator==(CheckedInt a, CheckedInt b) = default;
  friend auto operator<=>(CheckedInt a, CheckedInt b) = default;
};

namespace detail {

inline CheckedInt abs_value(CheckedInt x) { return x.v < 0 ? -x : x; }
inline BigInt abs_value(const BigInt& x) { return boost::multiprecision::abs(x); }
inline BigRational abs_value(const BigRational& x) { return boost::multiprecision::abs(x); }

inline bool is_zero(CheckedInt x) { return x.v == 0; }
template <class T>
bool is_zero(const T& x) { return x == 0; }

inline bool is_unit(CheckedInt x) { return x.v == 1 || x.v == -1; }
template <class T>
bool is_unit(const T& x) { return x == 1 || x == -1; }

inline BigInt to_big(CheckedInt x) { return BigInt(x.v); }
inline BigInt to_big(const BigInt& x) { return x; }

inline BigInt gcd_big(BigInt a, BigInt b) {
  a = boost::multiprecision::abs(a);
  b = boost::multiprecision::abs(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

template <class T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

/// Sparse Gaussian elimination. Over the integers only unit pivots are used,
/// so every step splits off an invariant factor 1 and leaves an equivalent
/// Schur complement. Over a field every nonzero is a pivot.
template <class T>
struct SparseEliminator {
  std::vector<SparseRow<T>> rows;
  std::vector<std::set<std::uint32_t>> col_rows;
  std::vector<char> row_alive;
  std::size_t pivots = 0;

  SparseEliminator(const IntegerMatrix& m) : rows(m.rows()), col_rows(m.cols()), row_alive(m.rows(), 1) {
    for (const auto& e : m.entries()) {
      rows[e.row].emplace_back(e.col, T(e.value));
      col_rows[e.col].insert(e.row);
    }
  }

  const T* find(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& x, std::uint32_t key) { return x.first < key; });
    if (it != row.end() && it->first == c) return &it->second;
    return nullptr;
  }

  // row_t -= factor * row_r, keeping the column index in sync.
  void axpy(std::uint32_t t, const T& factor, std::uint32_t r) {
    const auto& src = rows[r];
    auto& dst = rows[t];
    SparseRow<T> out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        T v = T(0) - factor * src[j].second;
        col_rows[src[j].first].insert(t);
        out.emplace_back(src[j].first, std::move(v));
        ++j;
      } else {
        T v = dst[i].second - factor * src[j].second;
        if (is_zero(v)) {
          col_rows[dst[i].first].erase(t);
        } else {
          out.emplace_back(dst[i].first, std::move(v));
        }
        ++i;
        ++j;
      }
    }
    dst = std::move(out);
  }

  void eliminate(std::uint32_t r, std::uint32_t c) {
    const T pivot = *find(r, c);
    std::vector<std::uint32_t> targets;
    for (std::uint32_t t : col_rows[c])
      if (t != r) targets.push_back(t);
    for (std::uint32_t t : targets) {
      T factor = *find(t, c) / pivot;
      axpy(t, factor, r);
    }
    for (const auto& [col, v] : rows[r]) col_rows[col].erase(r);
    rows[r].clear();
    row_alive[r] = 0;
    ++pivots;
  }

  /// Markowitz-style choice: among admissible pivots prefer the smallest
  /// (row length - 1) * (column length - 1).
  void run(bool field) {
    for (;;) {
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      std::uint32_t best_r = 0;
      std::uint32_t best_c = 0;
      for (std::uint32_t c = 0; c < col_rows.size(); ++c) {
        const auto& cr = col_rows[c];
        if (cr.empty()) continue;
        for (std::uint32_t r : cr) {
          const T& v = *find(r, c);
          if (!field && !is_unit(v)) continue;
          std::size_t cost = (rows[r].size() - 1) * (cr.size() - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best_r = r;
            best_c = c;
            if (cost == 0) break;
          }
        }
        if (best_cost == 0) break;
      }
      if (best_cost == std::numeric_limits<std::size_t>::max()) return;
      eliminate(best_r, best_c);
    }
  }
};

/// Dense Smith normal form on what the sparse phase left over. Returns the
/// nonzero diagonal, with the divisibility chain restored.
template <class T>
std::vector<BigInt> dense_invariant_factors(std::vector<std::vector<T>> a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < m && t < n) {
    // Pivot: entry of least absolute value in the trailing block.
    std::size_t pr = m;
    std::size_t pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!is_zero(a[i][j]) && (pr == m || abs_value(a[i][j]) < abs_value(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    // One reduction pass of row t and column t. Any nonzero remainder is
    // smaller than the pivot and becomes the next pivot candidate, so the
    // pivot is always re-chosen globally; this keeps entries small.
    bool clean = true;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (is_zero(a[i][t])) continue;
      T q = a[i][t] / a[t][t];
      if (!is_zero(q))
        for (std::size_t j = t; j < n; ++j)
          if (!is_zero(a[t][j])) a[i][j] = a[i][j] - q * a[t][j];
      clean = clean && is_zero(a[i][t]);
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (is_zero(a[t][j])) continue;
      T q = a[t][j] / a[t][t];
      if (!is_zero(q))
        for (std::size_t i = t; i < m; ++i)
          if (!is_zero(a[i][t])) a[i][j] = a[i][j] - q * a[i][t];
      clean = clean && is_zero(a[t][j]);
    }
    if (!clean) continue;
    diag.push_back(abs_value(to_big(a[t][t])));
    ++t;
  }
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      if (diag[j] % diag[i] == 0) continue;
      BigInt g = gcd_big(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  std::sort(diag.begin(), diag.end());
  return diag;
}

template <class T>
std::vector<BigInt> invariant_factors_with(const IntegerMatrix& m) {
  SparseEliminator<T> elim(m);
  elim.run(false);
  std::vector<BigInt> out(elim.pivots, BigInt(1));
  std::vector<std::uint32_t> live_rows;
  std::vector<std::uint32_t> col_pos(m.cols(), std::numeric_limits<std::uint32_t>::max());
  std::uint32_t ncols = 0;
  for (std::uint32_t r = 0; r < elim.rows.size(); ++r) {
    if (elim.rows[r].empty()) continue;
    live_rows.push_back(r);
    for (const auto& [c, v] : elim.rows[r])
      if (col_pos[c] == std::numeric_limits<std::uint32_t>::max()) col_pos[c] = ncols++;
  }
  if (live_rows.empty()) return out;
  std::vector<std::vector<T>> dense(live_rows.size(), std::vector<T>(ncols, T(0)));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : elim.rows[live_rows[i]]) dense[i][col_pos[c]] = v;
  auto rest = dense_invariant_factors(std::move(dense));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace detail

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix. Works in
/// checked int64 and redoes the computation in arbitrary precision if any
/// intermediate value overflows.
inline std::vector<BigInt> invariant_factors(const IntegerMatrix& m) {
  try {
    return detail::invariant_factors_with<CheckedInt>(m);
  } catch (const std::overflow_error&) {
    return detail::invariant_factors_with<BigInt>(m);
  }
}

/// Rank over Q by exact rational elimination.
inline std::size_t rational_rank(const IntegerMatrix& m) {
  detail::SparseEliminator<BigRational> elim(m);
  elim.run(true);
  return elim.pivots;
}

}  // namespace whitehead
