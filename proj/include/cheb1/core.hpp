#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cheb1/errors.hpp"

namespace cheb1 {

/// Dense row-major real matrix with both sizes at least 2 and finite entries.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ < 2 || cols_ < 2) {
      throw ShapeError("matrix must be at least 2x2, got " + std::to_string(rows_) + "x" +
                       std::to_string(cols_));
    }
    if (data_.size() != rows_ * cols_) {
      throw DimensionMismatch("entry count does not match matrix shape");
    }
    for (double x : data_) {
      if (!std::isfinite(x)) throw ValueError("matrix entries must be finite");
    }
  }

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::size_t m = rows.size();
    std::size_t n = m ? rows.begin()->size() : 0;
    std::vector<double> data;
    data.reserve(m * n);
    for (const auto& r : rows) {
      if (r.size() != n) throw DimensionMismatch("ragged row in matrix literal");
      data.insert(data.end(), r.begin(), r.end());
    }
    return DenseMatrix(m, n, std::move(data));
  }

  static DenseMatrix identity(std::size_t n) {
    std::vector<double> data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
    return DenseMatrix(n, n, std::move(data));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_.data() + i * cols_, cols_);
  }

  std::vector<double> col(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = data_[i * cols_ + j];
    return c;
  }

  DenseMatrix transposed() const {
    std::vector<double> t(rows_ * cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = data_[i * cols_ + j];
    return DenseMatrix(cols_, rows_, std::move(t));
  }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Largest absolute entry of the matrix.
inline double cheb_norm(const DenseMatrix& a) {
  double best = 0.0;
  for (double x : a.data()) best = std::max(best, std::abs(x));
  return best;
}

inline double inf_norm(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

/// Real vector with every component nonzero (and finite, length >= 2).
class ChebVector {
 public:
  explicit ChebVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw NotChebyshev("vector must have length >= 2");
    for (double x : values_) {
      if (!std::isfinite(x)) throw NotChebyshev("vector components must be finite");
      if (x == 0.0) throw NotChebyshev("vector components must be nonzero");
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

  double inf_norm() const { return cheb1::inf_norm(values_); }

  double min_abs() const {
    double best = std::numeric_limits<double>::infinity();
    for (double x : values_) best = std::min(best, std::abs(x));
    return best;
  }

  /// Ratio of the largest to the smallest absolute component; always >= 1.
  double amplitude() const { return inf_norm() / min_abs(); }

  bool operator==(const ChebVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Vector with entries in {-1,+1}.
class SignVector {
 public:
  explicit SignVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
    for (auto s : signs_) {
      if (s != 1 && s != -1) throw ValueError("sign entries must be -1 or +1");
    }
  }

  static SignVector from_reals(std::span<const double> v) {
    std::vector<std::int8_t> s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0.0) throw NotChebyshev("cannot take signs of a vector with zero components");
      s[i] = v[i] > 0.0 ? 1 : -1;
    }
    return SignVector(std::move(s));
  }

  /// Bit j of `mask` set means component j is +1.
  static SignVector from_mask(std::uint64_t mask, std::size_t n) {
    if (n > 64) throw TooLarge("mask encoding supports at most 64 components");
    std::vector<std::int8_t> s(n);
    for (std::size_t j = 0; j < n; ++j) s[j] = (mask >> j) & 1u ? 1 : -1;
    return SignVector(std::move(s));
  }

  std::uint64_t to_mask() const {
    if (signs_.size() > 64) throw TooLarge("mask encoding supports at most 64 components");
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < signs_.size(); ++j)
      if (signs_[j] > 0) m |= std::uint64_t{1} << j;
    return m;
  }

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }

  SignVector negated() const {
    std::vector<std::int8_t> s(signs_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::int8_t>(-signs_[i]);
    return SignVector(std::move(s));
  }

  std::vector<double> as_reals() const {
    std::vector<double> v(signs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = signs_[i];
    return v;
  }

  std::string to_string() const {
    std::string s(signs_.size(), '+');
    for (std::size_t i = 0; i < signs_.size(); ++i)
      if (signs_[i] < 0) s[i] = '-';
    return s;
  }

  bool operator==(const SignVector&) const = default;

 private:
  std::vector<std::int8_t> signs_;
};

namespace detail {

// One pass for the largest |a_i|, one for the runner-up.
struct AbsTop2 {
  std::size_t argmax = 0;
  double max = -1.0;
  double second = -1.0;
};

inline AbsTop2 abs_top2(std::span<const double> a) {
  AbsTop2 r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double x = std::abs(a[i]);
    if (x > r.max) {
      r.second = r.max;
      r.max = x;
      r.argmax = i;
    } else if (x > r.second) {
      r.second = x;
    }
  }
  return r;
}

inline bool is_tied(const AbsTop2& t, double tie_tol) {
  if (tie_tol <= 0.0) return t.second == t.max;
  return t.second >= t.max * (1.0 - tie_tol);
}

}  // namespace detail

/// True iff the maximal absolute value is attained at exactly one index.
/// With tie_tol > 0, near-ties within a relative factor also count as ties.
inline bool is_alternance_free(std::span<const double> a, double tie_tol = 0.0) {
  if (a.size() < 2) return a.size() == 1;
  return !detail::is_tied(detail::abs_top2(a), tie_tol);
}

/// Index of the unique maximal-absolute-value entry (0-based).
inline std::size_t argmax_abs(std::span<const double> a, double tie_tol = 0.0) {
  auto t = detail::abs_top2(a);
  if (a.size() >= 2 && detail::is_tied(t, tie_tol)) {
    throw AlternanceTie("two entries attain the maximal absolute value");
  }
  return t.argmax;
}

/// Gap between the largest and second-largest absolute values; positive
/// exactly when the vector is alternance-free.
inline double peak_gap(std::span<const double> a, double tie_tol = 0.0) {
  auto t = detail::abs_top2(a);
  if (a.size() >= 2 && detail::is_tied(t, tie_tol)) {
    throw AlternanceTie("two entries attain the maximal absolute value");
  }
  return t.max - std::max(t.second, 0.0);
}

/// Result of checking whether every row and column has a unique peak.
struct PcReport {
  bool pc = false;
  std::vector<std::size_t> offending_rows;  // 0-based
  std::vector<std::size_t> offending_cols;  // 0-based
};

inline PcReport preserves_chebyshev(const DenseMatrix& a, double tie_tol = 0.0) {
  PcReport rep;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!is_alternance_free(a.row(i), tie_tol)) rep.offending_rows.push_back(i);
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto c = a.col(j);
    if (!is_alternance_free(c, tie_tol)) rep.offending_cols.push_back(j);
  }
  rep.pc = rep.offending_rows.empty() && rep.offending_cols.empty();
  return rep;
}

/// Peak positions and gaps of a matrix with unique row and column maxima.
///
/// row_argmax[i] is the column holding the largest |entry| of row i and
/// col_argmax[j] the row holding the largest |entry| of column j; the
/// *_max_sign arrays carry the signs of those entries. delta_row/delta_col
/// are the smallest peak gaps over rows/columns.
struct MatrixProfile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_argmax;
  std::vector<std::size_t> col_argmax;
  std::vector<int> row_max_sign;
  std::vector<int> col_max_sign;
  double delta_row = 0.0;
  double delta_col = 0.0;
  double cheb_norm = 0.0;
};

inline MatrixProfile make_profile(const DenseMatrix& a) {
  auto rep = preserves_chebyshev(a);
  if (!rep.pc) {
    throw NotPC("matrix has a row or column with tied maxima (" +
                std::to_string(rep.offending_rows.size()) + " rows, " +
                std::to_string(rep.offending_cols.size()) + " columns)");
  }
  MatrixProfile p;
  p.rows = a.rows();
  p.cols = a.cols();
  p.row_argmax.resize(p.rows);
  p.row_max_sign.resize(p.rows);
  p.col_argmax.resize(p.cols);
  p.col_max_sign.resize(p.cols);
  p.delta_row = std::numeric_limits<double>::infinity();
  p.delta_col = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.rows; ++i) {
    auto t = detail::abs_top2(a.row(i));
    p.row_argmax[i] = t.argmax;
    p.row_max_sign[i] = a(i, t.argmax) > 0.0 ? 1 : -1;
    p.delta_row = std::min(p.delta_row, t.max - t.second);
    p.cheb_norm = std::max(p.cheb_norm, t.max);
  }
  for (std::size_t j = 0; j < p.cols; ++j) {
    auto c = a.col(j);
    auto t = detail::abs_top2(c);
    p.col_argmax[j] = t.argmax;
    p.col_max_sign[j] = c[t.argmax] > 0.0 ? 1 : -1;
    p.delta_col = std::min(p.delta_col, t.max - t.second);
  }
  return p;
}

}  // namespace cheb1
