// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "spo/scalar.hpp"

namespace spo {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline Mat zero_mat(std::size_t r, std::size_t c) { return Mat(r, Vec(c)); }

inline Mat identity_mat(std::size_t n) {
  Mat m = zero_mat(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
  Mat out = zero_mat(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (!b[t][j].is_zero()) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

namespace detail {
// Pick a pivot row in column c at or below row r, preferring single-term entries.
inline std::optional<std::size_t> pick_pivot(const Mat& m, std::size_t r, std::size_t c) {
  std::optional<std::size_t> any;
  for (std::size_t i = r; i < m.size(); ++i) {
    if (m[i][c].is_zero()) continue;
    if (m[i][c].is_monomial()) return i;
    if (!any) any = i;
  }
  return any;
}
}  // namespace detail

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> piv;
  if (m.empty()) return piv;
  std::size_t cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    auto p = detail::pick_pivot(m, r, c);
    if (!p) continue;
    std::swap(m[r], m[*p]);
    Scalar inv = Scalar(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j)
      if (!m[r][j].is_zero()) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::size_t rank(Mat m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<Vec> nullspace(Mat m, std::size_t cols) {
  if (m.empty()) {
    std::vector<Vec> out;
    for (std::size_t j = 0; j < cols; ++j) {
      Vec v(cols);
      v[j] = Scalar(1);
      out.push_back(v);
    }
    return out;
  }
  auto piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(cols);
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

/// Solves a x = b; nullopt if inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Mat aug = a;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug);
  Vec x(cols);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == cols) return std::nullopt;
    x[piv[r]] = aug[r][cols];
  }
  return x;
}

inline Scalar determinant(Mat m) {
  std::size_t n = m.size();
  Scalar det(1);
  for (std::size_t k = 0; k < n; ++k) {
    auto p = detail::pick_pivot(m, k, k);
    if (!p) return Scalar();
    if (*p != k) {
      std::swap(m[k], m[*p]);
      det = -det;
    }
    det *= m[k][k];
    Scalar inv = Scalar(1) / m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      Scalar f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j)
        if (!m[k][j].is_zero()) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

/// Leading principal minors d_1, ..., d_n.
inline std::vector<Scalar> leading_minors(const Mat& m) {
  std::vector<Scalar> out;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    Mat sub(k, Vec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
    out.push_back(determinant(std::move(sub)));
  }
  return out;
}

/// Inverse of a square matrix; throws ScalarError when singular.
inline Mat inverse(const Mat& a) {
  std::size_t n = a.size();
  Mat aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = Scalar(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] >= n) throw ScalarError("singular matrix");
  Mat out(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

inline Vec mat_vec(const Mat& a, const Vec& v) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!a[i][j].is_zero() && !v[j].is_zero()) out[i] += a[i][j] * v[j];
  return out;
}

/**
 * Incrementally built basis of a subspace, kept in reduced echelon form, with
 * coordinates relative to the vectors that were accepted.
 */
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t dim) : dim_(dim) {}

  /// Adds v; returns true if it enlarged the span.
  bool add(const Vec& v) {
    Vec r = v;
    Vec comb(count_ + 1);
    comb[count_] = Scalar(1);
    reduce_with_comb(r, comb);
    std::size_t c = 0;
    while (c < dim_ && r[c].is_zero()) ++c;
    if (c == dim_) return false;
    Scalar inv = Scalar(1) / r[c];
    for (auto& x : r) x *= inv;
    for (auto& x : comb) x *= inv;
    for (auto& row : rows_) row.comb.resize(count_ + 1);
    // keep fully reduced
    for (auto& row : rows_) {
      if (row.v[c].is_zero()) continue;
      Scalar f = row.v[c];
      for (std::size_t j = 0; j < dim_; ++j)
        if (!r[j].is_zero()) row.v[j] -= f * r[j];
      for (std::size_t j = 0; j < comb.size(); ++j)
        if (!comb[j].is_zero()) row.comb[j] -= f * comb[j];
    }
    rows_.push_back({c, std::move(r), std::move(comb)});
    ++count_;
    return true;
  }

  [[nodiscard]] std::size_t size() const { return count_; }

  [[nodiscard]] bool contains(const Vec& v) const {
    Vec r = v;
    Vec comb(count_);
    reduce_with_comb(r, comb);
    return is_zero_vec(r);
  }

  /// Coordinates of v in terms of accepted vectors (in order of acceptance).
  [[nodiscard]] std::optional<Vec> coords(const Vec& v) const {
    Vec r = v;
    Vec comb(count_);
    reduce_with_comb(r, comb);
    if (!is_zero_vec(r)) return std::nullopt;
    for (auto& x : comb) x = -x;
    return comb;
  }

 private:
  struct Row {
    std::size_t pivot;
    Vec v;
    Vec comb;
  };
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<Row> rows_;

  void reduce_with_comb(Vec& r, Vec& comb) const {
    for (const auto& row : rows_) {
      if (r[row.pivot].is_zero()) continue;
      Scalar f = r[row.pivot];
      for (std::size_t j = 0; j < dim_; ++j)
        if (!row.v[j].is_zero()) r[j] -= f * row.v[j];
      for (std::size_t j = 0; j < row.comb.size(); ++j)
        if (!row.comb[j].is_zero()) comb[j] -= f * row.comb[j];
    }
  }
};

}  // namespace spo
