// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spo/linalg.hpp"
#include "spo/rng.hpp"

namespace spo {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SVec = std::vector<std::pair<std::size_t, Scalar>>;

inline SVec to_sparse(const Vec& v) {
  SVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(i, v[i]);
  return s;
}

inline Vec unit_vec(std::size_t dim, std::size_t a) {
  Vec v(dim);
  v[a] = Scalar(1);
  return v;
}

inline Vec scale(const Scalar& c, const Vec& v) {
  Vec r(v.size());
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = c * v[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) r[i] += b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) { return add(a, scale(Scalar(-1), b)); }

inline Mat mat_add(const Mat& a, const Mat& b, const Scalar& cb = Scalar(1)) {
  Mat r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!b[i][j].is_zero()) r[i][j] += cb * b[i][j];
  return r;
}

inline Mat mat_scale(const Scalar& c, const Mat& a) {
  Mat r = zero_mat(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!a[i][j].is_zero()) r[i][j] = c * a[i][j];
  return r;
}

inline bool mat_is_zero(const Mat& a) {
  for (const auto& row : a)
    if (!is_zero_vec(row)) return false;
  return true;
}

/// ab - (-1)^{pa pb} ba.
inline Mat supercommutator(const Mat& a, unsigned pa, const Mat& b, unsigned pb) {
  return mat_add(mat_mul(a, b), mat_mul(b, a), Scalar((pa & pb) ? 1 : -1));
}

/// exp of a nilpotent matrix.
inline Mat exp_nilpotent(const Mat& x) {
  std::size_t n = x.size();
  Mat r = identity_mat(n), term = identity_mat(n);
  for (long k = 1;; ++k) {
    term = mat_scale(Scalar::rational(1, k), mat_mul(term, x));
    if (mat_is_zero(term)) return r;
    if (static_cast<std::size_t>(k) > n + 1) throw AlgebraError("matrix is not nilpotent");
    r = mat_add(r, term);
  }
}

/// X^{ST} = sum (-1)^{|j|(|i|+|j|)} X_ij E_ji; par is 0-based.
inline Mat supertranspose(const Mat& x, const std::function<unsigned(std::size_t)>& par) {
  std::size_t n = x.size();
  Mat r = zero_mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (x[i][j].is_zero()) continue;
      unsigned s = par(j) & (par(i) ^ par(j));
      r[j][i] = s ? -x[i][j] : x[i][j];
    }
  return r;
}

inline Mat mat_conj(const Mat& a) {
  Mat r = a;
  for (auto& row : r)
    for (auto& v : row) v = v.conj();
  return r;
}

inline std::vector<Scalar> flatten(const Mat& a) {
  Vec v;
  for (const auto& row : a) v.insert(v.end(), row.begin(), row.end());
  return v;
}

/// Structure-constant Lie superalgebra over a homogeneous basis.
class LieAlgebra {
 public:
  using Rule = std::function<Vec(std::size_t, std::size_t)>;

  LieAlgebra() = default;
  LieAlgebra(std::vector<std::string> names, std::vector<unsigned> parity, const Rule& rule)
      : names_(std::move(names)), parity_(std::move(parity)) {
    std::size_t d = names_.size();
    table_.assign(d, std::vector<SVec>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Vec v = rule(a, b);
        if (v.size() != d) throw AlgebraError("bracket rule returned wrong size");
        table_[a][b] = to_sparse(v);
      }
  }

  [[nodiscard]] std::size_t dim() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t a) const { return names_[a]; }
  [[nodiscard]] unsigned parity(std::size_t a) const { return parity_[a]; }
  [[nodiscard]] Vec unit(std::size_t a) const { return unit_vec(dim(), a); }
  [[nodiscard]] const SVec& structure(std::size_t a, std::size_t b) const { return table_[a][b]; }

  [[nodiscard]] Vec bracket(const Vec& x, const Vec& y) const {
    Vec r(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < dim(); ++b) {
        if (y[b].is_zero()) continue;
        Scalar c = x[a] * y[b];
        for (const auto& [k, v] : table_[a][b]) r[k] += c * v;
      }
    }
    return r;
  }

  /// Parity of a homogeneous vector; nullopt for zero or mixed vectors.
  [[nodiscard]] std::optional<unsigned> parity_of(const Vec& x) const {
    std::optional<unsigned> p;
    for (std::size_t a = 0; a < dim(); ++a) {
      if (x[a].is_zero()) continue;
      if (p && *p != parity_[a]) return std::nullopt;
      p = parity_[a];
    }
    return p;
  }

  /// Matrix of ad(x): column b is [x, e_b].
  [[nodiscard]] Mat ad(const Vec& x) const {
    Mat m = zero_mat(dim(), dim());
    for (std::size_t b = 0; b < dim(); ++b) {
      Vec col = bracket(x, unit(b));
      for (std::size_t k = 0; k < dim(); ++k) m[k][b] = col[k];
    }
    return m;
  }

  /// Random homogeneous element with small integer coefficients.
  [[nodiscard]] Vec random_homogeneous(SplitMix64& r, unsigned parity) const {
    Vec v(dim());
    for (std::size_t a = 0; a < dim(); ++a)
      if (parity_[a] == parity && r.uniform(0, 2) != 0) v[a] = Scalar(r.coeff());
    return v;
  }

 private:
  std::vector<std::string> names_;
  std::vector<unsigned> parity_;
  std::vector<std::vector<SVec>> table_;
};

/// [x,y] + (-1)^{|x||y|}[y,x] for homogeneous x, y.
inline bool supersymmetry_holds(const LieAlgebra& g, const Vec& x, unsigned px, const Vec& y, unsigned py) {
  Vec a = g.bracket(x, y), b = g.bracket(y, x);
  return is_zero_vec((px & py) ? sub(a, b) : add(a, b));
}

/// [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]] for homogeneous a, b.
inline bool jacobi_holds(const LieAlgebra& g, const Vec& a, unsigned pa, const Vec& b, unsigned pb, const Vec& c) {
  Vec lhs = g.bracket(a, g.bracket(b, c));
  Vec r1 = g.bracket(g.bracket(a, b), c);
  Vec r2 = g.bracket(b, g.bracket(a, c));
  return is_zero_vec(sub(lhs, (pa & pb) ? sub(r1, r2) : add(r1, r2)));
}

/// Checks the Jacobi identity on all basis triples; returns the number of failures.
inline std::size_t jacobi_failures_exhaustive(const LieAlgebra& g) {
  std::size_t bad = 0;
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b)
      for (std::size_t c = 0; c < g.dim(); ++c)
        if (!jacobi_holds(g, g.unit(a), g.parity(a), g.unit(b), g.parity(b), g.unit(c))) ++bad;
  return bad;
}

inline std::size_t jacobi_failures_random(const LieAlgebra& g, SplitMix64& r, int samples) {
  std::size_t bad = 0;
  for (int t = 0; t < samples; ++t) {
    unsigned pa = static_cast<unsigned>(r.uniform(0, 1)), pb = static_cast<unsigned>(r.uniform(0, 1));
    Vec a = g.random_homogeneous(r, pa), b = g.random_homogeneous(r, pb);
    Vec c = g.random_homogeneous(r, static_cast<unsigned>(r.uniform(0, 1)));
    if (!jacobi_holds(g, a, pa, b, pb, c)) ++bad;
  }
  return bad;
}

/// Eigenvalue of x under a, if x is an eigenvector.
inline std::optional<Scalar> eigenvalue(const Mat& a, const Vec& x) {
  Vec y = mat_vec(a, x);
  std::optional<Scalar> lam;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) {
      if (!y[i].is_zero()) return std::nullopt;
      continue;
    }
    Scalar l = y[i] / x[i];
    if (lam && *lam != l) return std::nullopt;
    lam = l;
  }
  return lam;
}

/**
 * spo(2m|4n, Omega) in the basis U_ij, i<j, and U_ii with |i| = 0.
 * Indices are 1-based; index i is odd when i > 2m.
 */
class Spo {
 public:
  Spo(int m, int n) : m_(m), n_(n), D_(2 * m + 4 * n) {
    if (m < 0 || n < 0 || (m == 0 && n == 0)) throw AlgebraError("invalid (m,n)");
    std::size_t D = static_cast<std::size_t>(D_);
    om_ = zero_mat(D, D);
    for (int i = 0; i < m; ++i) {
      om_[i][m + i] = Scalar(-1);
      om_[m + i][i] = Scalar(1);
    }
    int o = 2 * m;
    for (int a = 0; a < n; ++a) {
      om_[o + a][o + 3 * n + a] = Scalar(1);
      om_[o + n + a][o + 2 * n + a] = Scalar(-1);
      om_[o + 2 * n + a][o + n + a] = Scalar(-1);
      om_[o + 3 * n + a][o + a] = Scalar(1);
    }
    om_inv_ = inverse(om_);
    std::vector<std::string> names;
    std::vector<unsigned> par;
    for (int i = 1; i <= D_; ++i)
      for (int j = i; j <= D_; ++j) {
        if (i == j && parity(i)) continue;
        index_[{i, j}] = pairs_.size();
        pairs_.emplace_back(i, j);
        names.push_back("U(" + std::to_string(i) + "," + std::to_string(j) + ")");
        par.push_back(parity(i) ^ parity(j));
      }
    alg_ = LieAlgebra(std::move(names), std::move(par), [this](std::size_t a, std::size_t b) {
      auto [i, j] = pairs_[a];
      auto [k, l] = pairs_[b];
      return bracket_formula(i, j, k, l);
    });
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int D() const { return D_; }
  [[nodiscard]] std::size_t dim() const { return pairs_.size(); }
  [[nodiscard]] unsigned parity(int i) const { return i > 2 * m_ ? 1U : 0U; }
  [[nodiscard]] int sgn(int i, int j) const { return (parity(i) & parity(j)) ? -1 : 1; }
  [[nodiscard]] const Scalar& Om(int i, int j) const { return om_[i - 1][j - 1]; }
  [[nodiscard]] const Scalar& Om_inv(int i, int j) const { return om_inv_[i - 1][j - 1]; }
  [[nodiscard]] const Mat& omega_matrix() const { return om_; }
  [[nodiscard]] const LieAlgebra& alg() const { return alg_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& basis_pairs() const { return pairs_; }

  /// Index maps from J indices (1..m+2n): underline and tilde.
  [[nodiscard]] int lo(int i) const { return i <= m_ ? i + m_ : i + m_ + 2 * n_; }
  [[nodiscard]] int ti(int i) const { return i <= m_ ? i : i + m_; }

  /// U_ij for any i, j, using U_ji = (-1)^{|i||j|} U_ij and U_ii = 0 for odd i.
  [[nodiscard]] Vec U(int i, int j) const {
    Vec v(dim());
    if (i == j && parity(i)) return v;
    int s = 1;
    if (i > j) {
      std::swap(i, j);
      s = sgn(i, j);
    }
    v[index_.at({i, j})] = Scalar(s);
    return v;
  }

  /// U^{ij} = sum U_kl Omega^{ki} Omega^{lj}.
  [[nodiscard]] Vec U_raised(int i, int j) const {
    Vec v(dim());
    for (int k = 1; k <= D_; ++k) {
      if (Om_inv(k, i).is_zero()) continue;
      for (int l = 1; l <= D_; ++l)
        if (!Om_inv(l, j).is_zero()) v = add(v, scale(Om_inv(k, i) * Om_inv(l, j), U(k, l)));
    }
    return v;
  }

  /// The structure formula for [U_ij, U_kl].
  [[nodiscard]] Vec bracket_formula(int i, int j, int k, int l) const {
    Vec v(dim());
    v = add(v, scale(Om(j, k), U(i, l)));
    v = add(v, scale(Scalar(sgn(i, j)) * Om(i, k), U(j, l)));
    v = add(v, scale(Scalar(sgn(k, l)) * Om(j, l), U(i, k)));
    v = add(v, scale(Scalar(sgn(i, j) * sgn(k, l)) * Om(i, l), U(j, k)));
    return v;
  }

  /// Supermatrix sum_k Omega_jk E_ik + (-1)^{|i||j|} Omega_ik E_jk.
  [[nodiscard]] Mat matrix(int i, int j) const {
    std::size_t D = static_cast<std::size_t>(D_);
    Mat x = zero_mat(D, D);
    for (int k = 1; k <= D_; ++k) {
      if (!Om(j, k).is_zero()) x[i - 1][k - 1] += Om(j, k);
      if (!Om(i, k).is_zero()) x[j - 1][k - 1] += Scalar(sgn(i, j)) * Om(i, k);
    }
    return x;
  }

  [[nodiscard]] Mat matrix(const Vec& x) const {
    std::size_t D = static_cast<std::size_t>(D_);
    Mat r = zero_mat(D, D);
    for (std::size_t a = 0; a < dim(); ++a)
      if (!x[a].is_zero()) r = mat_add(r, matrix(pairs_[a].first, pairs_[a].second), x[a]);
    return r;
  }

  /// The sl2 triple built from U_{lo i, lo i}, U_{ti i, lo i} and U_{ti i, ti i}.
  [[nodiscard]] Vec sl2_minus() const {
    Vec v(dim());
    for (int i = 1; i <= m_; ++i) v = add(v, scale(Scalar::rational(-1, 2), U(lo(i), lo(i))));
    for (int i = m_ + 1; i <= m_ + n_; ++i) v = sub(v, U(lo(i), lo(i + n_)));
    return v;
  }
  [[nodiscard]] Vec sl2_h() const {
    Vec v(dim());
    for (int i = 1; i <= m_; ++i) v = add(v, U(ti(i), lo(i)));
    for (int i = m_ + 1; i <= m_ + n_; ++i) v = add(v, sub(U(ti(i), lo(i + n_)), U(ti(i + n_), lo(i))));
    return v;
  }
  [[nodiscard]] Vec sl2_plus() const {
    Vec v(dim());
    for (int i = 1; i <= m_; ++i) v = add(v, scale(Scalar::rational(1, 2), U(ti(i), ti(i))));
    for (int i = m_ + 1; i <= m_ + n_; ++i) v = add(v, U(ti(i), ti(i + n_)));
    return v;
  }

 private:
  int m_, n_, D_;
  Mat om_, om_inv_;
  std::vector<std::pair<int, int>> pairs_;
  std::map<std::pair<int, int>, std::size_t> index_;
  LieAlgebra alg_;
};

/// Checks the structure formula against supermatrix brackets on all basis pairs.
inline std::size_t spo_matrix_mismatches(const Spo& g) {
  std::size_t bad = 0;
  const auto& A = g.alg();
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      auto [i, j] = g.basis_pairs()[a];
      auto [k, l] = g.basis_pairs()[b];
      Mat lhs = supercommutator(g.matrix(i, j), A.parity(a), g.matrix(k, l), A.parity(b));
      if (lhs != g.matrix(A.bracket(A.unit(a), A.unit(b)))) ++bad;
    }
  return bad;
}

/// Omega-skew condition X^{ST} Omega + Omega X = 0 for a homogeneous element.
inline bool preserves_omega(const Spo& g, const Mat& x) {
  auto par = [&](std::size_t k) { return g.parity(static_cast<int>(k) + 1); };
  return mat_is_zero(mat_add(mat_mul(supertranspose(x, par), g.omega_matrix()), mat_mul(g.omega_matrix(), x)));
}

/// JOSP(m|2n, beta) with basis l_ij, i<j, and l_ii with |i| = 0.
class Josp {
 public:
  Josp(int m, int n) : m_(m), n_(n), N_(m + 2 * n) {
    if (m < 0 || n < 0 || (m == 0 && n == 0)) throw AlgebraError("invalid (m,n)");
    std::size_t N = static_cast<std::size_t>(N_);
    beta_ = zero_mat(N, N);
    for (int i = 0; i < m; ++i) beta_[i][i] = Scalar(1);
    for (int a = 0; a < n; ++a) {
      beta_[m + a][m + n + a] = Scalar(-1);
      beta_[m + n + a][m + a] = Scalar(1);
    }
    beta_inv_ = inverse(beta_);
    for (int i = 1; i <= N_; ++i)
      for (int j = i; j <= N_; ++j) {
        if (i == j && parity(i)) continue;
        index_[{i, j}] = pairs_.size();
        pairs_.emplace_back(i, j);
      }
    std::size_t d = pairs_.size();
    table_.assign(d, std::vector<SVec>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        auto [i, j] = pairs_[a];
        auto [k, l] = pairs_[b];
        table_[a][b] = to_sparse(product_formula(i, j, k, l));
      }
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int N() const { return N_; }
  [[nodiscard]] std::size_t dim() const { return pairs_.size(); }
  [[nodiscard]] unsigned parity(int i) const { return i > m_ ? 1U : 0U; }
  [[nodiscard]] int sgn(int i, int j) const { return (parity(i) & parity(j)) ? -1 : 1; }
  [[nodiscard]] const Scalar& beta(int i, int j) const { return beta_[i - 1][j - 1]; }
  [[nodiscard]] const Scalar& beta_inv(int i, int j) const { return beta_inv_[i - 1][j - 1]; }
  [[nodiscard]] const Mat& beta_matrix() const { return beta_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& basis_pairs() const { return pairs_; }
  [[nodiscard]] unsigned basis_parity(std::size_t a) const {
    return parity(pairs_[a].first) ^ parity(pairs_[a].second);
  }
  [[nodiscard]] std::string name(std::size_t a) const {
    return "l(" + std::to_string(pairs_[a].first) + "," + std::to_string(pairs_[a].second) + ")";
  }

  [[nodiscard]] Vec ell(int i, int j) const {
    Vec v(dim());
    if (i == j && parity(i)) return v;
    int s = 1;
    if (i > j) {
      std::swap(i, j);
      s = sgn(i, j);
    }
    v[index_.at({i, j})] = Scalar(s);
    return v;
  }

  /// l^{ij} = sum l_kl beta^{ki} beta^{lj}.
  [[nodiscard]] Vec ell_raised(int i, int j) const {
    Vec v(dim());
    for (int k = 1; k <= N_; ++k)
      for (int l = 1; l <= N_; ++l)
        if (!beta_inv(k, i).is_zero() && !beta_inv(l, j).is_zero())
          v = add(v, scale(beta_inv(k, i) * beta_inv(l, j), ell(k, l)));
    return v;
  }

  /// l_ij . l_kl from the structure formula.
  [[nodiscard]] Vec product_formula(int i, int j, int k, int l) const {
    Vec v(dim());
    v = add(v, scale(beta(j, k), ell(i, l)));
    v = add(v, scale(Scalar(sgn(i, j)) * beta(i, k), ell(j, l)));
    v = add(v, scale(Scalar(sgn(k, l)) * beta(j, l), ell(i, k)));
    v = add(v, scale(Scalar(sgn(i, j) * sgn(k, l)) * beta(i, l), ell(j, k)));
    return scale(Scalar::rational(1, 2), v);
  }

  [[nodiscard]] Vec product(const Vec& x, const Vec& y) const {
    Vec r(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < dim(); ++b) {
        if (y[b].is_zero()) continue;
        Scalar c = x[a] * y[b];
        for (const auto& [k, v] : table_[a][b]) r[k] += c * v;
      }
    }
    return r;
  }

  /// e = 1/2 sum l_ij beta^{ij}.
  [[nodiscard]] Vec unit() const {
    Vec v(dim());
    for (int i = 1; i <= N_; ++i)
      for (int j = 1; j <= N_; ++j)
        if (!beta_inv(i, j).is_zero()) v = add(v, scale(Scalar::rational(1, 2) * beta_inv(i, j), ell(i, j)));
    return v;
  }

  /// Matrix sum_k beta_jk E_ik + (-1)^{|i||j|} beta_ik E_jk.
  [[nodiscard]] Mat matrix(int i, int j) const {
    std::size_t N = static_cast<std::size_t>(N_);
    Mat x = zero_mat(N, N);
    for (int k = 1; k <= N_; ++k) {
      if (!beta(j, k).is_zero()) x[i - 1][k - 1] += beta(j, k);
      if (!beta(i, k).is_zero()) x[j - 1][k - 1] += Scalar(sgn(i, j)) * beta(i, k);
    }
    return x;
  }

  [[nodiscard]] Mat matrix(const Vec& x) const {
    std::size_t N = static_cast<std::size_t>(N_);
    Mat r = zero_mat(N, N);
    for (std::size_t a = 0; a < dim(); ++a)
      if (!x[a].is_zero()) r = mat_add(r, matrix(pairs_[a].first, pairs_[a].second), x[a]);
    return r;
  }

  /// Left multiplication L_x as a dim x dim matrix.
  [[nodiscard]] Mat L(const Vec& x) const {
    Mat r = zero_mat(dim(), dim());
    for (std::size_t q = 0; q < dim(); ++q) {
      Vec col = product(x, unit_vec(dim(), q));
      for (std::size_t k = 0; k < dim(); ++k) r[k][q] = col[k];
    }
    return r;
  }

 private:
  int m_, n_, N_;
  Mat beta_, beta_inv_;
  std::vector<std::pair<int, int>> pairs_;
  std::map<std::pair<int, int>, std::size_t> index_;
  std::vector<std::vector<SVec>> table_;
};

/// Compares the product formula with 1/2(xy + (-1)^{|x||y|}yx) on all basis pairs.
inline std::size_t josp_matrix_mismatches(const Josp& J) {
  std::size_t bad = 0;
  for (std::size_t a = 0; a < J.dim(); ++a)
    for (std::size_t b = 0; b < J.dim(); ++b) {
      auto [i, j] = J.basis_pairs()[a];
      auto [k, l] = J.basis_pairs()[b];
      Mat x = J.matrix(i, j), y = J.matrix(k, l);
      int s = (J.basis_parity(a) & J.basis_parity(b)) ? -1 : 1;
      Mat lhs = mat_scale(Scalar::rational(1, 2), mat_add(mat_mul(x, y), mat_mul(y, x), Scalar(s)));
      if (lhs != J.matrix(J.product(unit_vec(J.dim(), a), unit_vec(J.dim(), b)))) ++bad;
    }
  return bad;
}

/// Jordan identity on basis triples; returns the number of failures.
inline std::size_t jordan_identity_failures(const Josp& J) {
  std::size_t bad = 0, d = J.dim();
  std::vector<Mat> L(d);
  for (std::size_t a = 0; a < d; ++a) L[a] = J.L(unit_vec(d, a));
  auto sg = [&](std::size_t a, std::size_t b) { return Scalar((J.basis_parity(a) & J.basis_parity(b)) ? -1 : 1); };
  auto term = [&](std::size_t x, std::size_t y, std::size_t z) {
    Vec yz = J.product(unit_vec(d, y), unit_vec(d, z));
    return mat_scale(sg(x, z), supercommutator(L[x], J.basis_parity(x), J.L(yz),
                                               J.basis_parity(y) ^ J.basis_parity(z)));
  };
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        Mat s = mat_add(mat_add(term(x, y, z), term(y, z, x)), term(z, x, y));
        if (!mat_is_zero(s)) ++bad;
      }
  return bad;
}

/**
 * TKK(J) = J^- + istr(J) + J^+. The istr basis lists L_{b_p} for every
 * basis element b_p of J, then a selection of inner derivations [L_bp, L_bq].
 */
class Tkk {
 public:
  enum class Part { Minus, Istr, Plus };

  explicit Tkk(Josp J) : J_(std::move(J)), span_(J_.dim() * J_.dim()) {
    std::size_t d = J_.dim();
    Lb_.resize(d);
    for (std::size_t p = 0; p < d; ++p) {
      Lb_[p] = J_.L(unit_vec(d, p));
      if (!span_.add(flatten(Lb_[p]))) throw AlgebraError("left multiplications are dependent");
      ops_.push_back(Lb_[p]);
      op_par_.push_back(J_.basis_parity(p));
    }
    std::size_t target = static_cast<std::size_t>(J_.N() * J_.N());
    for (std::size_t p = 0; p < d && ops_.size() < target; ++p)
      for (std::size_t q = p; q < d && ops_.size() < target; ++q) {
        unsigned pp = J_.basis_parity(p), pq = J_.basis_parity(q);
        Mat c = supercommutator(Lb_[p], pp, Lb_[q], pq);
        if (span_.add(flatten(c))) {
          ops_.push_back(c);
          op_par_.push_back(pp ^ pq);
          inner_pairs_.emplace_back(p, q);
        }
      }
    build();
  }

  [[nodiscard]] const Josp& J() const { return J_; }
  [[nodiscard]] std::size_t d() const { return J_.dim(); }
  [[nodiscard]] std::size_t istr_dim() const { return ops_.size(); }
  [[nodiscard]] std::size_t dim() const { return 2 * d() + istr_dim(); }
  [[nodiscard]] const LieAlgebra& alg() const { return alg_; }
  [[nodiscard]] const Mat& istr_op(std::size_t k) const { return ops_[k]; }
  [[nodiscard]] unsigned istr_parity(std::size_t k) const { return op_par_[k]; }
  [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& inner_pairs() const { return inner_pairs_; }

  [[nodiscard]] Part part(std::size_t a) const {
    if (a < d()) return Part::Minus;
    if (a < d() + istr_dim()) return Part::Istr;
    return Part::Plus;
  }

  [[nodiscard]] Vec minus(const Vec& a) const { return place(a, 0); }
  [[nodiscard]] Vec plus(const Vec& a) const { return place(a, d() + istr_dim()); }
  /// L_a inside istr.
  [[nodiscard]] Vec L(const Vec& a) const { return place(a, d()); }
  /// Element of istr given as an operator on J.
  [[nodiscard]] std::optional<Vec> istr_coords(const Mat& op) const { return span_.coords(flatten(op)); }
  [[nodiscard]] Vec istr(const Mat& op) const {
    auto c = istr_coords(op);
    if (!c) throw AlgebraError("operator is not in istr(J)");
    Vec v(dim());
    for (std::size_t k = 0; k < istr_dim(); ++k) v[d() + k] = (*c)[k];
    return v;
  }
  /// [L_a, L_b] for arbitrary a, b, expanded bilinearly.
  [[nodiscard]] Vec inner(const Vec& a, const Vec& b) const {
    Mat op = zero_mat(d(), d());
    for (std::size_t p = 0; p < d(); ++p) {
      if (a[p].is_zero()) continue;
      for (std::size_t q = 0; q < d(); ++q)
        if (!b[q].is_zero())
          op = mat_add(op, supercommutator(Lb_[p], J_.basis_parity(p), Lb_[q], J_.basis_parity(q)), a[p] * b[q]);
    }
    return istr(op);
  }
  /// Components (J^-, istr, J^+) of a TKK vector.
  [[nodiscard]] Vec minus_part(const Vec& x) const { return {x.begin(), x.begin() + static_cast<long>(d())}; }
  [[nodiscard]] Vec istr_part(const Vec& x) const {
    return {x.begin() + static_cast<long>(d()), x.begin() + static_cast<long>(d() + istr_dim())};
  }
  [[nodiscard]] Vec plus_part(const Vec& x) const {
    return {x.begin() + static_cast<long>(d() + istr_dim()), x.end()};
  }

  /// Operator on J^- induced by istr element k: L_a acts as -L_a, Inn acts as itself.
  [[nodiscard]] Scalar minus_sign(std::size_t k) const { return Scalar(k < d() ? -1 : 1); }

 private:
  [[nodiscard]] Vec place(const Vec& a, std::size_t off) const {
    Vec v(dim());
    for (std::size_t p = 0; p < a.size(); ++p) v[off + p] = a[p];
    return v;
  }

  void build() {
    std::size_t D = dim(), dd = d(), di = istr_dim();
    std::vector<std::string> names;
    std::vector<unsigned> par;
    for (std::size_t p = 0; p < dd; ++p) {
      names.push_back(J_.name(p) + "^-");
      par.push_back(J_.basis_parity(p));
    }
    for (std::size_t k = 0; k < di; ++k) {
      if (k < dd) {
        names.push_back("L[" + J_.name(k) + "]");
      } else {
        auto [p, q] = inner_pairs_[k - dd];
        names.push_back("[L[" + J_.name(p) + "],L[" + J_.name(q) + "]]");
      }
      par.push_back(op_par_[k]);
    }
    for (std::size_t p = 0; p < dd; ++p) {
      names.push_back(J_.name(p) + "^+");
      par.push_back(J_.basis_parity(p));
    }
    auto col = [&](const Mat& op, std::size_t q) {
      Vec v(dd);
      for (std::size_t r = 0; r < dd; ++r) v[r] = op[r][q];
      return v;
    };
    // Brackets with the first argument in istr or J^+; the rest by supersymmetry.
    auto primary = [&](std::size_t a, std::size_t b) -> std::optional<Vec> {
      Part pa = part(a), pb = part(b);
      if (pa == Part::Istr) {
        std::size_t k = a - dd;
        if (pb == Part::Istr) {
          std::size_t l = b - dd;
          return istr(supercommutator(ops_[k], op_par_[k], ops_[l], op_par_[l]));
        }
        if (pb == Part::Plus) return plus(col(ops_[k], b - dd - di));
        return minus(scale(minus_sign(k), col(ops_[k], b)));
      }
      if (pa == Part::Plus && pb == Part::Minus) {
        std::size_t p = a - dd - di, q = b;
        Vec xu = J_.product(unit_vec(dd, p), unit_vec(dd, q));
        return add(scale(Scalar(2), L(xu)), scale(Scalar(2), inner(unit_vec(dd, p), unit_vec(dd, q))));
      }
      if (pa == pb && pa != Part::Istr) return Vec(D);
      return std::nullopt;
    };
    alg_ = LieAlgebra(std::move(names), std::move(par), [&](std::size_t a, std::size_t b) {
      if (auto v = primary(a, b)) return *v;
      auto w = primary(b, a);
      if (!w) throw AlgebraError("unreachable bracket case");
      unsigned s = alg_parity(a) & alg_parity(b);
      return scale(Scalar(s ? 1 : -1), *w);
    });
  }

  [[nodiscard]] unsigned alg_parity(std::size_t a) const {
    switch (part(a)) {
      case Part::Minus:
        return J_.basis_parity(a);
      case Part::Istr:
        return op_par_[a - d()];
      default:
        return J_.basis_parity(a - d() - istr_dim());
    }
  }

  Josp J_;
  SpanBasis span_;
  std::vector<Mat> Lb_, ops_;
  std::vector<unsigned> op_par_;
  std::vector<std::pair<std::size_t, std::size_t>> inner_pairs_;
  LieAlgebra alg_;
};

/// The isomorphism phi : TKK(J) -> g on basis elements.
class TkkToSpo {
 public:
  TkkToSpo(const Tkk& T, const Spo& g) : T_(T), g_(g) {
    if (T.J().m() != g.m() || T.J().n() != g.n()) throw AlgebraError("mismatched (m,n)");
    for (std::size_t a = 0; a < T.dim(); ++a) images_.push_back(basis_image(a));
  }

  [[nodiscard]] const Vec& image(std::size_t a) const { return images_[a]; }
  [[nodiscard]] Vec operator()(const Vec& x) const {
    Vec r(g_.dim());
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!x[a].is_zero()) r = add(r, scale(x[a], images_[a]));
    return r;
  }
  /// Columns are the images of the TKK basis.
  [[nodiscard]] Mat matrix() const {
    Mat m = zero_mat(g_.dim(), T_.dim());
    for (std::size_t a = 0; a < T_.dim(); ++a)
      for (std::size_t k = 0; k < g_.dim(); ++k) m[k][a] = images_[a][k];
    return m;
  }

  /// phi(2 L_{l_ij}).
  [[nodiscard]] Vec two_L(int i, int j) const {
    const Josp& J = T_.J();
    return add(g_.U(g_.ti(i), g_.lo(j)), scale(Scalar(J.sgn(i, j)), g_.U(g_.ti(j), g_.lo(i))));
  }

  /// phi(4 [L_{l_ij}, L_{l_rs}]).
  [[nodiscard]] Vec four_inner(int i, int j, int r, int s) const {
    const Josp& J = T_.J();
    auto A = [&](int a, int b) {
      return sub(g_.U(g_.ti(a), g_.lo(b)), scale(Scalar(J.sgn(b, a)), g_.U(g_.ti(b), g_.lo(a))));
    };
    Vec v(g_.dim());
    v = add(v, scale(J.beta(j, r), A(i, s)));
    v = add(v, scale(Scalar(J.sgn(i, j) * J.sgn(r, s)) * J.beta(i, s), A(j, r)));
    v = add(v, scale(Scalar(J.sgn(r, s)) * J.beta(j, s), A(i, r)));
    v = add(v, scale(Scalar(J.sgn(i, j)) * J.beta(i, r), A(j, s)));
    return v;
  }

 private:
  [[nodiscard]] Vec basis_image(std::size_t a) const {
    const Josp& J = T_.J();
    std::size_t d = T_.d();
    switch (T_.part(a)) {
      case Tkk::Part::Minus: {
        auto [i, j] = J.basis_pairs()[a];
        return scale(Scalar(-1), g_.U(g_.lo(i), g_.lo(j)));
      }
      case Tkk::Part::Plus: {
        auto [i, j] = J.basis_pairs()[a - d - T_.istr_dim()];
        return g_.U(g_.ti(i), g_.ti(j));
      }
      default:
        break;
    }
    std::size_t k = a - d;
    if (k < d) {
      auto [i, j] = J.basis_pairs()[k];
      return scale(Scalar::rational(1, 2), two_L(i, j));
    }
    auto [p, q] = T_.inner_pairs()[k - d];
    auto [i, j] = J.basis_pairs()[p];
    auto [r, s] = J.basis_pairs()[q];
    return scale(Scalar::rational(1, 4), four_inner(i, j, r, s));
  }

  const Tkk& T_;
  const Spo& g_;
  std::vector<Vec> images_;
};

/// Number of basis pairs (a,b) with phi([a,b]) != [phi a, phi b].
inline std::size_t phi_bracket_mismatches(const Tkk& T, const Spo& g, const TkkToSpo& phi) {
  std::size_t bad = 0;
  for (std::size_t a = 0; a < T.dim(); ++a)
    for (std::size_t b = 0; b < T.dim(); ++b) {
      Vec lhs = phi(T.alg().bracket(T.alg().unit(a), T.alg().unit(b)));
      if (lhs != g.alg().bracket(phi.image(a), phi.image(b))) ++bad;
    }
  return bad;
}

/// gl(p|q) in the basis E_ij (1-based, index (i-1)(p+q) + j-1).
inline LieAlgebra make_gl(int p, int q) {
  int N = p + q;
  auto par = [p](int i) { return i > p ? 1U : 0U; };
  std::vector<std::string> names;
  std::vector<unsigned> parity;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      names.push_back("E(" + std::to_string(i) + "," + std::to_string(j) + ")");
      parity.push_back(par(i) ^ par(j));
    }
  auto idx = [N](int i, int j) { return static_cast<std::size_t>((i - 1) * N + (j - 1)); };
  std::size_t dim = names.size();
  return LieAlgebra(std::move(names), std::move(parity), [=](std::size_t a, std::size_t b) {
    int i = static_cast<int>(a) / N + 1, j = static_cast<int>(a) % N + 1;
    int k = static_cast<int>(b) / N + 1, l = static_cast<int>(b) % N + 1;
    unsigned s = (par(i) ^ par(j)) & (par(k) ^ par(l));
    Vec v(dim);
    if (j == k) v[idx(i, l)] += Scalar(1);
    if (l == i) v[idx(k, j)] += Scalar(s ? 1 : -1);
    return v;
  });
}

/// The dictionary E_ij -> -+U_{ti i, lo j} with the sign flipped when exactly one of i, j lies in
/// {m+1..m+n}. Not a homomorphism once n > 0; kept for comparison.
inline Vec gl_to_spo_printed(const Spo& g, int i, int j) {
  auto inI = [&](int k) { return k > g.m() && k <= g.m() + g.n(); };
  Vec u = g.U(g.ti(i), g.lo(j));
  return inI(i) != inI(j) ? scale(Scalar(-1), u) : u;
}

/// Homomorphism gl(m|2n) -> g_0: E_ij -> sum_k beta_kj U_{ti i, lo k}.
inline Vec gl_to_spo(const Spo& g, int i, int j) {
  int N = g.m() + 2 * g.n();
  Vec v(g.dim());
  for (int k = 1; k <= N; ++k) {
    Scalar b;
    if (k == j && k <= g.m()) b = Scalar(1);
    else if (k > g.m() && k <= g.m() + g.n() && j == k + g.n()) b = Scalar(-1);
    else if (k > g.m() + g.n() && j == k - g.n()) b = Scalar(1);
    if (!b.is_zero()) v = add(v, scale(b, g.U(g.ti(i), g.lo(k))));
  }
  return v;
}

/// Heisenberg algebra h(2m|4n, Omega): e_1..e_D and the central Z.
inline LieAlgebra make_heisenberg(const Spo& g) {
  std::vector<std::string> names;
  std::vector<unsigned> par;
  for (int i = 1; i <= g.D(); ++i) {
    names.push_back("e" + std::to_string(i));
    par.push_back(g.parity(i));
  }
  names.emplace_back("Z");
  par.push_back(0);
  std::size_t D = static_cast<std::size_t>(g.D());
  return LieAlgebra(std::move(names), std::move(par), [&g, D](std::size_t a, std::size_t b) {
    Vec v(D + 1);
    if (a < D && b < D) v[D] = g.Om(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
    return v;
  });
}

/// L_2: span of V_ij = e_i e_j + (-1)^{|i||j|} e_j e_i, same index set as the U basis.
inline LieAlgebra make_l2(const Spo& g) {
  std::vector<std::string> names;
  std::vector<unsigned> par;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [i, j] = g.basis_pairs()[a];
    names.push_back("V(" + std::to_string(i) + "," + std::to_string(j) + ")");
    par.push_back(g.alg().parity(a));
  }
  return LieAlgebra(std::move(names), std::move(par), [&g](std::size_t a, std::size_t b) {
    auto [i, j] = g.basis_pairs()[a];
    auto [k, l] = g.basis_pairs()[b];
    return scale(Scalar(2), g.bracket_formula(i, j, k, l));
  });
}

/// k_c basis in g, in the listed order.
inline std::vector<Vec> kc_basis(const Spo& g) {
  int N = g.m() + 2 * g.n();
  auto par = [&](int i) { return i > g.m() ? 1U : 0U; };
  auto sg = [&](int i, int j) { return Scalar((par(i) & par(j)) ? -1 : 1); };
  std::vector<Vec> out;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) out.push_back(sub(g.U(g.ti(i), g.lo(j)), scale(sg(i, j), g.U(g.ti(j), g.lo(i)))));
  for (int i = g.m() + 1; i <= N; ++i) out.push_back(scale(Scalar(2), g.U(g.ti(i), g.lo(i))));
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) out.push_back(add(g.U(g.lo(i), g.lo(j)), g.U(g.ti(i), g.ti(j))));
  for (int i = 1; i <= g.m(); ++i) out.push_back(add(g.U(g.lo(i), g.lo(i)), g.U(g.ti(i), g.ti(i))));
  return out;
}

/// u(m|2n, beta') basis matrices, in the order matching kc_basis.
inline std::vector<Mat> u_basis(const Josp& J) {
  int N = J.N();
  std::size_t Ns = static_cast<std::size_t>(N);
  auto e = [&](int i, int j, const Scalar& sign) {
    Mat x = zero_mat(Ns, Ns);
    for (int k = 1; k <= N; ++k) {
      if (!J.beta(j, k).is_zero()) x[i - 1][k - 1] += J.beta(j, k);
      if (!J.beta(i, k).is_zero()) x[j - 1][k - 1] += sign * J.beta(i, k);
    }
    return x;
  };
  std::vector<Mat> out;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) out.push_back(e(i, j, Scalar(-J.sgn(i, j))));
  for (int i = J.m() + 1; i <= N; ++i) out.push_back(e(i, i, Scalar(1)));
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) out.push_back(mat_scale(Scalar::i(), e(i, j, Scalar(J.sgn(i, j)))));
  for (int i = 1; i <= J.m(); ++i) out.push_back(mat_scale(Scalar::i(), e(i, i, Scalar(1))));
  return out;
}

/// conj(X)^{ST} sigma + sigma X = 0.
inline bool in_unitary(const Josp& J, const Mat& x) {
  auto par = [&](std::size_t k) { return J.parity(static_cast<int>(k) + 1); };
  const Mat& s = J.beta_matrix();
  return mat_is_zero(mat_add(mat_mul(supertranspose(mat_conj(x), par), s), mat_mul(s, x)));
}

/// The Cayley transform on TKK coordinates.
class Cayley {
 public:
  explicit Cayley(const Tkk& T) : T_(T) {
    std::size_t D = T.dim(), d = T.d();
    const auto& A = T.alg();
    Vec e = T.J().unit();
    Mat adm = mat_scale(Scalar::rational(1, 2) * Scalar::i(), A.ad(T.minus(e)));
    Mat adp = mat_scale(Scalar::i(), A.ad(T.plus(e)));
    exp_ = mat_mul(exp_nilpotent(adm), exp_nilpotent(adp));
    piece_ = zero_mat(D, D);
    Scalar q = Scalar::rational(1, 4), iq = Scalar::i() * q, i = Scalar::i();
    for (std::size_t a = 0; a < D; ++a) {
      Vec img(D);
      switch (T.part(a)) {
        case Tkk::Part::Minus:
          img = add(add(T.minus(scale(q, unit_vec(d, a))), T.L(scale(i, unit_vec(d, a)))), T.plus(unit_vec(d, a)));
          break;
        case Tkk::Part::Plus: {
          Vec b = unit_vec(d, a - d - T.istr_dim());
          img = add(add(T.minus(scale(q, b)), T.L(scale(-i, b))), T.plus(b));
          break;
        }
        default: {
          std::size_t k = a - d;
          if (k < d) {
            Vec b = unit_vec(d, k);
            img = add(T.minus(scale(iq, b)), T.plus(scale(-i, b)));
          } else {
            img = unit_vec(D, a);
          }
        }
      }
      for (std::size_t r = 0; r < D; ++r) piece_[r][a] = img[r];
    }
    inv_ = inverse(exp_);
  }

  /// exp(i/2 ad e^-) exp(i ad e^+).
  [[nodiscard]] const Mat& exponential() const { return exp_; }
  /// The piecewise description on J^-, L_a + I, J^+.
  [[nodiscard]] const Mat& piecewise() const { return piece_; }
  [[nodiscard]] const Mat& inverse_matrix() const { return inv_; }
  [[nodiscard]] Vec operator()(const Vec& x) const { return mat_vec(exp_, x); }
  [[nodiscard]] Vec inverse_apply(const Vec& x) const { return mat_vec(inv_, x); }

  /// f^- = c^{-1}(e^-), h = c^{-1}(2 L_e), f^+ = c^{-1}(e^+).
  [[nodiscard]] Vec f_minus() const { return inverse_apply(T_.minus(T_.J().unit())); }
  [[nodiscard]] Vec h() const { return inverse_apply(T_.L(scale(Scalar(2), T_.J().unit()))); }
  [[nodiscard]] Vec f_plus() const { return inverse_apply(T_.plus(T_.J().unit())); }

 private:
  const Tkk& T_;
  Mat exp_, piece_, inv_;
};

/// k_c in TKK coordinates: (a, I, -a) for basis a and Inn basis I.
inline std::vector<Vec> kc_tkk_basis(const Tkk& T) {
  std::vector<Vec> out;
  for (std::size_t p = 0; p < T.d(); ++p) {
    Vec a = unit_vec(T.d(), p);
    out.push_back(sub(T.minus(a), T.plus(a)));
  }
  for (std::size_t k = T.d(); k < T.istr_dim(); ++k) out.push_back(unit_vec(T.dim(), T.d() + k));
  return out;
}

}  // namespace spo
