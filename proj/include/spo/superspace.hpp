// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <vector>

#include "spo/linalg.hpp"
#include "spo/poly.hpp"

namespace spo {

/// Metric beta of K^{m|2n}: identity on the even block, [[0,-I],[I,0]] on the odd block.
inline Mat make_beta(int m, int n) {
  auto N = static_cast<std::size_t>(m + 2 * n);
  Mat b = zero_mat(N, N);
  for (int i = 0; i < m; ++i) b[i][i] = Scalar(1);
  for (int a = 0; a < n; ++a) {
    b[m + a][m + n + a] = Scalar(-1);
    b[m + n + a][m + a] = Scalar(1);
  }
  return b;
}

inline Mat make_beta_inv(int m, int n) {
  auto N = static_cast<std::size_t>(m + 2 * n);
  Mat b = zero_mat(N, N);
  for (int i = 0; i < m; ++i) b[i][i] = Scalar(1);
  for (int a = 0; a < n; ++a) {
    b[m + a][m + n + a] = Scalar(1);
    b[m + n + a][m + a] = Scalar(-1);
  }
  return b;
}

/**
 * Polynomial superspace P(K^{m|2n}) with one or more variable banks. Every bank
 * carries variables 1..m+2n, the first m even. Indices in this API are 1-based.
 */
class SuperSpace {
 public:
  SuperSpace(int m, int n, std::vector<std::string> banks = {"x"}, bool flipped = false)
      : m_(m), n_(n), banks_(std::move(banks)), beta_(make_beta(m, n)), beta_inv_(make_beta_inv(m, n)) {
    if (m < 0 || n < 0) throw SpaceError("negative dimension");
    std::vector<std::string> names;
    std::vector<std::uint8_t> par;
    for (const auto& b : banks_)
      for (int i = 1; i <= N(); ++i) {
        names.push_back(b + std::to_string(i));
        par.push_back(static_cast<std::uint8_t>(parity(i)));
      }
    vs_ = flipped ? make_flipped_varset(names, par) : make_varset(names, par);
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int N() const { return m_ + 2 * n_; }
  [[nodiscard]] int M() const { return m_ - 2 * n_; }
  [[nodiscard]] unsigned parity(int i) const { return i > m_ ? 1U : 0U; }
  [[nodiscard]] int sgn(int i, int j) const { return (parity(i) & parity(j)) ? -1 : 1; }
  [[nodiscard]] const Scalar& beta(int i, int j) const { return beta_[i - 1][j - 1]; }
  [[nodiscard]] const Scalar& beta_inv(int i, int j) const { return beta_inv_[i - 1][j - 1]; }
  [[nodiscard]] const Mat& beta_mat() const { return beta_; }
  [[nodiscard]] const Mat& beta_inv_mat() const { return beta_inv_; }
  [[nodiscard]] const VarSetPtr& vars() const { return vs_; }
  [[nodiscard]] const std::vector<std::string>& banks() const { return banks_; }

  [[nodiscard]] std::size_t bank_index(const std::string& bank) const {
    for (std::size_t b = 0; b < banks_.size(); ++b)
      if (banks_[b] == bank) return b;
    throw SpaceError("unknown bank '" + bank + "'");
  }
  [[nodiscard]] std::size_t var(const std::string& bank, int i) const {
    return bank_index(bank) * static_cast<std::size_t>(N()) + static_cast<std::size_t>(i - 1);
  }
  [[nodiscard]] std::string bank(std::size_t b = 0) const { return banks_.at(b); }

  [[nodiscard]] Poly zero() const { return Poly(vs_); }
  [[nodiscard]] Poly one() const { return Poly::constant(vs_, Scalar(1)); }
  [[nodiscard]] Poly constant(const Scalar& c) const { return Poly::constant(vs_, c); }
  [[nodiscard]] Poly x(const std::string& bank, int i) const { return Poly::var(vs_, var(bank, i)); }
  [[nodiscard]] Poly x(int i) const { return x(banks_[0], i); }

  /// Raised variable x^j = sum_i x_i beta^{ij}.
  [[nodiscard]] Poly raised(const std::string& bank, int j) const {
    Poly p = zero();
    for (int i = 1; i <= N(); ++i)
      if (!beta_inv(i, j).is_zero()) p += beta_inv(i, j) * x(bank, i);
    return p;
  }

  [[nodiscard]] DiffOp id() const { return DiffOp::identity(vs_); }
  [[nodiscard]] DiffOp scalar_op(const Scalar& c) const { return DiffOp::scalar(vs_, c); }
  [[nodiscard]] DiffOp mult(const Poly& p) const { return DiffOp::mult(p); }
  /// Plain partial derivative d/dx_i.
  [[nodiscard]] DiffOp d(const std::string& bank, int i) const { return DiffOp::deriv(vs_, var(bank, i)); }
  [[nodiscard]] DiffOp d(int i) const { return d(banks_[0], i); }
  /// Lowered derivative d_i = sum_j beta_ij d/dx_j.
  [[nodiscard]] DiffOp dl(const std::string& bank, int i) const {
    DiffOp r(vs_);
    for (int j = 1; j <= N(); ++j)
      if (!beta(i, j).is_zero()) r += beta(i, j) * d(bank, j);
    return r;
  }
  [[nodiscard]] DiffOp dl(int i) const { return dl(banks_[0], i); }

  /// Lowered derivative applied directly to a polynomial.
  [[nodiscard]] Poly derive_lowered(const Poly& p, const std::string& bank, int i) const {
    Poly r = zero();
    for (int j = 1; j <= N(); ++j)
      if (!beta(i, j).is_zero()) r += beta(i, j) * p.derive(var(bank, j));
    return r;
  }

  /// R^2 = sum beta^{ij} x_i x_j.
  [[nodiscard]] Poly R2(const std::string& bank) const {
    Poly p = zero();
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j)
        if (!beta_inv(i, j).is_zero()) p += beta_inv(i, j) * (x(bank, i) * x(bank, j));
    return p;
  }
  [[nodiscard]] Poly R2() const { return R2(banks_[0]); }

  /// Delta = sum beta^{ij} d_i d_j with lowered derivatives.
  [[nodiscard]] DiffOp Delta(const std::string& bank) const {
    DiffOp r(vs_);
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j)
        if (!beta_inv(i, j).is_zero()) r += beta_inv(i, j) * (dl(bank, i) * dl(bank, j));
    return r;
  }
  [[nodiscard]] DiffOp Delta() const { return Delta(banks_[0]); }

  /// Euler operator sum x_i d/dx_i.
  [[nodiscard]] DiffOp Euler(const std::string& bank) const {
    DiffOp r(vs_);
    for (int i = 1; i <= N(); ++i) r += mult(x(bank, i)) * d(bank, i);
    return r;
  }
  [[nodiscard]] DiffOp Euler() const { return Euler(banks_[0]); }

  /// L_ij = x_i d_j - (-1)^{|i||j|} x_j d_i.
  [[nodiscard]] DiffOp L(const std::string& bank, int i, int j) const {
    return mult(x(bank, i)) * dl(bank, j) - Scalar(sgn(i, j)) * (mult(x(bank, j)) * dl(bank, i));
  }
  [[nodiscard]] DiffOp L(int i, int j) const { return L(banks_[0], i, j); }

  /// z . w = sum_i z^i w_i across two banks.
  [[nodiscard]] Poly dot(const std::string& a, const std::string& b) const {
    Poly p = zero();
    for (int i = 1; i <= N(); ++i) p += raised(a, i) * x(b, i);
    return p;
  }
  /// ||z||^2 = z . zbar.
  [[nodiscard]] Poly norm2(const std::string& z, const std::string& zbar) const { return dot(z, zbar); }

  /// All monomials of total degree k in one bank (canonical order).
  [[nodiscard]] std::vector<Mono> monomials(const std::string& bank, unsigned k) const {
    std::vector<Mono> out;
    Mono cur(vs_->size(), 0);
    std::size_t off = var(bank, 1);
    std::function<void(int, unsigned)> rec = [&](int i, unsigned left) {
      if (i > N()) {
        if (left == 0) out.push_back(cur);
        return;
      }
      unsigned cap = parity(i) ? 1U : left;
      if (vs_->nilpotent(off + static_cast<std::size_t>(i - 1))) cap = std::min(cap, 1U);
      for (unsigned e = 0; e <= std::min(cap, left); ++e) {
        cur[off + static_cast<std::size_t>(i - 1)] = static_cast<std::uint8_t>(e);
        rec(i + 1, left - e);
      }
      cur[off + static_cast<std::size_t>(i - 1)] = 0;
    };
    rec(1, k);
    return out;
  }

  /// Parses "3*x1^2*x2 - 1/2*i*x3 + sqrt2".
  [[nodiscard]] Poly parse(const std::string& text) const { return parse_poly(vs_, text); }

  static Poly parse_poly(const VarSetPtr& vs, const std::string& text) {
    ExprParser p{vs, text, 0};
    Poly r = p.expr();
    p.ws();
    if (p.pos != text.size()) throw SpaceError("unexpected input at position " + std::to_string(p.pos));
    return r;
  }

 private:
  int m_, n_;
  std::vector<std::string> banks_;
  Mat beta_, beta_inv_;
  VarSetPtr vs_;

  struct ExprParser {
    const VarSetPtr& vs;
    const std::string& s;
    std::size_t pos;
    void ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    Poly expr() {
      Poly r = term();
      while (true) {
        if (eat('+')) r += term();
        else if (eat('-')) r -= term();
        else return r;
      }
    }
    Poly term() {
      Poly r = factor();
      while (true) {
        if (eat('*')) {
          r = r * factor();
        } else if (eat('/')) {
          Poly d = factor();
          if (d.max_degree() > 0) throw SpaceError("division by a non-constant polynomial");
          r = (Scalar(1) / d.constant_term()) * r;
        } else {
          return r;
        }
      }
    }
    Poly factor() {
      if (eat('-')) return -factor();
      if (eat('+')) return factor();
      Poly a = atom();
      if (eat('^')) {
        ws();
        std::size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (b == pos) throw SpaceError("expected exponent");
        a = a.pow(static_cast<unsigned>(std::stoul(s.substr(b, pos - b))));
      }
      return a;
    }
    Poly atom() {
      ws();
      if (eat('(')) {
        Poly r = expr();
        if (!eat(')')) throw SpaceError("expected ')'");
        return r;
      }
      if (pos >= s.size()) throw SpaceError("unexpected end of expression");
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return Poly::constant(vs, Scalar(mpq_class(mpz_class(s.substr(b, pos - b)))));
      }
      if (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_') {
        std::size_t b = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        std::string id = s.substr(b, pos - b);
        if (id == "i") return Poly::constant(vs, Scalar::i());
        if (id == "sqrt2") return Poly::constant(vs, Scalar::sqrt2());
        if (id == "pi") return Poly::constant(vs, Scalar::pi_pow(1));
        if (id == "sqrtpi") return Poly::constant(vs, Scalar::sqrt_pi_pow(1));
        return Poly::var(vs, vs->index(id));
      }
      throw SpaceError(std::string("unexpected character '") + s[pos] + "'");
    }
  };
};

}  // namespace spo
