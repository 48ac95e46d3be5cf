// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spo/algebra.hpp"
#include "spo/superspace.hpp"

namespace spo {

/// All monomials of total degree k over a variable set.
inline std::vector<Mono> enumerate_monomials(const VarSet& vs, unsigned k) {
  std::vector<Mono> out;
  Mono cur(vs.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
    if (v == vs.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    unsigned cap = vs.nilpotent(v) ? 1U : left;
    for (unsigned e = 0; e <= std::min(cap, left); ++e) {
      cur[v] = static_cast<std::uint8_t>(e);
      rec(v + 1, left - e);
    }
    cur[v] = 0;
  };
  rec(0, k);
  return out;
}

/// Coordinates of p against a fixed list of monomials; throws if p leaves the list.
class MonomialIndex {
 public:
  explicit MonomialIndex(std::vector<Mono> monos) : monos_(std::move(monos)) {
    for (std::size_t a = 0; a < monos_.size(); ++a) index_[monos_[a]] = a;
  }
  [[nodiscard]] std::size_t size() const { return monos_.size(); }
  [[nodiscard]] const std::vector<Mono>& monomials() const { return monos_; }
  [[nodiscard]] Vec coords(const Poly& p) const {
    Vec v(monos_.size());
    for (const auto& [m, c] : p.terms()) {
      auto it = index_.find(m);
      if (it == index_.end()) throw SpaceError("polynomial outside the monomial list");
      v[it->second] = c;
    }
    return v;
  }
  [[nodiscard]] Poly poly(const VarSetPtr& vs, const Vec& v) const {
    Poly p(vs);
    for (std::size_t a = 0; a < v.size(); ++a)
      if (!v[a].is_zero()) p.add_term(monos_[a], v[a]);
    return p;
  }

 private:
  std::vector<Mono> monos_;
  std::map<Mono, std::size_t> index_;
};

/**
 * Polynomials on J^- in the variables l_ij (i <= j, l_ii = 0 for odd i),
 * with raised variables l^{ij} and both derivative conventions.
 */
class MatrixVarSpace {
 public:
  MatrixVarSpace(int m, int n) : J_(m, n) {
    std::vector<std::string> names;
    std::vector<std::uint8_t> par;
    for (std::size_t a = 0; a < J_.dim(); ++a) {
      auto [i, j] = J_.basis_pairs()[a];
      names.push_back("l" + std::to_string(i) + "_" + std::to_string(j));
      par.push_back(static_cast<std::uint8_t>(J_.basis_parity(a)));
    }
    vs_ = make_varset(std::move(names), std::move(par));
    if (!duality_holds()) throw SpaceError("derivative duality failed");
  }

  [[nodiscard]] const Josp& J() const { return J_; }
  [[nodiscard]] int m() const { return J_.m(); }
  [[nodiscard]] int n() const { return J_.n(); }
  [[nodiscard]] int N() const { return J_.N(); }
  [[nodiscard]] int m_hat() const { return m() * (m() + 1) / 2 + n() * (2 * n() - 1); }
  [[nodiscard]] int n_hat() const { return m() * n(); }
  [[nodiscard]] const VarSetPtr& vars() const { return vs_; }
  [[nodiscard]] std::size_t dim() const { return J_.dim(); }

  [[nodiscard]] Poly zero() const { return Poly(vs_); }
  [[nodiscard]] Poly one() const { return Poly::constant(vs_, Scalar(1)); }
  [[nodiscard]] Poly constant(const Scalar& c) const { return Poly::constant(vs_, c); }
  /// J element read as a linear polynomial on J^-.
  [[nodiscard]] Poly linear(const Vec& x) const {
    Poly p(vs_);
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!x[a].is_zero()) p += x[a] * Poly::var(vs_, a);
    return p;
  }
  [[nodiscard]] Poly var(int i, int j) const { return linear(J_.ell(i, j)); }
  [[nodiscard]] Poly raised(int i, int j) const { return linear(J_.ell_raised(i, j)); }

  [[nodiscard]] DiffOp id() const { return DiffOp::identity(vs_); }
  [[nodiscard]] DiffOp scalar_op(const Scalar& c) const { return DiffOp::scalar(vs_, c); }
  [[nodiscard]] DiffOp mult(const Poly& p) const { return DiffOp::mult(p); }
  /// d^{ij} = d/dl_ij, with d^{ji} = (-1)^{|i||j|} d^{ij}.
  [[nodiscard]] DiffOp du(int i, int j) const {
    DiffOp d(vs_);
    Vec x = J_.ell(i, j);
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!x[a].is_zero()) d += x[a] * DiffOp::deriv(vs_, a);
    return d;
  }
  /// d_ij = sum beta_ik beta_jl d^{kl}.
  [[nodiscard]] DiffOp dt(int i, int j) const {
    DiffOp d(vs_);
    for (int k = 1; k <= N(); ++k)
      for (int l = 1; l <= N(); ++l)
        if (!J_.beta(i, k).is_zero() && !J_.beta(j, l).is_zero()) d += (J_.beta(i, k) * J_.beta(j, l)) * du(k, l);
    return d;
  }
  [[nodiscard]] std::vector<Mono> monomials(unsigned k) const { return enumerate_monomials(*vs_, k); }

  /// d_ij l^{kl} = delta_ik delta_jl + (-1)^{|i||j|} delta_il delta_jk - delta_ij delta_kl delta_ik,
  /// the last term only for even i (odd diagonal variables vanish).
  [[nodiscard]] bool duality_holds() const {
    for (int i = 1; i <= N(); ++i)
      for (int j = 1; j <= N(); ++j) {
        DiffOp d = dt(i, j);
        for (int k = 1; k <= N(); ++k)
          for (int l = 1; l <= N(); ++l) {
            int want = (i == k && j == l ? 1 : 0) + (i == l && j == k ? J_.sgn(i, j) : 0) -
                       (i == j && k == l && i == k && !J_.parity(i) ? 1 : 0);
            if (d.apply(raised(k, l)) != constant(Scalar(want))) return false;
          }
      }
    return true;
  }

 private:
  Josp J_;
  VarSetPtr vs_;
};

/// 2e = sum l_ij beta^{ij} over all i, j, as a linear polynomial.
inline Poly two_e(const MatrixVarSpace& S) { return S.linear(scale(Scalar(2), S.J().unit())); }

/// tr(l) = sum 2^{-|i||j|} l_ij beta^{ij}.
inline Poly trace_element(const MatrixVarSpace& S) {
  Poly p = S.zero();
  for (int i = 1; i <= S.N(); ++i)
    for (int j = 1; j <= S.N(); ++j) {
      Scalar b = S.J().beta_inv(i, j);
      if (b.is_zero()) continue;
      if (S.J().parity(i) & S.J().parity(j)) b = b * Scalar::rational(1, 2);
      p += b * S.var(i, j);
    }
  return p;
}

/// The displayed expansion sum_{i<=m} l_ii + 1/2 sum_{m<i<j} l_ij beta^{ij}.
inline Poly two_e_displayed(const MatrixVarSpace& S) {
  Poly p = S.zero();
  for (int i = 1; i <= S.m(); ++i) p += S.var(i, i);
  for (int i = S.m() + 1; i <= S.N(); ++i)
    for (int j = i + 1; j <= S.N(); ++j)
      if (!S.J().beta_inv(i, j).is_zero()) p += (Scalar::rational(1, 2) * S.J().beta_inv(i, j)) * S.var(i, j);
  return p;
}

/// Character of istr(J): lambda(L_{l_ij}) = beta_ij lambda.
struct Character {
  Scalar lambda;

  [[nodiscard]] Scalar on_L(const Josp& J, const Vec& y) const {
    Scalar s;
    for (std::size_t a = 0; a < y.size(); ++a) {
      if (y[a].is_zero()) continue;
      auto [i, j] = J.basis_pairs()[a];
      if (!J.beta(i, j).is_zero()) s += y[a] * J.beta(i, j);
    }
    return s * lambda;
  }
};

enum class BesselConstruction { Definitional, Explicit };

/**
 * B_lambda(x) = sum_a lambda_{z_a}(x) d_a + sum_{a,b} P_{z_a,z_b}(x) d_b d_a with
 * lambda_u(x) = -2 lambda(L_{xu}) and
 * P_{u,v}(x) = (-1)^{|x|(|u|+|v|)} (L_u L_v + (-1)^{|u||v|} L_v L_u - L_{uv})(x).
 */
inline DiffOp bessel_definitional(const MatrixVarSpace& S, const Character& chi, const Vec& x) {
  const Josp& J = S.J();
  std::size_t d = J.dim();
  DiffOp B(S.vars());
  for (std::size_t xa = 0; xa < d; ++xa) {
    if (x[xa].is_zero()) continue;
    Vec xb = unit_vec(d, xa);
    unsigned px = J.basis_parity(xa);
    DiffOp part(S.vars());
    for (std::size_t a = 0; a < d; ++a) {
      Vec za = unit_vec(d, a);
      Scalar c = Scalar(-2) * chi.on_L(J, J.product(xb, za));
      if (!c.is_zero()) part += c * DiffOp::deriv(S.vars(), a);
    }
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        Vec u = unit_vec(d, a), v = unit_vec(d, b);
        unsigned pu = J.basis_parity(a), pv = J.basis_parity(b);
        Vec Lv_x = J.product(v, xb), Lu_x = J.product(u, xb);
        Vec t = J.product(u, Lv_x);
        t = add(t, scale(Scalar((pu & pv) ? -1 : 1), J.product(v, Lu_x)));
        t = sub(t, J.product(J.product(u, v), xb));
        if (is_zero_vec(t)) continue;
        if (px & (pu ^ pv)) t = scale(Scalar(-1), t);
        part += S.mult(S.linear(t)) * (DiffOp::deriv(S.vars(), b) * DiffOp::deriv(S.vars(), a));
      }
    B += x[xa] * part;
  }
  return B;
}

/// The double and quadruple sum over unrestricted indices.
inline DiffOp bessel_explicit(const MatrixVarSpace& S, const Character& chi, int i, int j) {
  const Josp& J = S.J();
  int N = S.N();
  auto dl = [](int a, int b) { return a == b ? 1 : 0; };
  DiffOp B(S.vars());
  for (int k = 1; k <= N; ++k)
    for (int l = 1; l <= N; ++l) {
      Scalar c = J.beta(j, k) * J.beta(i, l);
      if (c.is_zero()) continue;
      B += (Scalar(-2) * chi.lambda * Scalar(1 + dl(k, l)) * c) * S.du(k, l);
    }
  for (int s = 1; s <= N; ++s) {
    if (J.beta(i, s).is_zero()) continue;
    for (int l = 1; l <= N; ++l) {
      if (J.beta(j, l).is_zero()) continue;
      for (int k = 1; k <= N; ++k)
        for (int r = 1; r <= N; ++r) {
          Poly lkr = S.var(k, r);
          if (lkr.is_zero()) continue;
          int sg = (J.parity(k) & J.parity(i)) ? -1 : 1;
          int f = 1 + dl(k, l) + dl(r, s) + dl(k, l) * dl(r, s);
          Scalar c = Scalar(sg * f) * J.beta(i, s) * J.beta(j, l);
          B += c * (S.mult(lkr) * (S.du(s, r) * S.du(l, k)));
        }
    }
  }
  return B;
}

inline DiffOp bessel_operator(const MatrixVarSpace& S, const Character& chi, int i, int j, BesselConstruction how) {
  if (how == BesselConstruction::Explicit) return bessel_explicit(S, chi, i, j);
  return bessel_definitional(S, chi, S.J().ell(i, j));
}

/// Bessel operators of the basis of J, definitional construction.
inline std::vector<DiffOp> bessel_basis(const MatrixVarSpace& S, const Character& chi) {
  std::vector<DiffOp> out;
  for (std::size_t a = 0; a < S.dim(); ++a) out.push_back(bessel_definitional(S, chi, unit_vec(S.dim(), a)));
  return out;
}

/// Number of basis pairs whose Bessel operators fail to supercommute.
inline std::size_t bessel_supercommutation_failures(const MatrixVarSpace& S, const Character& chi) {
  auto B = bessel_basis(S, chi);
  std::size_t bad = 0;
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = a; b < B.size(); ++b)
      if (!bracket(B[a], B[b]).is_zero()) ++bad;
  return bad;
}

/// Spanning set of a graded subspace with its (even|odd) dimensions.
struct VLambdaBasis {
  Scalar lambda;
  std::vector<Poly> basis;
  std::size_t dim_even = 0, dim_odd = 0;
  [[nodiscard]] long sdim() const { return static_cast<long>(dim_even) - static_cast<long>(dim_odd); }
};

/// Reduces homogeneous parts of a family of degree-k polynomials to a basis.
inline VLambdaBasis graded_basis(const MatrixVarSpace& S, const Scalar& lambda, const std::vector<Poly>& family,
                                 unsigned k) {
  MonomialIndex idx(S.monomials(k));
  VLambdaBasis out{lambda, {}, 0, 0};
  for (unsigned p = 0; p < 2; ++p) {
    SpanBasis span(idx.size());
    for (const auto& q : family) {
      Poly h = q.parity_part(p);
      if (!h.is_zero() && span.add(idx.coords(h))) out.basis.push_back(h);
    }
    (p ? out.dim_odd : out.dim_even) = span.size();
  }
  return out;
}

/**
 * Solver for 2(-1)^{|i||j|} lambda a_ijkl = (-1)^{|i||k|} a_jkil + (-1)^{|k||l|+|i||l|} a_jlik
 * over tensors with the symmetries of Q = sum a_ijkl l_ij l_kl.
 */
inline VLambdaBasis compute_V_lambda(const MatrixVarSpace& S, const Scalar& lambda) {
  const Josp& J = S.J();
  int N = S.N();
  using Quad = std::array<int, 4>;
  auto sg = [&](int a, int b) { return J.sgn(a, b); };
  auto key = [N](const Quad& q) { return ((q[0] * (N + 1) + q[1]) * (N + 1) + q[2]) * (N + 1) + q[3]; };
  // Orbit representative and sign for every index quadruple; sign 0 marks a forced zero.
  std::map<int, std::pair<std::size_t, int>> rep;
  std::size_t orbits = 0;
  std::vector<bool> dead;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
          Quad q{i, j, k, l};
          if (rep.count(key(q))) continue;
          std::size_t id = orbits++;
          dead.push_back(false);
          std::vector<std::pair<Quad, int>> stack{{q, 1}};
          rep[key(q)] = {id, 1};
          while (!stack.empty()) {
            auto [c, s] = stack.back();
            stack.pop_back();
            std::array<std::pair<Quad, int>, 3> nb = {
                std::pair{Quad{c[1], c[0], c[2], c[3]}, s * sg(c[0], c[1])},
                std::pair{Quad{c[0], c[1], c[3], c[2]}, s * sg(c[2], c[3])},
                std::pair{Quad{c[2], c[3], c[0], c[1]},
                          s * (((J.parity(c[0]) ^ J.parity(c[1])) & (J.parity(c[2]) ^ J.parity(c[3]))) ? -1 : 1)}};
            for (const auto& [t, ts] : nb) {
              auto it = rep.find(key(t));
              if (it == rep.end()) {
                rep[key(t)] = {id, ts};
                stack.push_back({t, ts});
              } else if (it->second.second != ts) {
                dead[id] = true;
              }
            }
          }
        }
  auto coef = [&](const Quad& q, Vec& row, const Scalar& c) {
    auto [id, s] = rep.at(key(q));
    if (dead[id]) return;
    row[id] += Scalar(s) * c;
  };
  Mat eqs;
  for (std::size_t id = 0; id < orbits; ++id)
    if (dead[id]) {
      Vec row(orbits);
      row[id] = Scalar(1);
      eqs.push_back(row);
    }
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
          Vec row(orbits);
          coef({i, j, k, l}, row, Scalar(2 * sg(i, j)) * lambda);
          coef({j, k, i, l}, row, Scalar(-sg(i, k)));
          coef({j, l, i, k}, row, Scalar(-sg(k, l) * sg(i, l)));
          if (!is_zero_vec(row)) eqs.push_back(row);
        }
  auto sols = nullspace(eqs, orbits);
  std::vector<Poly> family;
  for (const auto& a : sols) {
    Poly Q = S.zero();
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j)
        for (int k = 1; k <= N; ++k)
          for (int l = 1; l <= N; ++l) {
            auto [id, s] = rep.at(key({i, j, k, l}));
            if (dead[id] || a[id].is_zero()) continue;
            Q += (Scalar(s) * a[id]) * (S.var(i, j) * S.var(k, l));
          }
    family.push_back(Q);
  }
  return graded_basis(S, lambda, family, 2);
}

/// Quadratics annihilated by every Bessel operator, by direct nullspace.
inline VLambdaBasis annihilated_quadratics(const MatrixVarSpace& S, const Character& chi) {
  auto B = bessel_basis(S, chi);
  MonomialIndex q2(S.monomials(2)), q1(S.monomials(1));
  std::vector<Poly> family;
  for (unsigned p = 0; p < 2; ++p) {
    std::vector<Mono> cols;
    for (const auto& mono : q2.monomials())
      if (mono_parity(*S.vars(), mono) == p) cols.push_back(mono);
    Mat eqs;
    for (const auto& b : B) {
      Mat block = zero_mat(q1.size(), cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) {
        Vec v = q1.coords(b.apply(Poly::monomial(S.vars(), cols[c])));
        for (std::size_t r = 0; r < v.size(); ++r) block[r][c] = v[r];
      }
      for (auto& row : block)
        if (!is_zero_vec(row)) eqs.push_back(row);
    }
    for (const auto& v : nullspace(eqs, cols.size())) {
      Poly Q = S.zero();
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (!v[c].is_zero()) Q.add_term(cols[c], v[c]);
      family.push_back(Q);
    }
  }
  return graded_basis(S, chi.lambda, family, 2);
}

/// The displayed spanning families of V_1 and V_{-1/2}; lambda must be 1 or -1/2.
inline std::vector<Poly> printed_V_family(const MatrixVarSpace& S, const Scalar& lambda) {
  const Josp& J = S.J();
  int N = S.N();
  bool one = lambda == Scalar(1);
  if (!one && lambda != Scalar::rational(-1, 2)) throw SpaceError("no displayed family for this lambda");
  std::vector<Poly> out;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
          Poly q = S.var(i, j) * S.var(k, l);
          Scalar skj(J.sgn(k, j));
          if (one) {
            int s3 = ((J.parity(j) ^ J.parity(k)) & J.parity(l)) ? -1 : 1;
            q += skj * (S.var(i, k) * S.var(j, l)) + Scalar(s3) * (S.var(i, l) * S.var(j, k));
          } else {
            q -= skj * (S.var(i, k) * S.var(j, l));
          }
          if (!q.is_zero()) out.push_back(q);
        }
  return out;
}

/// (even|odd) dimensions of V_1 and V_{-1/2} from the counting formulas.
inline std::pair<long, long> V_dimension_formula(int m, int n, const Scalar& lambda) {
  long M = m, n_ = n;
  if (lambda == Scalar(1)) {
    long e = M * M * M * M + 24 * M * M * n_ * n_ + 16 * n_ * n_ * n_ * n_ + 6 * M * M * M - 12 * M * M * n_ +
             24 * M * n_ * n_ - 48 * n_ * n_ * n_ + 11 * M * M - 12 * M * n_ + 44 * n_ * n_ + 6 * M - 12 * n_;
    long o = M * n_ * (M * M + 4 * n_ * n_ + 3 * M - 6 * n_ + 4);
    return {e / 24, o / 3};
  }
  if (lambda == Scalar::rational(-1, 2)) {
    long e = M * M * M * M + 24 * M * M * n_ * n_ + 16 * n_ * n_ * n_ * n_ - M * M - 12 * M * n_ - 4 * n_ * n_;
    long o = 2 * M * n_ * (M * M + 4 * n_ * n_ - 2);
    return {e / 12, o / 3};
  }
  throw SpaceError("no dimension formula for this lambda");
}

/// sdim closed forms in M = m - 2n.
inline Scalar V_sdim_formula(int m, int n, const Scalar& lambda) {
  long M = m - 2 * n;
  if (lambda == Scalar(1)) return Scalar(mpq_class(M * (M + 1) * (M + 2) * (M + 3), 24));
  if (lambda == Scalar::rational(-1, 2)) return Scalar(mpq_class((M - 1) * M * M * (M + 1), 12));
  throw SpaceError("no sdim formula for this lambda");
}

/// Degree-k slice of the ideal generated by V: span of P_{k-2} * V.
inline std::vector<Poly> ideal_slice(const MatrixVarSpace& S, const VLambdaBasis& V, unsigned k) {
  if (k < 2) return {};
  MonomialIndex idx(S.monomials(k));
  SpanBasis span(idx.size());
  std::vector<Poly> out;
  for (const auto& mono : S.monomials(k - 2)) {
    Poly mp = Poly::monomial(S.vars(), mono);
    for (const auto& q : V.basis) {
      Poly r = mp * q;
      if (!r.is_zero() && span.add(idx.coords(r))) out.push_back(r);
    }
  }
  return out;
}

/// psi: l_ij -> x_i x_j into the even part of P(K^{m|2n}).
class Folding {
 public:
  explicit Folding(const MatrixVarSpace& S) : S_(S), T_(S.m(), S.n()) {
    for (std::size_t a = 0; a < S.dim(); ++a) {
      auto [i, j] = S.J().basis_pairs()[a];
      images_.push_back(T_.x(i) * T_.x(j));
    }
  }
  [[nodiscard]] const SuperSpace& target() const { return T_; }
  [[nodiscard]] Poly fold(const Poly& p) const { return p.substitute(images_, T_.vars()); }
  /// Section on even polynomials: pair consecutive factors of each ordered monomial.
  [[nodiscard]] Poly unfold(const Poly& q) const {
    Poly r = S_.zero();
    for (const auto& [mono, c] : q.terms()) {
      std::vector<int> idx;
      for (int i = 1; i <= T_.N(); ++i)
        for (unsigned e = 0; e < mono[static_cast<std::size_t>(i - 1)]; ++e) idx.push_back(i);
      if (idx.size() % 2) throw SpaceError("unfold needs even degree");
      Poly t = S_.constant(c);
      for (std::size_t a = 0; a < idx.size(); a += 2) t = t * S_.var(idx[a], idx[a + 1]);
      r += t;
    }
    return r;
  }

 private:
  const MatrixVarSpace& S_;
  SuperSpace T_;
  std::vector<Poly> images_;
};

/**
 * psi_1: l_ij (i <= j) -> theta_i theta_j into the algebra with
 * theta_i theta_j = -(-1)^{|i||j|} theta_j theta_i.
 */
class GrassmannFolding {
 public:
  explicit GrassmannFolding(const MatrixVarSpace& S) {
    std::vector<std::string> names;
    std::vector<std::uint8_t> par;
    for (int i = 1; i <= S.N(); ++i) {
      names.push_back("t" + std::to_string(i));
      par.push_back(static_cast<std::uint8_t>(S.J().parity(i)));
    }
    vs_ = make_flipped_varset(std::move(names), std::move(par));
    for (std::size_t a = 0; a < S.dim(); ++a) {
      auto [i, j] = S.J().basis_pairs()[a];
      images_.push_back(Poly::var(vs_, static_cast<std::size_t>(i - 1)) * Poly::var(vs_, static_cast<std::size_t>(j - 1)));
    }
  }
  [[nodiscard]] const VarSetPtr& vars() const { return vs_; }
  [[nodiscard]] Poly fold(const Poly& p) const { return p.substitute(images_, vs_); }

 private:
  VarSetPtr vs_;
  std::vector<Poly> images_;
};

}  // namespace spo
