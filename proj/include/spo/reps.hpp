// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spo/bessel.hpp"
#include "spo/gaussian.hpp"

namespace spo {

/// Everything a realisation of g = spo(2m|2n,2n) needs, built once per (m,n).
class RepContext {
 public:
  RepContext(int m, int n)
      : S_(m, n), T_(S_.J()), g_(m, n), phi_(T_, g_), c_(T_), X_(m, n), heis_(make_heisenberg(g_)) {
    phi_inv_ = inverse(phi_.matrix());
  }
  RepContext(const RepContext&) = delete;
  RepContext& operator=(const RepContext&) = delete;

  [[nodiscard]] int m() const { return g_.m(); }
  [[nodiscard]] int n() const { return g_.n(); }
  [[nodiscard]] const MatrixVarSpace& S() const { return S_; }
  [[nodiscard]] const Josp& J() const { return S_.J(); }
  [[nodiscard]] const Tkk& T() const { return T_; }
  [[nodiscard]] const Spo& g() const { return g_; }
  [[nodiscard]] const TkkToSpo& phi() const { return phi_; }
  [[nodiscard]] Vec phi_inverse(const Vec& x) const { return mat_vec(phi_inv_, x); }
  [[nodiscard]] const Cayley& cayley() const { return c_; }
  [[nodiscard]] const SuperSpace& X() const { return X_; }
  [[nodiscard]] const LieAlgebra& heisenberg() const { return heis_; }

  /// Spo index a (1..D) as (tilde?, J index).
  [[nodiscard]] std::pair<bool, int> decode(int a) const {
    int m = g_.m(), n = g_.n();
    if (a <= m) return {true, a};
    if (a <= 2 * m) return {false, a - m};
    if (a <= 2 * m + 2 * n) return {true, a - m};
    return {false, a - m - 2 * n};
  }

 private:
  MatrixVarSpace S_;
  Tkk T_;
  Spo g_;
  TkkToSpo phi_;
  Cayley c_;
  SuperSpace X_;
  LieAlgebra heis_;
  Mat phi_inv_;
};

/// Images of a basis as differential operators, extended linearly.
class Realisation {
 public:
  Realisation(std::string name, const LieAlgebra& alg, std::vector<DiffOp> images)
      : name_(std::move(name)), alg_(&alg), images_(std::move(images)) {
    if (images_.size() != alg.dim() || images_.empty()) throw AlgebraError("realisation needs one image per basis element");
  }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const LieAlgebra& algebra() const { return *alg_; }
  [[nodiscard]] const DiffOp& basis(std::size_t a) const { return images_[a]; }
  [[nodiscard]] DiffOp operator()(const Vec& x) const {
    DiffOp r(images_[0].vars());
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!x[a].is_zero()) r += x[a] * images_[a];
    return r;
  }

 private:
  std::string name_;
  const LieAlgebra* alg_;
  std::vector<DiffOp> images_;
};

inline bool homomorphism_holds(const Realisation& rep, const Vec& x, const Vec& y) {
  DiffOp lhs = rep(rep.algebra().bracket(x, y));
  return (lhs - bracket(rep(x), rep(y))).is_zero();
}

/// Basis pairs a <= b where rep([e_a, e_b]) != [rep e_a, rep e_b].
inline std::vector<std::pair<std::size_t, std::size_t>> homomorphism_failures(const Realisation& rep) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const auto& g = rep.algebra();
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = a; b < g.dim(); ++b)
      if (!homomorphism_holds(rep, g.unit(a), g.unit(b))) bad.emplace_back(a, b);
  return bad;
}

inline std::size_t homomorphism_failures_random(const Realisation& rep, SplitMix64& r, int samples) {
  std::size_t bad = 0;
  const auto& g = rep.algebra();
  for (int t = 0; t < samples; ++t) {
    Vec x = g.random_homogeneous(r, static_cast<unsigned>(r.uniform(0, 1)));
    Vec y = g.random_homogeneous(r, static_cast<unsigned>(r.uniform(0, 1)));
    if (!homomorphism_holds(rep, x, y)) ++bad;
  }
  return bad;
}

/// rep o f on the basis of alg, for a linear map f into the source of rep.
template <class F>
Realisation twist(std::string name, const LieAlgebra& alg, const Realisation& rep, F f) {
  std::vector<DiffOp> img;
  for (std::size_t a = 0; a < alg.dim(); ++a) img.push_back(rep(f(alg.unit(a))));
  return Realisation(std::move(name), alg, std::move(img));
}

/**
 * pi_lambda on P(J) in the TKK basis:
 * z^- -> -2i z, D in istr -> lambda(D) + sum_k D^-(z_k) d_{z_k}, z^+ -> -(i/2) B_lambda(z),
 * where D^- is the action of D on J^-.
 */
inline Realisation pi_lambda(const RepContext& C, const Scalar& lambda) {
  const auto& S = C.S();
  const auto& T = C.T();
  std::size_t d = T.d();
  Character chi{lambda};
  std::vector<DiffOp> img;
  for (std::size_t a = 0; a < d; ++a) img.push_back(Scalar(-2) * Scalar::i() * S.mult(Poly::var(S.vars(), a)));
  for (std::size_t k = 0; k < T.istr_dim(); ++k) {
    DiffOp op(S.vars());
    if (k < d) op += chi.on_L(S.J(), unit_vec(d, k)) * S.id();
    const Mat& A = T.istr_op(k);
    for (std::size_t q = 0; q < d; ++q) {
      Vec col(d);
      for (std::size_t p = 0; p < d; ++p) col[p] = A[p][q];
      if (!is_zero_vec(col)) op += T.minus_sign(k) * (S.mult(S.linear(col)) * DiffOp::deriv(S.vars(), q));
    }
    img.push_back(op);
  }
  Scalar c = Scalar::rational(-1, 2) * Scalar::i();
  for (std::size_t a = 0; a < d; ++a) img.push_back(c * bessel_definitional(S, chi, unit_vec(d, a)));
  return Realisation("pi_lambda", T.alg(), std::move(img));
}

/// The displayed sum for pi_lambda(2 L_{l_ij}).
inline DiffOp pi_two_L_displayed(const MatrixVarSpace& S, const Scalar& lambda, int i, int j) {
  const Josp& J = S.J();
  DiffOp op = (Scalar(2) * lambda * J.beta(i, j)) * S.id();
  for (int k = 1; k <= S.N(); ++k)
    for (int l = 1; l <= S.N(); ++l) {
      Poly c = J.beta(j, k) * S.var(i, l) + (Scalar(J.sgn(i, j)) * J.beta(i, k)) * S.var(j, l);
      if (!c.is_zero()) op -= Scalar(k == l ? 2 : 1) * (S.mult(c) * S.du(k, l));
    }
  return op;
}

/// The displayed sum for pi_lambda(4 [L_{l_ij}, L_{l_rs}]).
inline DiffOp pi_four_inner_displayed(const MatrixVarSpace& S, int i, int j, int r, int s) {
  const Josp& J = S.J();
  auto b = [&](int p, int q) { return J.beta(p, q); };
  Scalar sij(J.sgn(i, j)), srs(J.sgn(r, s));
  DiffOp op(S.vars());
  for (int k = 1; k <= S.N(); ++k)
    for (int l = 1; l <= S.N(); ++l) {
      Scalar skr((J.parity(k) & J.parity(r)) ? -1 : 1);
      Poly c = (b(s, k) * b(j, r) + srs * b(r, k) * b(j, s)) * S.var(i, l);
      c += (sij * (b(s, k) * b(i, r) + srs * b(r, k) * b(i, s))) * S.var(j, l);
      c -= (Scalar(J.sgn(k, s)) * (b(i, k) * b(j, r) + sij * b(j, k) * b(i, r))) * S.var(s, l);
      c -= (skr * srs * (b(i, k) * b(j, s) + sij * b(j, k) * b(i, s))) * S.var(r, l);
      if (!c.is_zero()) op += Scalar(k == l ? 2 : 1) * (S.mult(c) * S.du(k, l));
    }
  return op;
}

/// rho_lambda = pi_lambda o c.
inline Realisation rho_lambda(const RepContext& C, const Realisation& pi) {
  return twist("rho_lambda", C.T().alg(), pi, [&C](const Vec& x) { return C.cayley()(x); });
}

/// pi~ on P(K^{m|2n}) in the TKK basis, from the closed forms.
inline Realisation pi_tilde(const RepContext& C) {
  const auto& X = C.X();
  const auto& J = C.J();
  const auto& T = C.T();
  std::size_t d = T.d();
  Scalar i = Scalar::i();
  std::vector<DiffOp> img;
  for (std::size_t a = 0; a < d; ++a) {
    auto [p, q] = J.basis_pairs()[a];
    img.push_back(Scalar(-2) * i * X.mult(X.x(p) * X.x(q)));
  }
  for (std::size_t k = 0; k < T.istr_dim(); ++k) {
    if (k < d) {
      auto [p, q] = J.basis_pairs()[k];
      DiffOp op = (-J.beta(p, q)) * X.id() - X.mult(X.x(p)) * X.dl(q) - Scalar(J.sgn(p, q)) * (X.mult(X.x(q)) * X.dl(p));
      img.push_back(Scalar::rational(1, 2) * op);
      continue;
    }
    auto [u, v] = T.inner_pairs()[k - d];
    auto [a, b] = J.basis_pairs()[u];
    auto [r, s] = J.basis_pairs()[v];
    Scalar sab(J.sgn(a, b)), srs(J.sgn(r, s));
    DiffOp op = J.beta(b, r) * X.L(a, s) + (srs * J.beta(b, s)) * X.L(a, r) + (sab * J.beta(a, r)) * X.L(b, s) +
                (sab * srs * J.beta(a, s)) * X.L(b, r);
    img.push_back(Scalar::rational(1, 4) * op);
  }
  for (std::size_t a = 0; a < d; ++a) {
    auto [p, q] = J.basis_pairs()[a];
    img.push_back((Scalar::rational(-1, 2) * i) * (X.dl(p) * X.dl(q)));
  }
  return Realisation("pi_tilde", T.alg(), std::move(img));
}

/// psi o pi_lambda(x) o psi^{-1} on an even-degree polynomial.
inline Poly pi_tilde_by_folding(const Folding& psi, const Realisation& pi, const Vec& x, const Poly& p) {
  return psi.fold(pi(x).apply(psi.unfold(p)));
}

/// Operators attached to U_{ab} by three blocks: (lo,lo), (ti,lo), (ti,ti).
struct UBlocks {
  std::function<DiffOp(int, int)> lolo, tilo, titi;
};

inline Realisation realise_U(std::string name, const RepContext& C, const UBlocks& f) {
  const auto& g = C.g();
  const auto& J = C.J();
  std::vector<DiffOp> img;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [p, q] = g.basis_pairs()[a];
    auto [tp, i] = C.decode(p);
    auto [tq, j] = C.decode(q);
    if (!tp && !tq) img.push_back(f.lolo(i, j));
    else if (tp && tq) img.push_back(f.titi(i, j));
    else if (tp) img.push_back(f.tilo(i, j));
    else img.push_back(Scalar(J.sgn(i, j)) * f.tilo(j, i));
  }
  return Realisation(std::move(name), g.alg(), std::move(img));
}

/// pi~ in the U basis: 2i x_i x_j, -beta_ij/2 - (-1)^{|i||j|} x_j d_i, -(i/2) d_i d_j.
inline Realisation pi_tilde_U(const RepContext& C) {
  const auto& X = C.X();
  const auto& J = C.J();
  Scalar i = Scalar::i();
  return realise_U("pi_tilde", C,
                   {[&, i](int a, int b) { return (Scalar(2) * i) * X.mult(X.x(a) * X.x(b)); },
                    [&](int a, int b) {
                      return (Scalar::rational(-1, 2) * J.beta(a, b)) * X.id() -
                             Scalar(J.sgn(a, b)) * (X.mult(X.x(b)) * X.dl(a));
                    },
                    [&, i](int a, int b) { return (Scalar::rational(-1, 2) * i) * (X.dl(a) * X.dl(b)); }});
}

/// rho~ = pi~ o c in the TKK basis.
inline Realisation rho_tilde(const RepContext& C, const Realisation& pt) {
  return twist("rho_tilde", C.T().alg(), pt, [&C](const Vec& x) { return C.cayley()(x); });
}

/// rho~ in the U basis: pi~_U o phi o c o phi^{-1}.
inline Realisation rho_tilde_U(const RepContext& C, const Realisation& ptu) {
  return twist("rho_tilde", C.g().alg(), ptu, [&C](const Vec& x) { return C.phi()(C.cayley()(C.phi_inverse(x))); });
}

/// pi^ in the U basis: -2i d_i d_j, beta_ij/2 + x_i d_j, (i/2) x_i x_j.
inline Realisation pi_hat_U(const RepContext& C) {
  const auto& X = C.X();
  const auto& J = C.J();
  Scalar i = Scalar::i();
  return realise_U("pi_hat", C,
                   {[&, i](int a, int b) { return (Scalar(-2) * i) * (X.dl(a) * X.dl(b)); },
                    [&](int a, int b) {
                      return (Scalar::rational(1, 2) * J.beta(a, b)) * X.id() + X.mult(X.x(a)) * X.dl(b);
                    },
                    [&, i](int a, int b) { return (Scalar::rational(1, 2) * i) * X.mult(X.x(a) * X.x(b)); }});
}

/// Schroedinger representation of the Heisenberg algebra with parameter hbar.
inline Realisation U_star(const RepContext& C, const Scalar& hbar) {
  const auto& X = C.X();
  std::vector<DiffOp> img;
  Scalar ih = Scalar::i() * hbar;
  for (int a = 1; a <= C.g().D(); ++a) {
    auto [tilde, i] = C.decode(a);
    img.push_back(tilde ? ih * X.mult(X.x(i)) : X.dl(i));
  }
  img.push_back(ih * X.id());
  return Realisation("U_star", C.heisenberg(), std::move(img));
}

/// mu_*(U_ab) = (U_*(e_a) U_*(e_b) + (-1)^{|a||b|} U_*(e_b) U_*(e_a)) / (2 i hbar).
inline Realisation mu_star(const RepContext& C, const Realisation& u, const Scalar& hbar) {
  const auto& g = C.g();
  Scalar f = Scalar(1) / (Scalar(2) * Scalar::i() * hbar);
  std::vector<DiffOp> img;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    auto [p, q] = g.basis_pairs()[a];
    const DiffOp& A = u.basis(static_cast<std::size_t>(p - 1));
    const DiffOp& B = u.basis(static_cast<std::size_t>(q - 1));
    img.push_back(f * (A * B + Scalar(g.sgn(p, q)) * (B * A)));
  }
  return Realisation("mu_star", g.alg(), std::move(img));
}

/// The displayed mu_*: -(i/hbar) d_i d_j, beta_ij/2 + x_i d_j, i hbar x_i x_j.
inline Realisation mu_star_displayed(const RepContext& C, const Scalar& hbar) {
  const auto& X = C.X();
  const auto& J = C.J();
  Scalar i = Scalar::i();
  return realise_U("mu_star", C,
                   {[&, i, hbar](int a, int b) { return (-(i / hbar)) * (X.dl(a) * X.dl(b)); },
                    [&](int a, int b) {
                      return (Scalar::rational(1, 2) * J.beta(a, b)) * X.id() + X.mult(X.x(a)) * X.dl(b);
                    },
                    [&, i, hbar](int a, int b) { return (i * hbar) * X.mult(X.x(a) * X.x(b)); }});
}

// ---------------------------------------------------------------------------
// Harmonics and Fischer decompositions.

/// Kernel of A : P_k -> P_target inside P_k.
inline std::vector<Poly> kernel_on_degree(const SuperSpace& X, const DiffOp& A, unsigned k, unsigned target) {
  auto monos = X.monomials(X.bank(), k);
  std::vector<Poly> out;
  auto tgt = X.monomials(X.bank(), target);
  MonomialIndex idx(tgt);
  Mat a = zero_mat(idx.size(), monos.size());
  for (std::size_t c = 0; c < monos.size(); ++c) {
    Vec v = idx.coords(A.apply(Poly::monomial(X.vars(), monos[c])));
    for (std::size_t r = 0; r < v.size(); ++r) a[r][c] = v[r];
  }
  for (const auto& v : nullspace(a, monos.size())) {
    Poly p = X.zero();
    for (std::size_t c = 0; c < monos.size(); ++c)
      if (!v[c].is_zero()) p.add_term(monos[c], v[c]);
    out.push_back(p);
  }
  return out;
}

inline std::vector<Poly> harmonics(const SuperSpace& X, unsigned k) {
  if (k < 2) {
    std::vector<Poly> all;
    for (const auto& m : X.monomials(X.bank(), k)) all.push_back(Poly::monomial(X.vars(), m));
    return all;
  }
  return kernel_on_degree(X, X.Delta(), k, k - 2);
}

/// ker(Delta R^2 Delta) on P_k.
inline std::vector<Poly> generalised_harmonics(const SuperSpace& X, unsigned k) {
  if (k < 2) return harmonics(X, k);
  return kernel_on_degree(X, X.Delta() * X.mult(X.R2()) * X.Delta(), k, k - 2);
}

inline bool in_minus_two_N(int M) { return M <= 0 && M % 2 == 0; }

/// The index sets tilde J_k and J_k of the generalised decomposition.
struct FischerIndexSets {
  std::vector<unsigned> tilde, plain;
};

inline FischerIndexSets fischer_index_sets(int M, unsigned k) {
  FischerIndexSets out;
  std::vector<unsigned> N;
  for (unsigned j = 0; j <= k / 2; ++j) N.push_back(k - 2 * j);
  auto in_I = [M](long l) { return in_minus_two_N(M) && 2 - M / 2 <= l && l <= 2 - M; };
  std::vector<long> zero_set;
  for (unsigned l : N)
    if (in_I(l)) {
      out.tilde.push_back(l);
      zero_set.push_back(2 - M - static_cast<long>(l));
    }
  for (unsigned l : N) {
    bool skip = in_I(l) || std::find(zero_set.begin(), zero_set.end(), static_cast<long>(l)) != zero_set.end();
    if (!skip) out.plain.push_back(l);
  }
  return out;
}

struct FischerSummand {
  unsigned l;
  bool generalised;
  std::size_t dim;
};

struct FischerCertificate {
  unsigned k = 0;
  bool degenerate = false;
  std::vector<FischerSummand> summands;
  std::size_t dim_Pk = 0, rank = 0;

  [[nodiscard]] std::size_t total() const {
    std::size_t t = 0;
    for (const auto& s : summands) t += s.dim;
    return t;
  }
  /// Direct (rank equals the summed dimensions) and spanning.
  [[nodiscard]] bool holds() const { return rank == total() && rank == dim_Pk; }
};

/// P_k as a sum of R^{k-l} H_l (or generalised H~_l), with the rank of the union of images.
inline FischerCertificate fischer_decompose(const SuperSpace& X, unsigned k) {
  FischerCertificate cert;
  cert.k = k;
  cert.degenerate = in_minus_two_N(X.M());
  auto monos = X.monomials(X.bank(), k);
  cert.dim_Pk = monos.size();
  MonomialIndex idx(monos);
  Mat rows;
  auto push = [&](unsigned l, bool gen) {
    auto basis = gen ? generalised_harmonics(X, l) : harmonics(X, l);
    Poly r = X.R2().pow((k - l) / 2);
    for (const auto& h : basis) rows.push_back(idx.coords(r * h));
    cert.summands.push_back({l, gen, basis.size()});
  };
  if (!cert.degenerate) {
    for (unsigned l = k % 2; l <= k; l += 2) push(l, false);
  } else {
    auto sets = fischer_index_sets(X.M(), k);
    for (unsigned l : sets.tilde) push(l, true);
    for (unsigned l : sets.plain) push(l, false);
  }
  cert.rank = rows.empty() ? 0 : rank(rows);
  return cert;
}

// ---------------------------------------------------------------------------
// sl(2) ladder on R^{2k} phi_l.

struct LadderReport {
  std::size_t checks = 0, failures = 0;
  /// Cases where the displayed f^+ coefficient -i(M/2+k-1)k differs from the computed one.
  std::size_t f_plus_displayed_mismatch = 0;
  /// Cases where the displayed rho^- coefficient 2k(M+2k-2+2l) differs from the computed one.
  std::size_t rho_minus_displayed_mismatch = 0;
  Scalar lowest_weight;
};

inline LadderReport ladder_check(const RepContext& C, const Realisation& rt, const Realisation& pt, unsigned l,
                                 unsigned k_max) {
  const auto& X = C.X();
  const auto& T = C.T();
  const auto& cay = C.cayley();
  LadderReport rep;
  Scalar M(X.M()), i = Scalar::i(), half = Scalar::rational(1, 2);
  DiffOp fm = rt(cay.f_minus()), h = rt(cay.h()), fp = rt(cay.f_plus());
  Vec e = C.J().unit();
  DiffOp rho_p = pt(scale(Scalar(-1), T.minus(e))), rho_m = pt(scale(Scalar(-4), T.plus(e)));
  auto check = [&](bool ok) {
    ++rep.checks;
    if (!ok) ++rep.failures;
  };
  auto phis = harmonics(X, l);
  for (std::size_t t = 0; t < phis.size(); ++t) {
    const Poly& phi = phis[t];
    for (unsigned k = 0; k <= k_max; ++k) {
      Scalar kk(static_cast<long>(k)), ll(static_cast<long>(l));
      Poly v = X.R2().pow(k) * phi;
      Poly up = X.R2() * v;
      Poly down = k > 0 ? X.R2().pow(k - 1) * phi : X.zero();
      check(fm.apply(v) == (-i) * up);
      Poly hv = h.apply(v);
      check(hv == (-(half * M + Scalar(2) * kk + ll)) * v);
      if (k == 0 && t == 0) {
        auto r = hv.is_zero() ? Scalar() : hv.terms().begin()->second / v.coeff(hv.terms().begin()->first);
        rep.lowest_weight = -r;
      }
      Scalar cf = (-i) * kk * (half * M + kk - Scalar(1) + ll);
      check(fp.apply(v) == cf * down);
      Scalar printed = (-i) * (half * M + kk - Scalar(1)) * kk;
      if (cf * down != printed * down) ++rep.f_plus_displayed_mismatch;
      check(rho_p.apply(v) == i * up);
      Scalar cm = Scalar(2) * kk * (M + Scalar(2) * kk - Scalar(2) + Scalar(2) * ll);
      check(rho_m.apply(v) == (i * cm) * down);
      if (rho_m.apply(v) != cm * down) ++rep.rho_minus_displayed_mismatch;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Gelfand-Kirillov growth.

inline long binomial(long a, long b) {
  if (b < 0 || a < b) return 0;
  long r = 1;
  for (long t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return r;
}

/// Monomials of degree d in m commuting variables (m = 0 allowed).
inline long even_monomial_count(long d, long m) {
  if (m == 0) return d == 0 ? 1 : 0;
  return binomial(d + m - 1, m - 1);
}

/// dim P_{2j} = sum_i C(2n, i) C(2j-i+m-1, m-1).
inline long dim_P2j_formula(int m, int n, int j) {
  long s = 0;
  for (long i = 0; i <= std::min(2L * j, 2L * n); ++i) s += binomial(2 * n, i) * even_monomial_count(2L * j - i, m);
  return s;
}

inline long dim_P2j_enumerated(int m, int n, int j) {
  SuperSpace X(m, n);
  return static_cast<long>(X.monomials(X.bank(), static_cast<unsigned>(2 * j)).size());
}

/// Partial sums sum_{j<=k} dim P_{2j}, k = 0..k_max.
inline std::vector<long> gk_partial_sums(int m, int n, int k_max) {
  std::vector<long> out;
  long s = 0;
  for (int k = 0; k <= k_max; ++k) out.push_back(s += dim_P2j_formula(m, n, k));
  return out;
}

/// Degree of the partial sums as a polynomial in k, read from finite differences for k >= n.
inline std::optional<int> gk_exponent(int m, int n, int k_max) {
  auto s = gk_partial_sums(m, n, k_max);
  std::vector<long> w(s.begin() + n, s.end());
  for (int deg = 0; static_cast<std::size_t>(deg) + 1 < w.size(); ++deg) {
    std::vector<long> diff = w;
    for (int t = 0; t <= deg; ++t) {
      std::vector<long> nd;
      for (std::size_t a = 0; a + 1 < diff.size(); ++a) nd.push_back(diff[a + 1] - diff[a]);
      diff = nd;
    }
    if (diff.size() < 2) return std::nullopt;
    bool zero = std::all_of(diff.begin(), diff.end(), [](long v) { return v == 0; });
    if (zero) return deg;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// k_mcs-finiteness.

/// U_ij + U^{ij} for |i| = |j|, i <= j, nonzero.
inline std::vector<Vec> kmcs_basis(const Spo& g) {
  std::vector<Vec> out;
  for (int i = 1; i <= g.D(); ++i)
    for (int j = i; j <= g.D(); ++j) {
      if (g.parity(i) != g.parity(j)) continue;
      Vec v = add(g.U(i, j), g.U_raised(i, j));
      if (!is_zero_vec(v)) out.push_back(v);
    }
  return out;
}

struct KmcsReport {
  bool delta_formula = true, three_term = true, L_formula = true, L_kills = true, inside = true;
  std::size_t closure_one = 0, closure_l1 = 0, bound = 0;
};

/// Span of the orbit of p exp(-R^2) under k_mcs, as polynomial parts.
inline std::vector<Poly> kmcs_closure(const RepContext& C, const Realisation& pt, const Poly& p, unsigned degree_cap) {
  const auto& X = C.X();
  std::vector<Mono> monos;
  for (unsigned k = 0; k <= degree_cap; ++k)
    for (const auto& m : X.monomials(X.bank(), k)) monos.push_back(m);
  MonomialIndex idx(monos);
  SpanBasis span(idx.size());
  std::vector<Poly> basis, todo{p};
  std::vector<DiffOp> ops;
  for (const auto& v : kmcs_basis(C.g())) ops.push_back(pt(v));
  while (!todo.empty()) {
    Poly q = todo.back();
    todo.pop_back();
    if (q.max_degree() > static_cast<int>(degree_cap)) throw AlgebraError("k_mcs orbit leaves the degree window");
    if (!span.add(idx.coords(q))) continue;
    basis.push_back(q);
    for (const auto& A : ops) todo.push_back(apply(X, A, gaussian(q, X.bank(), 1)).poly);
  }
  return basis;
}

inline KmcsReport kmcs_finiteness_check(const RepContext& C, const Realisation& ptu) {
  const auto& X = C.X();
  const auto& g = C.g();
  KmcsReport rep;
  int m = C.m(), n = C.n();
  Scalar i = Scalar::i();
  auto on_gauss = [&](const DiffOp& A, const Poly& p) { return apply(X, A, gaussian(p, X.bank(), 1)).poly; };
  auto dl = [](int a, int b) { return a == b ? 1 : 0; };
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      Vec v = scale(Scalar(2), add(g.U(g.lo(a), g.lo(b)), g.U_raised(g.lo(a), g.lo(b))));
      DiffOp A = ptu(v);
      if (on_gauss(A, X.one()) != X.constant(Scalar(2 * dl(a, b)) * i)) rep.delta_formula = false;
      for (int k = 1; k <= m; ++k) {
        Poly want = (Scalar(2) * i) * (Scalar(dl(a, b)) * X.x(k) + Scalar(dl(a, k)) * X.x(b) + Scalar(dl(b, k)) * X.x(a));
        if (on_gauss(A, X.x(k)) != want) rep.three_term = false;
      }
      DiffOp L = ptu(add(g.U(g.ti(a), g.lo(b)), g.U_raised(g.ti(a), g.lo(b))));
      if (!(L - X.L(a, b)).is_zero()) rep.L_formula = false;
      if (!on_gauss(L, X.one()).is_zero()) rep.L_kills = false;
    }
  unsigned cap = static_cast<unsigned>(2 * n + 1);
  auto even_degree = [&](const Poly& p, unsigned want) {
    for (const auto& [mono, c] : p.terms()) {
      unsigned e = 0;
      for (int k = 0; k < m; ++k) e += mono[static_cast<std::size_t>(k)];
      if (e != want) return false;
    }
    return true;
  };
  auto one = kmcs_closure(C, ptu, X.one(), cap);
  rep.closure_one = one.size();
  for (const auto& p : one) rep.inside = rep.inside && even_degree(p, 0);
  if (m > 0) {
    auto l1 = kmcs_closure(C, ptu, X.x(1), cap);
    rep.closure_l1 = l1.size();
    for (const auto& p : l1) rep.inside = rep.inside && even_degree(p, 1);
  }
  rep.bound = (std::size_t{1} << (2 * n)) * static_cast<std::size_t>(1 + m);
  return rep;
}

}  // namespace spo
