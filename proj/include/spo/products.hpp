// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spo/bessel.hpp"
#include "spo/gaussian.hpp"
#include "spo/reps.hpp"
#include "spo/rng.hpp"

namespace spo {

enum class ProductKind { Fischer, BesselFischer, Fock, L2, Schrodinger };

struct ProductId {
  ProductKind kind = ProductKind::Fischer;
  Scalar lambda;  // only for BesselFischer

  [[nodiscard]] std::string str() const {
    switch (kind) {
      case ProductKind::Fischer: return "fischer";
      case ProductKind::BesselFischer: return "bessel_fischer(" + lambda.compact() + ")";
      case ProductKind::Fock: return "fock";
      case ProductKind::L2: return "l2";
      case ProductKind::Schrodinger: return "schrodinger";
    }
    return "";
  }
  /// Accepts fischer, fock, l2, schrodinger, bessel_fischer(1), bessel_fischer(-1/2).
  static ProductId parse(const std::string& s) {
    if (s == "fischer") return {ProductKind::Fischer, {}};
    if (s == "fock") return {ProductKind::Fock, {}};
    if (s == "l2") return {ProductKind::L2, {}};
    if (s == "schrodinger") return {ProductKind::Schrodinger, {}};
    const std::string pre = "bessel_fischer(";
    if (s.rfind(pre, 0) == 0 && s.back() == ')') {
      mpq_class q(s.substr(pre.size(), s.size() - pre.size() - 1));
      q.canonicalize();
      return {ProductKind::BesselFischer, Scalar(q)};
    }
    throw SpaceError("unknown product '" + s + "'");
  }
};

/// Expands a monomial into its word of variable indices, in storage order.
inline std::vector<std::size_t> mono_word(const Mono& m) {
  std::vector<std::size_t> w;
  for (std::size_t u = 0; u < m.size(); ++u)
    for (unsigned e = 0; e < m[u]; ++e) w.push_back(u);
  return w;
}

/// Sign picked up when a word is reversed in an algebra with commutation factors vs.
inline int reversal_sign(const VarSet& vs, const std::vector<std::size_t>& w) {
  int s = 1;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b) s *= vs.sign(w[a], w[b]);
  return s;
}

/// Two copies of a variable set; stored monomials keep the first copy on the left.
class DoubledVars {
 public:
  DoubledVars(const VarSetPtr& base, const std::string& a, const std::string& b) : base_(base) {
    std::vector<std::string> names;
    std::vector<std::uint8_t> par;
    for (const auto& pre : {a, b})
      for (std::size_t u = 0; u < base->size(); ++u) {
        names.push_back(pre + "." + base->names[u]);
        par.push_back(base->parity[u]);
      }
    vs_ = make_varset(std::move(names), std::move(par));
  }
  [[nodiscard]] const VarSetPtr& vars() const { return vs_; }
  [[nodiscard]] const VarSetPtr& base() const { return base_; }

  [[nodiscard]] Poly embed(const Poly& p, unsigned copy) const {
    std::vector<Poly> img;
    for (std::size_t u = 0; u < base_->size(); ++u) img.push_back(Poly::var(vs_, copy * base_->size() + u));
    return p.substitute(img, vs_);
  }
  /// P = sum_w left_w * w, keyed by the second-copy monomial w.
  [[nodiscard]] std::map<Mono, Poly> split(const Poly& P) const {
    std::size_t d = base_->size();
    std::map<Mono, Poly> out;
    for (const auto& [mono, c] : P.terms()) {
      Mono l(mono.begin(), mono.begin() + static_cast<long>(d)), r(mono.begin() + static_cast<long>(d), mono.end());
      auto it = out.try_emplace(r, Poly(base_)).first;
      it->second.add_term(l, c);
    }
    return out;
  }

 private:
  VarSetPtr base_, vs_;
};

// ---------------------------------------------------------------------------
// Fischer and Fock products on P(C^{m|2n}).

/// p(d) q |_{z=0} in the remaining banks, with z_i -> d_i = d/dz^i; q is used as given.
inline Poly derivative_pairing(const SuperSpace& Y, const std::string& bank, const Poly& p, const Poly& q) {
  Poly r = Y.zero();
  std::size_t off = Y.var(bank, 1);
  for (const auto& [mono, c] : p.terms()) {
    Poly t = q;
    for (int i = Y.N(); i >= 1 && !t.is_zero(); --i)
      for (unsigned e = 0; e < mono[off + static_cast<std::size_t>(i - 1)] && !t.is_zero(); ++e) t = Y.derive_lowered(t, bank, i);
    t = t.filter([&](const Mono& m) {
      for (int i = 0; i < Y.N(); ++i)
        if (m[off + static_cast<std::size_t>(i)]) return false;
      return true;
    });
    r += c * t;
  }
  return r;
}

/// <p,q>_F = p(d) qbar(z) |_{z=0}, qbar conjugating coefficients only.
inline Scalar fischer(const SuperSpace& X, const Poly& p, const Poly& q) {
  return derivative_pairing(X, X.bank(), p, q.conj()).constant_term();
}

/**
 * The integral side: banks (z, zbar, w) over one superspace. conj(q(z)) is
 * q with conjugated coefficients and z_i -> zbar_i, factor order kept.
 */
class FockSpace {
 public:
  explicit FockSpace(const SuperSpace& X)
      : X_(X), Y_(X.m(), X.n(), {X.bank(), X.bank() + "bar", "w"}) {
    gamma_ = integrate_complex_scalar(Y_, Y_.one(), z(), zbar());
  }
  [[nodiscard]] const SuperSpace& X() const { return X_; }
  [[nodiscard]] const SuperSpace& Y() const { return Y_; }
  [[nodiscard]] std::string z() const { return X_.bank(); }
  [[nodiscard]] std::string zbar() const { return X_.bank() + "bar"; }
  [[nodiscard]] const Scalar& gamma() const { return gamma_; }

  [[nodiscard]] Poly embed(const Poly& p, const std::string& bank) const {
    std::vector<Poly> img;
    for (int i = 1; i <= X_.N(); ++i) img.push_back(Y_.x(bank, i));
    return p.substitute(img, Y_.vars());
  }
  [[nodiscard]] Poly conj_bar(const Poly& q) const { return embed(q.conj(), zbar()); }

  /// (1/gamma) int exp(-||z||^2) p conj(q) dz.
  [[nodiscard]] Scalar fock(const Poly& p, const Poly& q) const {
    return integrate_complex_scalar(Y_, embed(p, z()) * conj_bar(q), z(), zbar()) / gamma_;
  }
  [[nodiscard]] Scalar fischer(const Poly& p, const Poly& q) const { return spo::fischer(X_, p, q); }

  /// exp(z . w) truncated to z-degree <= cap, i.e. the conjugate of exp(z . wbar).
  [[nodiscard]] Poly kernel(unsigned cap) const {
    std::size_t off = Y_.var(z(), 1);
    auto keep = [&, cap](const Mono& m) {
      unsigned d = 0;
      for (int i = 0; i < Y_.N(); ++i) d += m[off + static_cast<std::size_t>(i)];
      return d <= cap;
    };
    return exp_series(Y_.dot(z(), "w"), keep);
  }
  /// <p(z), exp(z . wbar)>_F through the Fischer pairing; result in the w bank.
  [[nodiscard]] Poly reproduce(const Poly& p, unsigned cap) const {
    if (p.max_degree() > static_cast<int>(cap)) throw SpaceError("kernel truncation below the degree of p");
    return derivative_pairing(Y_, z(), embed(p, z()), kernel(cap));
  }

 private:
  SuperSpace X_, Y_;
  Scalar gamma_;
};

/// Monomial basis of P_k in one bank, as polynomials.
inline std::vector<Poly> monomial_basis(const SuperSpace& X, unsigned k) {
  std::vector<Poly> out;
  for (const auto& m : X.monomials(X.bank(), k)) out.push_back(Poly::monomial(X.vars(), m));
  return out;
}

template <class F>
Mat gram(const std::vector<Poly>& basis, F pair) {
  Mat g = zero_mat(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) g[a][b] = pair(basis[a], basis[b]);
  return g;
}

// ---------------------------------------------------------------------------
// L2 and Schroedinger products.

/// <f,g>_W = (1/omega) int f gbar dx on the Gaussian class, omega from the same engine.
class L2Product {
 public:
  explicit L2Product(const SuperSpace& X) : X_(X), omega_(integrate_real_scalar(X, gaussian(X.one(), X.bank(), 2), X.bank())) {}
  [[nodiscard]] const SuperSpace& X() const { return X_; }
  [[nodiscard]] const Scalar& omega() const { return omega_; }
  [[nodiscard]] Scalar operator()(const GaussianFunction& f, const GaussianFunction& g) const {
    const std::string& b = X_.bank();
    GaussianFunction h = gaussian(f.poly * g.poly.conj(), b, f.c(b) + g.c(b));
    return integrate_real_scalar(X_, h, b) / omega_;
  }

 private:
  SuperSpace X_;
  Scalar omega_;
};

/// e^{L} A e^{-L} applied to p, for L linear with even coefficients: d_v -> d_v - dL/dv.
inline Poly apply_exp_linear(const DiffOp& A, const Poly& L, const Poly& p) {
  const VarSetPtr& vs = p.vars();
  Poly out(vs);
  std::map<Mono, Poly> cache;
  for (const auto& [k, c] : A.terms()) {
    auto it = cache.find(k.second);
    if (it == cache.end()) {
      Poly q = p;
      for (std::size_t u = k.second.size(); u-- > 0 && !q.is_zero();)
        for (unsigned e = 0; e < k.second[u]; ++e) q = q.derive(u) - L.derive(u) * q;
      it = cache.emplace(k.second, std::move(q)).first;
    }
    if (!it->second.is_zero()) out += c * (Poly::monomial(vs, k.first) * it->second);
  }
  return out;
}

/**
 * W_{-1/2} as p(l) exp(-2e); psi_R sends it to psi(p) exp(-R^2), and
 * <f,g>_O = <psi_R f, psi_R g>_W.
 */
class SchrodingerProduct {
 public:
  explicit SchrodingerProduct(const Folding& psi) : psi_(psi), l2_(psi.target()) {}
  [[nodiscard]] GaussianFunction psi_R(const Poly& p) const {
    return gaussian(psi_.fold(p), psi_.target().bank(), 1);
  }
  [[nodiscard]] Scalar operator()(const Poly& p, const Poly& q) const { return l2_(psi_R(p), psi_R(q)); }
  [[nodiscard]] const L2Product& l2() const { return l2_; }

 private:
  const Folding& psi_;
  L2Product l2_;
};

// ---------------------------------------------------------------------------
// Bessel-Fischer product and kernels on P(J^-).

enum class FactorOrder { Canonical, Reversed };

class BesselFischer {
 public:
  BesselFischer(const MatrixVarSpace& S, const Scalar& lambda)
      : S_(S), lambda_(lambda), ops_(bessel_basis(S, Character{lambda})) {}
  [[nodiscard]] const MatrixVarSpace& S() const { return S_; }
  [[nodiscard]] const Scalar& lambda() const { return lambda_; }

  /// p(B_lambda) q, each l_a replaced by B_lambda(l_a); q is used as given.
  [[nodiscard]] Poly act(const Poly& p, const Poly& q, FactorOrder order = FactorOrder::Canonical) const {
    Poly r = S_.zero();
    for (const auto& [mono, c] : p.terms()) {
      auto w = mono_word(mono);
      Poly t = q;
      if (order == FactorOrder::Canonical) {
        for (std::size_t a = w.size(); a-- > 0 && !t.is_zero();) t = ops_[w[a]].apply(t);
      } else {
        for (std::size_t a = 0; a < w.size() && !t.is_zero(); ++a) t = ops_[w[a]].apply(t);
        t = Scalar(reversal_sign(*S_.vars(), w)) * t;
      }
      r += c * t;
    }
    return r;
  }
  /// <p,q>_B = p(B_lambda) qbar |_{l=0}.
  [[nodiscard]] Scalar operator()(const Poly& p, const Poly& q, FactorOrder order = FactorOrder::Canonical) const {
    return act(p, q.conj(), order).constant_term();
  }
  [[nodiscard]] const DiffOp& op(std::size_t a) const { return ops_[a]; }

 private:
  const MatrixVarSpace& S_;
  Scalar lambda_;
  std::vector<DiffOp> ops_;
};

/// (a)_k = a (a+1) ... (a+k-1).
inline Scalar pochhammer(const Scalar& a, unsigned k) {
  Scalar r(1);
  for (unsigned t = 0; t < k; ++t) r *= a + Scalar(static_cast<long>(t));
  return r;
}

/// Matrix variables in two copies z and w, with (z|w) = 1/4 sum_{i,j} z^{ji} w_ij.
class KernelSpace {
 public:
  explicit KernelSpace(const MatrixVarSpace& S) : S_(S), D_(S.vars(), "z", "w") {}
  [[nodiscard]] const DoubledVars& doubled() const { return D_; }
  [[nodiscard]] Poly z(const Poly& p) const { return D_.embed(p, 0); }
  [[nodiscard]] Poly w(const Poly& p) const { return D_.embed(p, 1); }

  [[nodiscard]] Poly pairing() const {
    Poly r(D_.vars());
    for (int i = 1; i <= S_.N(); ++i)
      for (int j = 1; j <= S_.N(); ++j) r += z(S_.raised(j, i)) * w(S_.var(i, j));
    return Scalar::rational(1, 4) * r;
  }

  /// Coefficient of (z|wbar)^k in I_{lambda,k}, for lambda in {1, -1/2}.
  static Scalar slice_coefficient(const Scalar& lambda, unsigned k) {
    Scalar kf(1);
    for (unsigned t = 2; t <= k; ++t) kf *= Scalar(static_cast<long>(t));
    auto kk = static_cast<long>(k);
    if (lambda == Scalar::rational(-1, 2))
      return Scalar(kk % 2 ? -1 : 1) / (kf * pochhammer(Scalar::rational(1, 2) - Scalar(kk), k));
    if (lambda == Scalar(1)) return Scalar(2).pow(static_cast<int>(k)) / (kf * pochhammer(Scalar(-1 - kk), k));
    throw SpaceError("kernel slices exist only for lambda in {1, -1/2}");
  }
  /// Conjugate of I_{lambda,k}(z, w): the coefficient times (z|w)^k.
  [[nodiscard]] Poly slice(const Scalar& lambda, unsigned k) const {
    return slice_coefficient(lambda, k) * pairing().pow(k);
  }
  [[nodiscard]] Poly truncated(const Scalar& lambda, unsigned cap) const {
    Poly r(D_.vars());
    Poly pw = Poly::constant(D_.vars(), Scalar(1)), zw = pairing();
    for (unsigned k = 0; k <= cap; ++k) {
      r += slice_coefficient(lambda, k) * pw;
      pw = pw * zw;
    }
    return r;
  }

  /// Op acting on the z copy of a kernel; w stays a parameter.
  [[nodiscard]] Poly act_z(const DiffOp& A, const Poly& K) const {
    Poly r(D_.vars());
    for (const auto& [wm, left] : D_.split(K)) r += z(A.apply(left)) * w(Poly::monomial(S_.vars(), wm));
    return r;
  }
  /// <p(z), K(z,w)>_B with K already conjugated; result in the w variables read as l.
  [[nodiscard]] Poly reproduce(const BesselFischer& B, const Poly& p, const Poly& K) const {
    Poly r = S_.zero();
    for (const auto& [wm, left] : D_.split(K)) r += B.act(p, left).constant_term() * Poly::monomial(S_.vars(), wm);
    return r;
  }

  /// psi on both copies, into P(K^{m|2n}) with banks z and w.
  [[nodiscard]] Poly fold(const Poly& K, const SuperSpace& T2) const {
    std::vector<Poly> img;
    for (const auto& bank : {"z", "w"})
      for (std::size_t a = 0; a < S_.dim(); ++a) {
        auto [i, j] = S_.J().basis_pairs()[a];
        img.push_back(T2.x(bank, i) * T2.x(bank, j));
      }
    return K.substitute(img, T2.vars());
  }

 private:
  const MatrixVarSpace& S_;
  DoubledVars D_;
};

/// True if p - q lies in the span of the given slice of an ideal (all of degree k).
inline bool equal_modulo(const MatrixVarSpace& S, const Poly& p, const Poly& q, const std::vector<Poly>& slice, unsigned k) {
  Poly d = p - q;
  if (d.is_zero()) return true;
  MonomialIndex idx(S.monomials(k));
  SpanBasis span(idx.size());
  for (const auto& s : slice) span.add(idx.coords(s));
  return span.contains(idx.coords(d));
}

// ---------------------------------------------------------------------------
// Skew-supersymmetry.

struct SkewReport {
  std::size_t checks = 0, failures = 0;
  std::string witness;
  [[nodiscard]] bool ok() const { return failures == 0 && checks > 0; }
};

inline Poly scale_element(const Scalar& c, const Poly& p) { return c * p; }
inline Poly add_element(const Poly& a, const Poly& b) { return a + b; }
inline GaussianFunction scale_element(const Scalar& c, const GaussianFunction& f) { return {c * f.poly, f.weight}; }
inline GaussianFunction add_element(const GaussianFunction& a, const GaussianFunction& b) {
  if (a.weight != b.weight) throw SpaceError("adding Gaussian functions of different weight");
  return {a.poly + b.poly, a.weight};
}

/**
 * <rep(X) f, g> = -(-1)^{|X||f|} <f, rep(X) g> on all basis X and family pairs,
 * then on random homogeneous X and random combinations of same-parity elements.
 */
template <class T, class Pair, class Act, class Par>
SkewReport skew_supersymmetry_check(const Realisation& rep, const std::vector<T>& family, Pair pair, Act act, Par parity,
                                    SplitMix64* rng = nullptr, int samples = 0) {
  SkewReport rp;
  const auto& g = rep.algebra();
  auto test = [&](const DiffOp& A, unsigned px, const T& f, const T& h, const std::string& what) {
    Scalar lhs = pair(act(A, f), h);
    Scalar rhs = pair(f, act(A, h));
    if ((px & parity(f)) == 0) rhs = -rhs;
    ++rp.checks;
    if (lhs != rhs) {
      if (rp.failures++ == 0) rp.witness = what + ": " + lhs.compact() + " vs " + rhs.compact();
    }
  };
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t u = 0; u < family.size(); ++u)
      for (std::size_t v = 0; v < family.size(); ++v)
        test(rep.basis(a), g.parity(a), family[u], family[v], g.name(a) + " on #" + std::to_string(u) + ",#" + std::to_string(v));
  if (!rng) return rp;
  for (int s = 0; s < samples; ++s) {
    auto px = static_cast<unsigned>(rng->uniform(0, 1));
    DiffOp A = rep(g.random_homogeneous(*rng, px));
    auto pick = [&](unsigned want) -> std::optional<T> {
      std::optional<T> acc;
      for (const auto& e : family) {
        if (parity(e) != want || rng->uniform(0, 2) == 0) continue;
        Scalar c = Scalar::gauss(rng->coeff(), rng->coeff());
        T term = scale_element(c, e);
        acc = acc ? add_element(*acc, term) : term;
      }
      return acc;
    };
    auto f = pick(static_cast<unsigned>(rng->uniform(0, 1)));
    auto h = pick(static_cast<unsigned>(rng->uniform(0, 1)));
    if (f && h) test(A, px, *f, *h, "random sample " + std::to_string(s));
  }
  return rp;
}

// ---------------------------------------------------------------------------
// The fundamental symmetry S_F(z_{i1} ... z_{ik}) = z^{ik} ... z^{i1}.

/// Reversal of each monomial word, then every letter raised.
inline Poly fundamental_symmetry(const SuperSpace& X, const Poly& p) {
  Poly r = X.zero();
  std::size_t off = X.var(X.bank(), 1);
  for (const auto& [mono, c] : p.terms()) {
    auto w = mono_word(mono);
    Poly t = X.constant(c);
    for (std::size_t a = w.size(); a-- > 0;) t = t * X.raised(X.bank(), static_cast<int>(w[a] - off) + 1);
    r += t;
  }
  return r;
}

struct PositivityReport {
  bool s4_identity = true, isometry = true, hermitian = true, positive = true;
  std::vector<std::vector<Scalar>> minors;  // per degree
  std::string witness;
  [[nodiscard]] bool ok() const { return s4_identity && isometry && hermitian && positive; }
};

/// (p,q) -> <p, S_F q>_F on P_k, k <= cap: S_F^4 = 1, isometry, Hermitian, positive leading minors.
inline PositivityReport positivity_check(const SuperSpace& X, unsigned cap) {
  PositivityReport rp;
  auto S = [&](const Poly& p) { return fundamental_symmetry(X, p); };
  for (unsigned k = 0; k <= cap; ++k) {
    auto basis = monomial_basis(X, k);
    for (const auto& e : basis)
      if (S(S(S(S(e)))) != e && rp.s4_identity) {
        rp.s4_identity = false;
        rp.witness = "S_F^4 on " + e.str();
      }
    for (const auto& a : basis)
      for (const auto& b : basis)
        if (fischer(X, S(a), S(b)) != fischer(X, a, b) && rp.isometry) {
          rp.isometry = false;
          rp.witness = "isometry on " + a.str() + ", " + b.str();
        }
    Mat G = gram(basis, [&](const Poly& a, const Poly& b) { return fischer(X, a, S(b)); });
    for (std::size_t a = 0; a < G.size(); ++a)
      for (std::size_t b = 0; b < G.size(); ++b)
        if (G[b][a] != G[a][b].conj() && rp.hermitian) {
          rp.hermitian = false;
          rp.witness = "Gram not Hermitian at degree " + std::to_string(k);
        }
    auto mins = leading_minors(G);
    for (const auto& d : mins)
      if ((!d.is_rational() || sgn(d.rational_value()) <= 0) && rp.positive) {
        rp.positive = false;
        rp.witness = "leading minor " + d.compact() + " at degree " + std::to_string(k);
      }
    rp.minors.push_back(std::move(mins));
  }
  return rp;
}

}  // namespace spo
