// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "spo/superspace.hpp"

namespace spo {

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// p(x) * prod_b exp(-c_b R^2_b). Banks without an entry carry weight 0.
struct GaussianFunction {
  Poly poly;
  std::map<std::string, mpq_class> weight;

  [[nodiscard]] mpq_class c(const std::string& bank) const {
    auto it = weight.find(bank);
    return it == weight.end() ? mpq_class(0) : it->second;
  }
  friend bool operator==(const GaussianFunction& a, const GaussianFunction& b) {
    return a.poly == b.poly && a.weight == b.weight;
  }
};

inline GaussianFunction gaussian(const Poly& p, const std::string& bank, const mpq_class& c) {
  GaussianFunction g{p, {}};
  if (c != 0) g.weight[bank] = c;
  return g;
}

/// Exact sqrt of a nonnegative rational, allowing one factor sqrt2.
inline Scalar sqrt_rational(mpq_class q) {
  q.canonicalize();
  if (sgn(q) < 0) throw IntegrationError("square root of a negative rational");
  if (sgn(q) == 0) return Scalar();
  mpz_class prod = q.get_num() * q.get_den();
  bool two = false;
  mpz_class r;
  if (mpz_perfect_square_p(prod.get_mpz_t()) == 0) {
    if (prod % 2 != 0) throw IntegrationError("no exact square root for " + q.get_str());
    prod /= 2;
    two = true;
    if (mpz_perfect_square_p(prod.get_mpz_t()) == 0) throw IntegrationError("no exact square root for " + q.get_str());
  }
  mpz_sqrt(r.get_mpz_t(), prod.get_mpz_t());
  Scalar s(mpq_class(r, q.get_den()));
  return two ? s * Scalar::sqrt2() : s;
}

/// exp(a) for nilpotent a, optionally truncated by keep(monomial).
inline Poly exp_series(const Poly& a, const std::function<bool(const Mono&)>& keep = {}) {
  Poly r = Poly::constant(a.vars(), Scalar(1));
  Poly term = r;
  for (long k = 1;; ++k) {
    term = Scalar::rational(1, k) * (term * a);
    if (keep) term = term.filter(keep);
    if (term.is_zero()) return r;
    if (k > 256) throw IntegrationError("exponential series does not terminate");
    r += term;
  }
}

/// Part of R^2_bank built from the odd variables only.
inline Poly odd_r2(const SuperSpace& S, const std::string& bank) {
  Poly p = S.zero();
  for (int i = S.m() + 1; i <= S.N(); ++i)
    for (int j = S.m() + 1; j <= S.N(); ++j)
      if (!S.beta_inv(i, j).is_zero()) p += S.beta_inv(i, j) * (S.x(bank, i) * S.x(bank, j));
  return p;
}

/// d/dx_v (p E) = (d_v p - c (d_v R^2) p) E with E = exp(-c R^2_bank).
inline Poly twisted_derive(const SuperSpace& S, const GaussianFunction& g, const Poly& p, std::size_t v) {
  const std::string& bank = S.banks()[v / static_cast<std::size_t>(S.N())];
  mpq_class c = g.c(bank);
  Poly r = p.derive(v);
  if (c != 0) r -= Scalar(c) * (S.R2(bank).derive(v) * p);
  return r;
}

/// A acting on the Gaussian class; weights are preserved.
inline GaussianFunction apply(const SuperSpace& S, const DiffOp& A, const GaussianFunction& g) {
  GaussianFunction out{S.zero(), g.weight};
  std::map<Mono, Poly> cache;
  for (const auto& [k, c] : A.terms()) {
    auto it = cache.find(k.second);
    if (it == cache.end()) {
      Poly q = g.poly;
      for (std::size_t u = k.second.size(); u-- > 0 && !q.is_zero();)
        for (unsigned e = 0; e < k.second[u]; ++e) q = twisted_derive(S, g, q, u);
      it = cache.emplace(k.second, std::move(q)).first;
    }
    if (!it->second.is_zero()) out.poly += c * (Poly::monomial(S.vars(), k.first) * it->second);
  }
  return out;
}

inline GaussianFunction operator*(const Poly& p, const GaussianFunction& g) { return {p * g.poly, g.weight}; }

/// Berezin integral pi^{-n} d_{m+2n} ... d_{m+1} over the odd variables of one bank.
inline Poly berezin(const SuperSpace& S, const Poly& p, const std::string& bank) {
  Poly q = p;
  for (int i = S.m() + 1; i <= S.N() && !q.is_zero(); ++i) q = q.derive(S.var(bank, i));
  return Scalar::pi_pow(-S.n()) * q;
}

/// int_R x^k exp(-c x^2) dx.
inline Scalar even_moment(unsigned k, const mpq_class& c) {
  if (k & 1U) return Scalar();
  if (sgn(c) <= 0) throw IntegrationError("divergent Gaussian moment");
  unsigned h = k / 2;
  mpz_class dfact = 1;
  for (unsigned t = 1; t < k; t += 2) dfact *= t;
  mpq_class cq = c;
  mpq_class ch = 1;
  for (unsigned t = 0; t < h; ++t) ch /= cq;
  mpq_class coef = ch * mpq_class(dfact) / mpq_class(mpz_class(1) << h);
  return Scalar(coef) * Scalar::sqrt_pi_pow(1) / sqrt_rational(cq);
}

/**
 * int over R^{m|2n} in one bank: odd part of the weight expanded, Berezin
 * integral, then even moments. Other banks act as parameters.
 */
inline Poly integrate_real(const SuperSpace& S, const GaussianFunction& g, const std::string& bank) {
  for (const auto& [b, c] : g.weight)
    if (b != bank && c != 0) throw IntegrationError("weight on a parameter bank");
  mpq_class c = g.c(bank);
  Poly q = g.poly;
  if (c != 0 && S.n() > 0) q = q * exp_series(Scalar(-c) * odd_r2(S, bank));
  q = berezin(S, q, bank);
  if (S.m() == 0 || q.is_zero()) return q;
  if (sgn(c) <= 0) throw IntegrationError("divergent integral: no Gaussian decay in the even variables");
  std::size_t off = S.var(bank, 1);
  Poly r = S.zero();
  std::map<unsigned, Scalar> mom;
  for (const auto& [mono, coef] : q.terms()) {
    Scalar v = coef;
    Mono rest = mono;
    for (int i = 0; i < S.m() && !v.is_zero(); ++i) {
      unsigned e = mono[off + i];
      auto it = mom.find(e);
      if (it == mom.end()) it = mom.emplace(e, even_moment(e, c)).first;
      v *= it->second;
      rest[off + i] = 0;
    }
    r.add_term(rest, v);
  }
  return r;
}

inline Scalar integrate_real_scalar(const SuperSpace& S, const GaussianFunction& g, const std::string& bank) {
  Poly r = integrate_real(S, g, bank);
  if (r.max_degree() > 0) throw IntegrationError("integral depends on parameters");
  return r.constant_term();
}

/**
 * int over C^{m|2n} of exp(-||z||^2) p: complex Berezin integral
 * pi^{-2n} d_{zbar_N} d_{z_N} ... d_{zbar_{m+1}} d_{z_{m+1}} and even moments
 * int z^a zbar^b exp(-|z|^2) = pi a! delta_ab.
 */
inline Poly integrate_complex(const SuperSpace& S, const Poly& p, const std::string& z, const std::string& zbar) {
  Poly odd = S.zero();
  for (int i = S.m() + 1; i <= S.N(); ++i) odd += S.raised(z, i) * S.x(zbar, i);
  Poly q = p;
  if (S.n() > 0) q = q * exp_series(-odd);
  for (int i = S.m() + 1; i <= S.N() && !q.is_zero(); ++i) {
    q = q.derive(S.var(z, i));
    q = q.derive(S.var(zbar, i));
  }
  q = Scalar::pi_pow(-2 * S.n()) * q;
  Poly r = S.zero();
  for (const auto& [mono, coef] : q.terms()) {
    Scalar v = coef;
    Mono rest = mono;
    for (int i = 1; i <= S.m(); ++i) {
      std::size_t a = S.var(z, i), b = S.var(zbar, i);
      if (mono[a] != mono[b]) {
        v = Scalar();
        break;
      }
      mpz_class f = 1;
      for (unsigned t = 2; t <= mono[a]; ++t) f *= t;
      v *= Scalar(mpq_class(f)) * Scalar::pi_pow(1);
      rest[a] = rest[b] = 0;
    }
    r.add_term(rest, v);
  }
  return r;
}

inline Scalar integrate_complex_scalar(const SuperSpace& S, const Poly& p, const std::string& z,
                                       const std::string& zbar) {
  Poly r = integrate_complex(S, p, z, zbar);
  if (r.max_degree() > 0) throw IntegrationError("integral depends on parameters");
  return r.constant_term();
}

/// omega = int exp(-2 R^2) dx, computed by the engine.
inline Scalar omega(int m, int n) {
  SuperSpace S(m, n);
  return integrate_real_scalar(S, gaussian(S.one(), "x", 2), "x");
}

/// gamma = int exp(-||z||^2) dz, computed by the engine.
inline Scalar gamma(int m, int n) {
  SuperSpace S(m, n, {"z", "zbar"});
  return integrate_complex_scalar(S, S.one(), "z", "zbar");
}

/// Closed forms as printed: 2^n (pi/2)^{M/2} and pi^M.
inline Scalar omega_closed_form(int m, int n) {
  int M = m - 2 * n;
  return Scalar::sqrt2_pow(2 * n - M) * Scalar::sqrt_pi_pow(M);
}
inline Scalar gamma_closed_form(int m, int n) { return Scalar::pi_pow(m - 2 * n); }

}  // namespace spo
