// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "spo/bessel.hpp"
#include "spo/gaussian.hpp"

namespace spo {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// alpha in N^m x {0,1}^{2n}.
struct HermiteIndex {
  std::vector<unsigned> alpha;

  [[nodiscard]] unsigned degree() const {
    unsigned d = 0;
    for (unsigned a : alpha) d += a;
    return d;
  }
  void validate(const SuperSpace& X) const {
    if (alpha.size() != static_cast<std::size_t>(X.N()))
      throw TransformError("hermite index needs " + std::to_string(X.N()) + " entries");
    for (int i = X.m() + 1; i <= X.N(); ++i)
      if (alpha[static_cast<std::size_t>(i - 1)] > 1) throw TransformError("odd slots of a hermite index are 0 or 1");
  }
  /// x^alpha in the first bank of X.
  [[nodiscard]] Poly monomial(const SuperSpace& X) const {
    validate(X);
    Mono m(X.vars()->size(), 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) m[X.var(X.bank(), static_cast<int>(i + 1))] = static_cast<std::uint8_t>(alpha[i]);
    return Poly::monomial(X.vars(), m);
  }
  static HermiteIndex from_mono(const SuperSpace& X, const Mono& m) {
    HermiteIndex h;
    for (int i = 1; i <= X.N(); ++i) h.alpha.push_back(m[X.var(X.bank(), i)]);
    return h;
  }
  [[nodiscard]] std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
    return s;
  }
};

/// All indices with |alpha| = k, in monomial order.
inline std::vector<HermiteIndex> hermite_indices(const SuperSpace& X, unsigned k) {
  std::vector<HermiteIndex> out;
  for (const auto& m : X.monomials(X.bank(), k)) out.push_back(HermiteIndex::from_mono(X, m));
  return out;
}

enum class HermiteVariant { h, H, h_tilde, H_tilde };

inline HermiteVariant parse_hermite_variant(const std::string& s) {
  if (s == "h") return HermiteVariant::h;
  if (s == "H") return HermiteVariant::H;
  if (s == "h_tilde") return HermiteVariant::h_tilde;
  if (s == "H_tilde") return HermiteVariant::H_tilde;
  throw TransformError("unknown hermite variant '" + s + "'");
}

/// d^alpha = d_1^{a_1} ... d_N^{a_N} with lowered derivatives.
inline DiffOp d_alpha(const SuperSpace& X, const HermiteIndex& a) {
  a.validate(X);
  DiffOp r = X.id();
  for (int i = 1; i <= X.N(); ++i)
    for (unsigned e = 0; e < a.alpha[static_cast<std::size_t>(i - 1)]; ++e) r = r * X.dl(i);
  return r;
}

/**
 * h_a = (-1)^|a| exp(R^2/2) d^a exp(-R^2), H_a = exp(R^2/2) h_a,
 * h~_a = (-1)^|a| 2^-|a| exp(R^2) d^a exp(-2R^2), H~_a = exp(R^2) h~_a.
 * The H variants come back with weight 0.
 */
inline GaussianFunction hermite(const SuperSpace& X, const HermiteIndex& a, HermiteVariant v) {
  const std::string& b = X.bank();
  bool tilde = v == HermiteVariant::h_tilde || v == HermiteVariant::H_tilde;
  unsigned k = a.degree();
  GaussianFunction g = apply(X, d_alpha(X, a), gaussian(X.one(), b, tilde ? 2 : 1));
  Scalar c = Scalar(k % 2 ? -1 : 1);
  if (tilde) c *= Scalar(mpq_class(1, mpz_class(1) << k));
  Poly p = c * g.poly;
  switch (v) {
    case HermiteVariant::h: return gaussian(p, b, mpq_class(1, 2));
    case HermiteVariant::h_tilde: return gaussian(p, b, 1);
    default: return gaussian(p, b, 0);
  }
}

inline Poly hermite_poly(const SuperSpace& X, const HermiteIndex& a, HermiteVariant v) { return hermite(X, a, v).poly; }

namespace detail {

/// Images sending each variable of X to bank `bank` of Y, plus shift[i] on even slots.
inline std::vector<Poly> bank_images(const SuperSpace& X, const SuperSpace& Y, const std::string& bank,
                                     const std::vector<Poly>& shift = {}) {
  std::vector<Poly> img(X.vars()->size(), Y.zero());
  for (int i = 1; i <= X.N(); ++i) {
    Poly t = Y.x(bank, i);
    if (!shift.empty() && i <= X.m()) t += shift[static_cast<std::size_t>(i - 1)];
    img[X.var(X.bank(), i)] = t;
  }
  return img;
}

/// Reads bank `bank` of Y back into X; any other variable is an error.
inline Poly from_bank(const Poly& p, const SuperSpace& Y, const std::string& bank, const SuperSpace& X) {
  std::vector<Poly> img(Y.vars()->size(), X.zero());
  std::size_t off = Y.var(bank, 1);
  for (int i = 1; i <= X.N(); ++i) img[off + static_cast<std::size_t>(i - 1)] = X.x(i);
  for (const auto& [m, c] : p.terms())
    for (std::size_t u = 0; u < m.size(); ++u)
      if (m[u] && (u < off || u >= off + static_cast<std::size_t>(X.N())))
        throw TransformError("result depends on a variable outside bank " + bank);
  return p.substitute(img, X.vars());
}

/// sum over odd i of a^i b_i.
inline Poly odd_dot(const SuperSpace& Y, const std::string& a, const std::string& b) {
  Poly p = Y.zero();
  for (int i = Y.m() + 1; i <= Y.N(); ++i) p += Y.raised(a, i) * Y.x(b, i);
  return p;
}

}  // namespace detail

enum class SbMethod { Moments, HermiteBasis };

/**
 * SB(f)(z) = (1/omega) exp(-R^2_z/2) int exp(2 z.x) exp(-R^2_x) f(x) dx on
 * f = p exp(-R^2), and its inverse through the complex integral. Outputs live
 * in the bank of X, read as z.
 */
class SegalBargmann {
 public:
  explicit SegalBargmann(const SuperSpace& X)
      : X_(X), Y_(X.m(), X.n(), {"x", "z"}), Z_(X.m(), X.n(), {"z", "zbar", "x"}) {
    omega_ = integrate_real_scalar(X_, gaussian(X_.one(), X_.bank(), 2), X_.bank());
    gamma_ = integrate_complex_scalar(Z_, Z_.one(), "z", "zbar");
  }
  [[nodiscard]] const SuperSpace& X() const { return X_; }
  [[nodiscard]] const Scalar& omega() const { return omega_; }
  [[nodiscard]] const Scalar& gamma() const { return gamma_; }

  [[nodiscard]] Poly operator()(const GaussianFunction& f, SbMethod method = SbMethod::Moments) const {
    check_domain(f);
    return method == SbMethod::Moments ? moments(f.poly) : hermite_basis(f.poly);
  }

  /**
   * Moments: x_i = u_i + z_i/2 on the even slots turns
   * exp(2 z.x - 2R^2_x) into exp(-2R^2_u) exp(R^2_z/2) there, which cancels
   * the even part of the prefactor. The odd part stays nilpotent.
   */
  [[nodiscard]] Poly moments(const Poly& p) const {
    std::vector<Poly> shift;
    for (int i = 1; i <= X_.m(); ++i) shift.push_back(Scalar::rational(1, 2) * Y_.x("z", i));
    Poly q = p.substitute(detail::bank_images(X_, Y_, "x", shift), Y_.vars());
    if (X_.n() > 0) q = q * exp_series(Scalar(2) * detail::odd_dot(Y_, "z", "x"));
    Poly r = integrate_real(Y_, gaussian(q, "x", 2), "x");
    if (X_.n() > 0) r = r * exp_series(Scalar::rational(-1, 2) * odd_r2(Y_, "z"));
    return (Scalar(1) / omega_) * detail::from_bank(r, Y_, "z", X_);
  }

  /// Triangular expansion of p exp(-R^2) in h~_alpha, then h~_alpha -> z^alpha.
  [[nodiscard]] Poly hermite_basis(const Poly& p) const {
    Poly rest = p, out = X_.zero();
    while (!rest.is_zero()) {
      int d = rest.max_degree();
      Poly top = rest.degree_part(static_cast<unsigned>(d));
      for (const auto& [m, c] : top.terms()) {
        auto a = HermiteIndex::from_mono(X_, m);
        const Poly& H = hermite_tilde(a);
        Scalar lead = H.degree_part(static_cast<unsigned>(d)).terms().at(m);
        Scalar t = c / lead;
        rest -= t * H;
        out += t * a.monomial(X_);
      }
      if (!rest.is_zero() && rest.max_degree() >= d) throw TransformError("hermite expansion is not triangular");
    }
    return out;
  }

  /// (1/gamma) exp(-R^2_x) int exp(-||z||^2) exp(-R^2_zbar/2) exp(2 zbar.x) p(z) dz.
  [[nodiscard]] GaussianFunction inverse(const Poly& p) const {
    Poly pz = p.substitute(detail::bank_images(X_, Z_, "z"), Z_.vars());
    unsigned cap = p.is_zero() ? 0U : static_cast<unsigned>(p.max_degree());
    std::size_t off = Z_.var("zbar", 1);
    auto keep = [&, cap](const Mono& m) {
      unsigned e = 0;
      for (int i = 0; i < Z_.m(); ++i) e += m[off + static_cast<std::size_t>(i)];
      return e <= cap;
    };
    Poly a = Scalar(2) * Z_.dot("zbar", "x") + Scalar::rational(-1, 2) * Z_.R2("zbar");
    Poly r = integrate_complex(Z_, pz * exp_series(a, keep), "z", "zbar");
    return gaussian((Scalar(1) / gamma_) * detail::from_bank(r, Z_, "x", X_), X_.bank(), 1);
  }

  [[nodiscard]] const Poly& hermite_tilde(const HermiteIndex& a) const {
    auto it = cache_.find(a.alpha);
    if (it == cache_.end()) it = cache_.emplace(a.alpha, hermite_poly(X_, a, HermiteVariant::H_tilde)).first;
    return it->second;
  }

 private:
  void check_domain(const GaussianFunction& f) const {
    for (const auto& [b, c] : f.weight)
      if (b != X_.bank() || c != 1) throw TransformError("Segal-Bargmann input must carry weight exactly 1");
    if (f.c(X_.bank()) != 1) throw TransformError("Segal-Bargmann input must carry weight exactly 1");
  }

  SuperSpace X_, Y_, Z_;
  Scalar omega_, gamma_;
  mutable std::map<std::vector<unsigned>, Poly> cache_;
};

/**
 * F^{+-}(f)(x) = (2^m pi^M)^{-1/2} int exp(+-i x.l) f(l) dl for f = p exp(-c R^2),
 * c > 0. The image carries weight 1/(4c).
 */
class Fourier {
 public:
  explicit Fourier(const SuperSpace& X) : X_(X), Y_(X.m(), X.n(), {"l", "x"}) {
    norm_ = Scalar::sqrt2_pow(-X.m()) * Scalar::sqrt_pi_pow(-X.M());
  }
  [[nodiscard]] const SuperSpace& X() const { return X_; }

  [[nodiscard]] GaussianFunction operator()(const GaussianFunction& f, int sign) const {
    if (sign != 1 && sign != -1) throw TransformError("fourier sign must be +1 or -1");
    const std::string& b = X_.bank();
    for (const auto& [bank, c] : f.weight)
      if (bank != b) throw TransformError("fourier input has weight on a foreign bank");
    mpq_class c = f.c(b);
    if (sgn(c) <= 0) throw TransformError("fourier input needs a positive Gaussian weight");
    Scalar s = Scalar(sign) * Scalar::i();
    // l_i = u_i + s x_i / (2c) on even slots: s x.l - c l^2 -> -c u^2 - x^2/(4c).
    std::vector<Poly> shift;
    for (int i = 1; i <= X_.m(); ++i) shift.push_back((s * Scalar(mpq_class(1) / (2 * c))) * Y_.x("x", i));
    Poly q = f.poly.substitute(detail::bank_images(X_, Y_, "l", shift), Y_.vars());
    if (X_.n() > 0) q = q * exp_series(s * detail::odd_dot(Y_, "x", "l"));
    Poly r = integrate_real(Y_, gaussian(q, "l", c), "l");
    mpq_class w = mpq_class(1) / (4 * c);
    w.canonicalize();
    if (X_.n() > 0) r = r * exp_series(Scalar(w) * odd_r2(Y_, "x"));
    return gaussian(norm_ * detail::from_bank(r, Y_, "x", X_), b, w);
  }

 private:
  SuperSpace X_, Y_;
  Scalar norm_;
};

/// psi_C^{-1} o SB o psi_R on P(J^-): even polynomials only, read back through unfold.
class SegalBargmannHat {
 public:
  explicit SegalBargmannHat(const Folding& psi) : psi_(psi), sb_(psi.target()) {}
  [[nodiscard]] const SegalBargmann& sb() const { return sb_; }
  /// SB(psi_R p), an even polynomial on C^{m|2n}.
  [[nodiscard]] Poly folded(const Poly& p) const {
    return sb_(gaussian(psi_.fold(p), psi_.target().bank(), 1));
  }
  [[nodiscard]] Poly operator()(const Poly& p) const {
    Poly q = folded(p);
    for (const auto& [m, c] : q.terms()) {
      unsigned d = 0;
      for (auto e : m) d += e;
      if (d % 2) throw TransformError("Segal-Bargmann image of a folded input has odd degree");
    }
    return psi_.unfold(q);
  }

 private:
  const Folding& psi_;
  SegalBargmann sb_;
};

}  // namespace spo
