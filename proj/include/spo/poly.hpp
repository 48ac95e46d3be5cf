// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spo/scalar.hpp"

namespace spo {

struct SpaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * Ordered list of variables with commutation factors eps(a,b) = +-1:
 * x_a x_b = eps(a,b) x_b x_a. A variable with eps(a,a) = -1 squares to zero.
 * For ordinary superspaces eps(a,b) = (-1)^{|a||b|}.
 */
struct VarSet {
  std::vector<std::string> names;
  std::vector<std::uint8_t> parity;
  std::vector<std::int8_t> eps;

  [[nodiscard]] std::size_t size() const { return names.size(); }
  [[nodiscard]] int sign(std::size_t a, std::size_t b) const { return eps[a * size() + b]; }
  [[nodiscard]] bool nilpotent(std::size_t a) const { return sign(a, a) < 0; }
  [[nodiscard]] std::size_t index(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j)
      if (names[j] == name) return j;
    throw SpaceError("unknown variable '" + name + "'");
  }
};
using VarSetPtr = std::shared_ptr<const VarSet>;

/// Superspace rule eps(a,b) = (-1)^{|a||b|}.
inline VarSetPtr make_varset(std::vector<std::string> names, std::vector<std::uint8_t> parity) {
  auto vs = std::make_shared<VarSet>();
  std::size_t n = names.size();
  vs->names = std::move(names);
  vs->parity = std::move(parity);
  vs->eps.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      vs->eps[a * n + b] = static_cast<std::int8_t>((vs->parity[a] & vs->parity[b]) ? -1 : 1);
  return vs;
}

/// Rule eps(a,b) = -(-1)^{|a||b|}: parity-flipped Grassmann superalgebra.
inline VarSetPtr make_flipped_varset(std::vector<std::string> names, std::vector<std::uint8_t> parity) {
  auto vs = std::make_shared<VarSet>();
  std::size_t n = names.size();
  vs->names = std::move(names);
  vs->parity = std::move(parity);
  vs->eps.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      vs->eps[a * n + b] = static_cast<std::int8_t>((vs->parity[a] & vs->parity[b]) ? 1 : -1);
  return vs;
}

using Mono = std::vector<std::uint8_t>;

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    unsigned da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return a > b;
  }
};

inline unsigned mono_degree(const Mono& a) {
  unsigned d = 0;
  for (auto e : a) d += e;
  return d;
}

inline unsigned mono_parity(const VarSet& vs, const Mono& a) {
  unsigned p = 0;
  for (std::size_t j = 0; j < a.size(); ++j) p += vs.parity[j] * a[j];
  return p & 1U;
}

/// x^a x^b = sign x^{a+b}; sign 0 when a nilpotent variable repeats.
inline int mono_mul(const VarSet& vs, const Mono& a, const Mono& b, Mono& out) {
  std::size_t n = a.size();
  out.resize(n);
  int sign = 1;
  for (std::size_t u = 0; u < n; ++u) {
    out[u] = static_cast<std::uint8_t>(a[u] + b[u]);
    if (out[u] > 1 && vs.nilpotent(u) ) return 0;
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (!(b[u] & 1U)) continue;
    for (std::size_t w = u + 1; w < n; ++w)
      if ((a[w] & 1U) && vs.sign(w, u) < 0) sign = -sign;
  }
  return sign;
}

/// Left derivative d/dx_v of x^a = coef * x^out.
inline long mono_derive(const VarSet& vs, std::size_t v, const Mono& a, Mono& out) {
  if (a[v] == 0) return 0;
  long c = a[v];
  for (std::size_t u = 0; u < v; ++u)
    if ((a[u] & 1U) && vs.sign(v, u) < 0) c = -c;
  out = a;
  --out[v];
  return c;
}

/// Sign picked up when an object shaped like x_v moves past x^a.
inline int pass_sign(const VarSet& vs, std::size_t v, const Mono& a) {
  int s = 1;
  for (std::size_t u = 0; u < a.size(); ++u)
    if ((a[u] & 1U) && vs.sign(v, u) < 0) s = -s;
  return s;
}

/// Sparse supercommutative polynomial with exact coefficients.
class Poly {
 public:
  using Terms = std::map<Mono, Scalar, MonoLess>;

  Poly() = default;
  explicit Poly(VarSetPtr vs) : vs_(std::move(vs)) {}

  static Poly constant(VarSetPtr vs, const Scalar& c) {
    Poly p(vs);
    if (!c.is_zero()) p.t_[Mono(p.vs_->size(), 0)] = c;
    return p;
  }
  static Poly var(VarSetPtr vs, std::size_t v) {
    Poly p(vs);
    Mono m(p.vs_->size(), 0);
    m[v] = 1;
    p.t_[m] = Scalar(1);
    return p;
  }
  static Poly monomial(VarSetPtr vs, const Mono& m, const Scalar& c = Scalar(1)) {
    Poly p(vs);
    if (!c.is_zero()) p.t_[m] = c;
    return p;
  }

  [[nodiscard]] const VarSetPtr& vars() const { return vs_; }
  [[nodiscard]] const Terms& terms() const { return t_; }
  [[nodiscard]] bool is_zero() const { return t_.empty(); }
  [[nodiscard]] std::size_t size() const { return t_.size(); }

  void add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  [[nodiscard]] Scalar coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Scalar() : it->second;
  }
  [[nodiscard]] Scalar constant_term() const {
    if (!vs_) return Scalar();
    return coeff(Mono(vs_->size(), 0));
  }

  friend Poly operator+(Poly a, const Poly& b) {
    a.adopt(b);
    for (const auto& [m, c] : b.t_) a.add_term(m, c);
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    a.adopt(b);
    for (const auto& [m, c] : b.t_) a.add_term(m, -c);
    return a;
  }
  friend Poly operator-(Poly a) {
    for (auto& [m, c] : a.t_) c = -c;
    return a;
  }
  friend Poly operator*(const Scalar& s, Poly a) {
    if (s.is_zero()) {
      a.t_.clear();
      return a;
    }
    for (auto& [m, c] : a.t_) c *= s;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.vs_ ? a.vs_ : b.vs_);
    if (a.t_.empty() || b.t_.empty()) return r;
    a.check_same(b);
    Mono out;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        int s = mono_mul(*a.vs_, ma, mb, out);
        if (s == 0) continue;
        r.add_term(out, s > 0 ? ca * cb : -(ca * cb));
      }
    return r;
  }
  Poly& operator+=(const Poly& b) {
    adopt(b);
    for (const auto& [m, c] : b.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& b) {
    adopt(b);
    for (const auto& [m, c] : b.t_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  [[nodiscard]] Poly pow(unsigned e) const {
    Poly r = constant(vs_, Scalar(1)), b = *this;
    while (e) {
      if (e & 1U) r *= b;
      e >>= 1U;
      if (e) b *= b;
    }
    return r;
  }

  /// Coefficient-wise complex conjugation; variables untouched.
  [[nodiscard]] Poly conj() const {
    Poly r(vs_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, c.conj());
    return r;
  }

  /// Left derivative with respect to variable v.
  [[nodiscard]] Poly derive(std::size_t v) const {
    Poly r(vs_);
    Mono out;
    for (const auto& [m, c] : t_) {
      long k = mono_derive(*vs_, v, m, out);
      if (k != 0) r.add_term(out, Scalar(k) * c);
    }
    return r;
  }

  /// Component of given parity (0 or 1).
  [[nodiscard]] Poly parity_part(unsigned p) const {
    Poly r(vs_);
    for (const auto& [m, c] : t_)
      if (mono_parity(*vs_, m) == p) r.t_.emplace(m, c);
    return r;
  }
  /// Homogeneous part of total degree k.
  [[nodiscard]] Poly degree_part(unsigned k) const {
    Poly r(vs_);
    for (const auto& [m, c] : t_)
      if (mono_degree(m) == k) r.t_.emplace(m, c);
    return r;
  }
  /// Restriction to monomials accepted by keep(m).
  template <class F>
  [[nodiscard]] Poly filter(F keep) const {
    Poly r(vs_);
    for (const auto& [m, c] : t_)
      if (keep(m)) r.t_.emplace(m, c);
    return r;
  }
  [[nodiscard]] int max_degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(mono_degree(m)));
    return d;
  }
  /// Parity if homogeneous, -1 if mixed, 0 for the zero polynomial.
  [[nodiscard]] int parity() const {
    int p = -2;
    for (const auto& [m, c] : t_) {
      int q = static_cast<int>(mono_parity(*vs_, m));
      if (p == -2) p = q;
      else if (p != q) return -1;
    }
    return p == -2 ? 0 : p;
  }

  /**
   * Algebra homomorphism defined by images of the variables. Images must have
   * the parity of their variable and live in a common VarSet.
   */
  [[nodiscard]] Poly substitute(const std::vector<Poly>& images, const VarSetPtr& target) const {
    Poly r(target);
    for (const auto& [m, c] : t_) {
      Poly term = constant(target, c);
      for (std::size_t u = 0; u < m.size(); ++u)
        for (unsigned e = 0; e < m[u]; ++e) term = term * images[u];
      r += term;
    }
    return r;
  }

  /// Renders e.g. "3*z1^2*z2 + -1/2*z3".
  [[nodiscard]] std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      if (!first) s += " + ";
      first = false;
      std::string mono = mono_str(*vs_, it->first);
      if (mono.empty()) {
        s += it->second.compact();
      } else if (it->second.is_one()) {
        s += mono;
      } else {
        s += it->second.compact() + "*" + mono;
      }
    }
    return s;
  }

  static std::string mono_str(const VarSet& vs, const Mono& m) {
    std::string s;
    for (std::size_t u = 0; u < m.size(); ++u) {
      if (!m[u]) continue;
      if (!s.empty()) s += "*";
      s += vs.names[u];
      if (m[u] > 1) s += "^" + std::to_string(m[u]);
    }
    return s;
  }

  void check_same(const Poly& o) const {
    if (vs_ && o.vs_ && vs_ != o.vs_ && vs_->names != o.vs_->names)
      throw SpaceError("polynomials live in different variable sets");
  }

 private:
  VarSetPtr vs_;
  Terms t_;

  void adopt(const Poly& o) {
    if (!vs_) vs_ = o.vs_;
    else check_same(o);
  }
};

inline Poly operator*(const Poly& a, const Scalar& s) { return s * a; }

/**
 * Differential operator in normal form: sum of c * x^a d^b with every
 * multiplier to the left of every derivative. Derivative words obey the same
 * commutation factors as the variables, so normal forms are unique.
 */
class DiffOp {
 public:
  using Key = std::pair<Mono, Mono>;
  using Terms = std::map<Key, Scalar>;

  DiffOp() = default;
  explicit DiffOp(VarSetPtr vs) : vs_(std::move(vs)) {}

  static DiffOp identity(VarSetPtr vs) { return scalar(std::move(vs), Scalar(1)); }
  static DiffOp scalar(VarSetPtr vs, const Scalar& c) {
    DiffOp d(vs);
    Mono z(d.vs_->size(), 0);
    if (!c.is_zero()) d.t_[{z, z}] = c;
    return d;
  }
  static DiffOp mult(const Poly& p) {
    DiffOp d(p.vars());
    Mono z(d.vs_->size(), 0);
    for (const auto& [m, c] : p.terms()) d.t_[{m, z}] = c;
    return d;
  }
  static DiffOp deriv(VarSetPtr vs, std::size_t v) {
    DiffOp d(vs);
    Mono z(d.vs_->size(), 0), w = z;
    w[v] = 1;
    d.t_[{z, w}] = Scalar(1);
    return d;
  }

  [[nodiscard]] const VarSetPtr& vars() const { return vs_; }
  [[nodiscard]] const Terms& terms() const { return t_; }
  [[nodiscard]] bool is_zero() const { return t_.empty(); }

  void add_term(const Mono& a, const Mono& b, const Scalar& c) {
    if (c.is_zero()) return;
    Key k{a, b};
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(std::move(k), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend DiffOp operator+(DiffOp a, const DiffOp& b) {
    if (!a.vs_) a.vs_ = b.vs_;
    for (const auto& [k, c] : b.t_) a.add_term(k.first, k.second, c);
    return a;
  }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) {
    if (!a.vs_) a.vs_ = b.vs_;
    for (const auto& [k, c] : b.t_) a.add_term(k.first, k.second, -c);
    return a;
  }
  friend DiffOp operator-(DiffOp a) {
    for (auto& [k, c] : a.t_) c = -c;
    return a;
  }
  friend DiffOp operator*(const Scalar& s, DiffOp a) {
    if (s.is_zero()) {
      a.t_.clear();
      return a;
    }
    for (auto& [k, c] : a.t_) c *= s;
    return a;
  }
  DiffOp& operator+=(const DiffOp& b) {
    if (!vs_) vs_ = b.vs_;
    for (const auto& [k, c] : b.t_) add_term(k.first, k.second, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& b) {
    if (!vs_) vs_ = b.vs_;
    for (const auto& [k, c] : b.t_) add_term(k.first, k.second, -c);
    return *this;
  }
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.t_ == b.t_; }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  /// Composition a o b, normal ordered.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    DiffOp r(a.vs_ ? a.vs_ : b.vs_);
    if (a.t_.empty() || b.t_.empty()) return r;
    const VarSet& vs = *r.vs_;
    std::map<std::pair<Mono, Mono>, std::vector<std::tuple<Scalar, Mono, Mono>>> cache;
    Mono af, ge;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) {
        auto key = std::make_pair(ka.second, kb.first);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, commute(vs, ka.second, kb.first)).first;
        Scalar cc = ca * cb;
        for (const auto& [c, f, g] : it->second) {
          int s1 = mono_mul(vs, ka.first, f, af);
          if (!s1) continue;
          int s2 = mono_mul(vs, g, kb.second, ge);
          if (!s2) continue;
          Scalar v = c * cc;
          r.add_term(af, ge, s1 * s2 > 0 ? v : -v);
        }
      }
    return r;
  }

  /// Apply to a polynomial.
  [[nodiscard]] Poly apply(const Poly& p) const {
    Poly r(vs_ ? vs_ : p.vars());
    if (p.is_zero()) return r;
    std::map<Mono, Poly> cache;
    for (const auto& [k, c] : t_) {
      auto it = cache.find(k.second);
      if (it == cache.end()) it = cache.emplace(k.second, apply_word(k.second, p)).first;
      if (it->second.is_zero()) continue;
      r += c * (Poly::monomial(vs_, k.first) * it->second);
    }
    return r;
  }

  /// Parity component (0 or 1).
  [[nodiscard]] DiffOp parity_part(unsigned p) const {
    DiffOp r(vs_);
    for (const auto& [k, c] : t_)
      if (((mono_parity(*vs_, k.first) + mono_parity(*vs_, k.second)) & 1U) == p) r.t_.emplace(k, c);
    return r;
  }
  /// Parity if homogeneous, -1 if mixed, 0 for zero.
  [[nodiscard]] int parity() const {
    bool e = !parity_part(0).is_zero(), o = !parity_part(1).is_zero();
    if (e && o) return -1;
    return o ? 1 : 0;
  }

  [[nodiscard]] std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : t_) {
      if (!first) s += " + ";
      first = false;
      std::string body = Poly::mono_str(*vs_, k.first);
      for (std::size_t u = 0; u < k.second.size(); ++u) {
        if (!k.second[u]) continue;
        if (!body.empty()) body += "*";
        body += "D" + vs_->names[u];
        if (k.second[u] > 1) body += "^" + std::to_string(k.second[u]);
      }
      if (body.empty()) s += c.compact();
      else if (c.is_one()) s += body;
      else s += c.compact() + "*" + body;
    }
    return s;
  }

  /// Apply the derivative word d^b (rightmost letter first).
  [[nodiscard]] Poly apply_word(const Mono& b, const Poly& p) const {
    Poly q = p;
    for (std::size_t u = b.size(); u-- > 0;)
      for (unsigned e = 0; e < b[u]; ++e) {
        q = q.derive(u);
        if (q.is_zero()) return q;
      }
    return q;
  }

 private:
  VarSetPtr vs_;
  Terms t_;

  // d^b o x^d as a normal-ordered list of (coef, multiplier, derivative word).
  static std::vector<std::tuple<Scalar, Mono, Mono>> commute(const VarSet& vs, const Mono& b, const Mono& d) {
    std::map<std::pair<Mono, Mono>, Scalar> cur;
    std::size_t n = vs.size();
    cur[{d, Mono(n, 0)}] = Scalar(1);
    Mono tmp, unit(n, 0);
    for (std::size_t v = n; v-- > 0;)
      for (unsigned e = 0; e < b[v]; ++e) {
        std::map<std::pair<Mono, Mono>, Scalar> nxt;
        auto put = [&](const Mono& f, const Mono& g, const Scalar& c) {
          if (c.is_zero()) return;
          auto& slot = nxt[{f, g}];
          slot += c;
        };
        for (const auto& [fg, c] : cur) {
          const Mono& f = fg.first;
          const Mono& g = fg.second;
          long k = mono_derive(vs, v, f, tmp);
          if (k) put(tmp, g, Scalar(k) * c);
          unit[v] = 1;
          Mono g2;
          int s = mono_mul(vs, unit, g, g2);
          unit[v] = 0;
          if (s) {
            int s2 = pass_sign(vs, v, f);
            put(f, g2, s * s2 > 0 ? c : -c);
          }
        }
        cur.clear();
        for (auto& [k2, c] : nxt)
          if (!c.is_zero()) cur.emplace(k2, std::move(c));
      }
    std::vector<std::tuple<Scalar, Mono, Mono>> out;
    for (const auto& [fg, c] : cur) out.emplace_back(c, fg.first, fg.second);
    return out;
  }
};

inline DiffOp operator*(const DiffOp& a, const Scalar& s) { return s * a; }

/// Supercommutator [a,b] = a b - (-1)^{|a||b|} b a, extended over parity components.
inline DiffOp bracket(const DiffOp& a, const DiffOp& b) {
  DiffOp r(a.vars() ? a.vars() : b.vars());
  for (unsigned p = 0; p < 2; ++p) {
    DiffOp ap = a.parity_part(p);
    if (ap.is_zero()) continue;
    for (unsigned q = 0; q < 2; ++q) {
      DiffOp bq = b.parity_part(q);
      if (bq.is_zero()) continue;
      r += ap * bq;
      if (p & q) r += bq * ap;
      else r -= bq * ap;
    }
  }
  return r;
}

}  // namespace spo
