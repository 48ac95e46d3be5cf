// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spo {

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gaussian rational re + im*i.
struct Gauss {
  mpq_class re{0}, im{0};

  Gauss() = default;
  Gauss(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] Gauss conj() const { return {re, -im}; }
  [[nodiscard]] mpq_class norm() const { return re * re + im * im; }
  [[nodiscard]] Gauss inverse() const {
    mpq_class d = norm();
    if (sgn(d) == 0) throw ScalarError("division by zero");
    return {re / d, -im / d};
  }

  friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gauss operator-(const Gauss& a) { return {-a.re, -a.im}; }
  friend Gauss operator*(const Gauss& a, const Gauss& b) {
    if (sgn(a.im) == 0 && sgn(b.im) == 0) return {a.re * b.re, 0};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
};

/// a + b*sqrt2 with Gaussian-rational a, b.
struct Quad {
  Gauss a, b;

  [[nodiscard]] bool is_zero() const { return a.is_zero() && b.is_zero(); }
  [[nodiscard]] Quad conj() const { return {a.conj(), b.conj()}; }
  [[nodiscard]] Quad inverse() const {
    // (a - b sqrt2) / (a^2 - 2 b^2); the denominator vanishes only for a = b = 0
    Gauss d = a * a - Gauss(2) * b * b;
    Gauss di = d.inverse();
    return {a * di, -(b * di)};
  }
  friend Quad operator+(const Quad& x, const Quad& y) { return {x.a + y.a, x.b + y.b}; }
  friend Quad operator-(const Quad& x, const Quad& y) { return {x.a - y.a, x.b - y.b}; }
  friend Quad operator-(const Quad& x) { return {-x.a, -x.b}; }
  friend Quad operator*(const Quad& x, const Quad& y) {
    if (x.b.is_zero() && y.b.is_zero()) return {x.a * y.a, Gauss()};
    return {x.a * y.a + Gauss(2) * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }
};

/**
 * Exact scalar: sum_k (a_k + b_k sqrt2) (sqrt pi)^k with Gaussian-rational a_k, b_k.
 * Terms are kept sorted by k with no zero entries, so equality is structural.
 */
class Scalar {
 public:
  using Term = std::pair<int, Quad>;

  Scalar() = default;
  Scalar(int v) : Scalar(mpq_class(v)) {}
  Scalar(long v) : Scalar(mpq_class(v)) {}
  Scalar(mpq_class v) {
    v.canonicalize();
    if (sgn(v) != 0) t_.push_back({0, Quad{Gauss(std::move(v)), Gauss()}});
  }
  Scalar(Gauss g) {
    if (!g.is_zero()) t_.push_back({0, Quad{std::move(g), Gauss()}});
  }
  Scalar(Quad q, int pi_half_power = 0) {
    if (!q.is_zero()) t_.push_back({pi_half_power, std::move(q)});
  }

  static Scalar rational(long p, long q = 1) { return Scalar(mpq_class(p, q)); }
  static Scalar gauss(const mpq_class& re, const mpq_class& im) { return Scalar(Gauss(re, im)); }
  static Scalar i() { return gauss(0, 1); }
  static Scalar sqrt2() { return Scalar(Quad{Gauss(), Gauss(1)}); }
  /// (sqrt pi)^k
  static Scalar sqrt_pi_pow(int k) { return Scalar(Quad{Gauss(1), Gauss()}, k); }
  static Scalar pi_pow(int k) { return sqrt_pi_pow(2 * k); }
  /// (sqrt 2)^k for any integer k
  static Scalar sqrt2_pow(int k) {
    if (k < 0) return Scalar(1) / sqrt2_pow(-k);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k / 2));
    Scalar r{mpq_class(p)};
    return k % 2 ? r * sqrt2() : r;
  }

  [[nodiscard]] bool is_zero() const { return t_.empty(); }
  [[nodiscard]] const std::vector<Term>& terms() const { return t_; }
  [[nodiscard]] bool is_monomial() const { return t_.size() == 1; }
  /// True if the value lies in Q (no i, no sqrt2, no pi).
  [[nodiscard]] bool is_rational() const {
    return t_.empty() || (t_.size() == 1 && t_[0].first == 0 && t_[0].second.b.is_zero() &&
                          sgn(t_[0].second.a.im) == 0);
  }
  [[nodiscard]] mpq_class rational_value() const {
    if (!is_rational()) throw ScalarError("scalar is not rational");
    return t_.empty() ? mpq_class(0) : t_[0].second.a.re;
  }
  [[nodiscard]] bool is_one() const {
    return t_.size() == 1 && t_[0].first == 0 && t_[0].second.b.is_zero() &&
           t_[0].second.a.re == 1 && sgn(t_[0].second.a.im) == 0;
  }

  [[nodiscard]] Scalar conj() const {
    Scalar r;
    r.t_.reserve(t_.size());
    for (const auto& [k, q] : t_) r.t_.push_back({k, q.conj()});
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.t_.empty()) return y;
    if (y.t_.empty()) return x;
    Scalar r;
    r.t_.reserve(x.t_.size() + y.t_.size());
    std::size_t p = 0, q = 0;
    while (p < x.t_.size() || q < y.t_.size()) {
      if (q == y.t_.size() || (p < x.t_.size() && x.t_[p].first < y.t_[q].first)) {
        r.t_.push_back(x.t_[p++]);
      } else if (p == x.t_.size() || y.t_[q].first < x.t_[p].first) {
        r.t_.push_back(y.t_[q++]);
      } else {
        Quad s = x.t_[p].second + y.t_[q].second;
        if (!s.is_zero()) r.t_.push_back({x.t_[p].first, std::move(s)});
        ++p;
        ++q;
      }
    }
    return r;
  }
  friend Scalar operator-(const Scalar& x) {
    Scalar r;
    r.t_.reserve(x.t_.size());
    for (const auto& [k, q] : x.t_) r.t_.push_back({k, -q});
    return r;
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    Scalar r;
    if (x.t_.empty() || y.t_.empty()) return r;
    if (x.t_.size() == 1 && y.t_.size() == 1) {
      Quad q = x.t_[0].second * y.t_[0].second;
      if (!q.is_zero()) r.t_.push_back({x.t_[0].first + y.t_[0].first, std::move(q)});
      return r;
    }
    for (const auto& [k1, q1] : x.t_)
      for (const auto& [k2, q2] : y.t_) r = r + Scalar(q1 * q2, k1 + k2);
    return r;
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    if (y.t_.empty()) throw ScalarError("division by zero");
    if (y.t_.size() == 1) {
      const auto& [k, q] = y.t_[0];
      return x * Scalar(q.inverse(), -k);
    }
    return laurent_divide(x, y);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  friend bool operator==(const Scalar& x, const Scalar& y) { return x.t_ == y.t_; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  [[nodiscard]] Scalar pow(int e) const {
    if (e < 0) return Scalar(1) / pow(-e);
    Scalar r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// Canonical text: "((p/q) + (r/s)i) [* sqrt2] [* pi^(k/2)]" terms joined by " + ".
  [[nodiscard]] std::string str() const {
    if (t_.empty()) return "((0/1) + (0/1)i)";
    std::string out;
    auto piece = [&](const Gauss& g, bool root2, int k) {
      if (!out.empty()) out += " + ";
      out += "((" + frac(g.re) + ") + (" + frac(g.im) + ")i)";
      if (root2) out += " * sqrt2";
      if (k != 0) out += " * pi^(" + std::to_string(k) + "/2)";
    };
    for (const auto& [k, q] : t_) {
      if (!q.a.is_zero()) piece(q.a, false, k);
      if (!q.b.is_zero()) piece(q.b, true, k);
    }
    return out;
  }

  /// Short form for polynomial printing, e.g. "3", "-1/2", "(1+2i)", "2*sqrt2*pi^(1/2)".
  [[nodiscard]] std::string compact() const {
    if (t_.empty()) return "0";
    std::vector<std::string> parts;
    auto gstr = [](const Gauss& g) {
      if (sgn(g.im) == 0) return g.re.get_str();
      if (sgn(g.re) == 0) return (g.im == 1 ? std::string() : g.im == -1 ? std::string("-") : g.im.get_str() + "*") + "i";
      std::string s = "(" + g.re.get_str() + (sgn(g.im) > 0 ? "+" : "-");
      mpq_class a = abs(g.im);
      s += (a == 1 ? std::string() : a.get_str() + "*") + "i)";
      return s;
    };
    for (const auto& [k, q] : t_) {
      std::string suf = k == 0 ? "" : "*pi^(" + std::to_string(k) + "/2)";
      if (!q.a.is_zero()) parts.push_back(gstr(q.a) + suf);
      if (!q.b.is_zero()) parts.push_back(gstr(q.b) + "*sqrt2" + suf);
    }
    if (parts.size() == 1) return parts[0];
    std::string s = "(";
    for (std::size_t j = 0; j < parts.size(); ++j) s += (j ? " + " : "") + parts[j];
    return s + ")";
  }

  /// Parses the canonical grammar produced by str().
  static Scalar parse(std::string_view s) {
    Parser p{s, 0};
    Scalar r = p.sum();
    p.ws();
    if (p.pos != s.size()) throw ScalarError("trailing input in scalar: " + std::string(s));
    return r;
  }

  /// Floating approximation, for diagnostics only.
  [[nodiscard]] std::pair<double, double> approx() const {
    double re = 0, im = 0;
    for (const auto& [k, q] : t_) {
      double f = std::pow(std::sqrt(M_PI), k);
      re += f * (q.a.re.get_d() + std::sqrt(2.0) * q.b.re.get_d());
      im += f * (q.a.im.get_d() + std::sqrt(2.0) * q.b.im.get_d());
    }
    return {re, im};
  }

 private:
  std::vector<Term> t_;

  static std::string frac(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

  // Exact division in the Laurent ring over Q(i, sqrt2); errors if not divisible.
  static Scalar laurent_divide(const Scalar& x, const Scalar& y) {
    if (x.is_zero()) return x;
    int kx = x.t_.front().first, ky = y.t_.front().first;
    std::vector<Quad> a(static_cast<std::size_t>(x.t_.back().first - kx + 1));
    std::vector<Quad> b(static_cast<std::size_t>(y.t_.back().first - ky + 1));
    for (const auto& [k, q] : x.t_) a[static_cast<std::size_t>(k - kx)] = q;
    for (const auto& [k, q] : y.t_) b[static_cast<std::size_t>(k - ky)] = q;
    if (a.size() < b.size()) throw ScalarError("divisor does not divide dividend in the scalar ring");
    Quad lead_inv = b.back().inverse();
    std::vector<Quad> quo(a.size() - b.size() + 1);
    for (std::size_t d = quo.size(); d-- > 0;) {
      Quad c = a[d + b.size() - 1] * lead_inv;
      quo[d] = c;
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[d + j] = a[d + j] - c * b[j];
    }
    for (const auto& q : a)
      if (!q.is_zero()) throw ScalarError("divisor does not divide dividend in the scalar ring");
    Scalar r;
    for (std::size_t d = 0; d < quo.size(); ++d)
      if (!quo[d].is_zero()) r.t_.push_back({static_cast<int>(d) + kx - ky, quo[d]});
    return r;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;
    void ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(std::string_view tok) {
      ws();
      if (s.substr(pos, tok.size()) == tok) {
        pos += tok.size();
        return true;
      }
      return false;
    }
    void expect(std::string_view tok) {
      if (!eat(tok)) throw ScalarError("expected '" + std::string(tok) + "' in scalar at " + std::to_string(pos));
    }
    long integer() {
      ws();
      std::size_t b = pos;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (b == pos) throw ScalarError("expected integer in scalar");
      return std::stol(std::string(s.substr(b, pos - b)));
    }
    mpq_class rat() {
      ws();
      std::size_t b = pos;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
      std::string txt(s.substr(b, pos - b));
      if (!txt.empty() && txt[0] == '+') txt.erase(0, 1);
      mpq_class q;
      if (q.set_str(txt, 10) != 0) throw ScalarError("bad rational '" + txt + "'");
      q.canonicalize();
      return q;
    }
    Scalar term() {
      expect("(");
      expect("(");
      mpq_class re = rat();
      expect(")");
      expect("+");
      expect("(");
      mpq_class im = rat();
      expect(")");
      expect("i");
      expect(")");
      Scalar r = gauss(re, im);
      std::size_t save = pos;
      if (eat("*")) {
        if (eat("sqrt2")) {
          r *= sqrt2();
          save = pos;
          if (!eat("*")) return r;
        }
        if (eat("pi^(")) {
          long k = integer();
          expect("/2)");
          return r * sqrt_pi_pow(static_cast<int>(k));
        }
        pos = save;
      }
      return r;
    }
    Scalar sum() {
      Scalar r = term();
      while (true) {
        std::size_t save = pos;
        if (eat("+")) {
          ws();
          if (pos < s.size() && s[pos] == '(') {
            r += term();
            continue;
          }
        }
        pos = save;
        return r;
      }
    }
  };
};

}  // namespace spo
