// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spo/products.hpp"
#include "spo/reps.hpp"
#include "spo/transforms.hpp"

namespace spo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kMaxDegreeCap = 8;
inline constexpr std::size_t kMaxGridEntries = 8;
inline const std::vector<std::string> kSuiteNames = {"algebra", "bessel", "reps", "products", "transforms", "dims", "gk"};

struct SuiteConfig {
  std::vector<std::pair<int, int>> grid = {{1, 1}, {2, 0}, {0, 2}, {2, 1}};
  std::vector<std::string> suites = kSuiteNames;
  unsigned degree_cap = 4;
  unsigned samples = 20;
  std::uint64_t seed = 20260101;
  std::string format = "json";
  /// Also compare against the displayed forms that disagree with the computed ones.
  bool displayed = false;

  void validate() const {
    if (grid.empty()) throw ConfigError("empty grid");
    if (grid.size() > kMaxGridEntries) throw ConfigError("grid has more than " + std::to_string(kMaxGridEntries) + " entries");
    for (auto [m, n] : grid) {
      if (m < 0 || n < 0) throw ConfigError("negative dimension in grid");
      if (m == 0 && n == 0) throw ConfigError("(m,n) = (0,0) is empty");
      if (m == 0 && n == 1) throw ConfigError("(m,n) = (0,1) is excluded");
    }
    if (degree_cap > kMaxDegreeCap) throw ConfigError("degree cap above " + std::to_string(kMaxDegreeCap));
    if (format != "json" && format != "text") throw ConfigError("format must be json or text");
    for (const auto& s : suites)
      if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) == kSuiteNames.end())
        throw ConfigError("unknown suite '" + s + "'");
  }
};

enum class CheckStatus { Pass, Fail, Skipped };

inline std::string status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "skipped";
  }
}

struct CheckRecord {
  std::string suite, check_id, anchor;
  int m = 0, n = 0;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;
};

struct Table {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  SuiteConfig config;
  std::vector<CheckRecord> records;
  std::vector<Table> tables;

  [[nodiscard]] std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [s](const CheckRecord& r) { return r.status == s; }));
  }
  [[nodiscard]] int exit_code() const { return count(CheckStatus::Fail) > 0 ? 1 : 0; }
};

/// Counts cases of one identity and keeps the first counterexample.
class Tally {
 public:
  template <class F>
  void expect(bool ok, F describe) {
    ++checks_;
    if (!ok && failures_++ == 0) witness_ = describe();
  }
  void expect(bool ok) {
    expect(ok, [] { return std::string(); });
  }
  /// Merges a result that was counted elsewhere.
  void add(std::size_t checks, std::size_t failures, const std::string& witness) {
    if (failures > 0 && failures_ == 0) witness_ = witness;
    checks_ += checks;
    failures_ += failures;
  }
  void fail(std::string witness) {
    ++checks_;
    if (failures_++ == 0) witness_ = std::move(witness);
  }
  [[nodiscard]] bool ok() const { return failures_ == 0; }
  [[nodiscard]] std::size_t checks() const { return checks_; }
  [[nodiscard]] std::size_t failures() const { return failures_; }
  [[nodiscard]] std::string witness() const {
    std::string w = witness_.empty() ? "counterexample" : witness_;
    return w + " [" + std::to_string(failures_) + " of " + std::to_string(checks_) + " cases fail]";
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string witness_;
};

namespace detail {

class Recorder {
 public:
  Recorder(std::string suite, int m, int n) : suite_(std::move(suite)), m_(m), n_(n) {}

  /// Runs body into a tally; exceptions are failures with the message as witness.
  void run(const std::string& id, const std::string& anchor, const std::function<void(Tally&)>& body) {
    Tally t;
    try {
      body(t);
    } catch (const std::exception& e) {
      t.fail(std::string("exception: ") + e.what());
    }
    CheckRecord r{suite_, id, anchor, m_, n_, t.ok() ? CheckStatus::Pass : CheckStatus::Fail, ""};
    if (!t.ok()) r.witness = t.witness();
    out_.push_back(std::move(r));
  }
  void skip(const std::string& id, const std::string& anchor, std::string reason) {
    out_.push_back({suite_, id, anchor, m_, n_, CheckStatus::Skipped, std::move(reason)});
  }
  std::vector<CheckRecord> take() { return std::move(out_); }

 private:
  std::string suite_;
  int m_, n_;
  std::vector<CheckRecord> out_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, const std::string& suite, int m, int n) {
  std::uint64_t h = seed;
  for (char c : suite) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
  h = h * 1099511628211ULL + static_cast<std::uint64_t>(m);
  h = h * 1099511628211ULL + static_cast<std::uint64_t>(n);
  return SplitMix64(h).next();
}

inline std::string pair_str(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

inline std::string sides(const std::string& lhs, const std::string& rhs) { return "lhs = " + lhs + "; rhs = " + rhs; }
inline std::string sides(const Scalar& lhs, const Scalar& rhs) { return sides(lhs.compact(), rhs.compact()); }
inline std::string sides(const Poly& lhs, const Poly& rhs) { return sides(lhs.str(), rhs.str()); }

inline std::size_t span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  SpanBasis s(vs[0].size());
  for (const auto& v : vs) s.add(v);
  return s.size();
}

inline std::size_t poly_rank(const MonomialIndex& idx, const std::vector<Poly>& family) {
  std::vector<Vec> rows;
  for (const auto& p : family) rows.push_back(idx.coords(p));
  return span_rank(rows);
}

inline std::vector<Poly> monomials_of(const MatrixVarSpace& S, unsigned k) {
  std::vector<Poly> out;
  for (const auto& m : S.monomials(k)) out.push_back(Poly::monomial(S.vars(), m));
  return out;
}

inline std::vector<Poly> monomials_up_to(const SuperSpace& X, unsigned cap) {
  std::vector<Poly> out;
  for (unsigned k = 0; k <= cap; ++k)
    for (auto& p : monomial_basis(X, k)) out.push_back(std::move(p));
  return out;
}

inline Poly random_poly(const SuperSpace& X, SplitMix64& r, unsigned cap) {
  Poly p = X.zero();
  for (unsigned k = 0; k <= cap; ++k)
    for (const auto& m : X.monomials(X.bank(), k))
      if (r.uniform(0, 2) == 0) p.add_term(m, Scalar::gauss(r.coeff(), r.coeff()));
  return p;
}

inline Poly random_homogeneous(const SuperSpace& X, SplitMix64& r, unsigned k, unsigned parity) {
  Poly p = X.zero();
  for (const auto& m : X.monomials(X.bank(), k))
    if (mono_parity(*X.vars(), m) == parity && r.uniform(0, 2) != 0) p.add_term(m, Scalar::gauss(r.coeff(), r.coeff()));
  return p;
}

inline std::string gauss_str(const GaussianFunction& g) {
  std::string s = "(" + g.poly.str() + ")";
  for (const auto& [b, c] : g.weight) s += " exp(-" + c.get_str() + " R2_" + b + ")";
  return s;
}

/// Homomorphism failures, exhaustive on small algebras and sampled otherwise.
inline void homomorphism_into(Tally& t, const Realisation& rep, bool exhaustive, SplitMix64& r, unsigned samples) {
  const auto& A = rep.algebra();
  if (exhaustive) {
    auto bad = homomorphism_failures(rep);
    std::string w = bad.empty() ? "" : "basis pair (" + A.name(bad[0].first) + ", " + A.name(bad[0].second) + ")";
    t.add(A.dim() * (A.dim() + 1) / 2, bad.size(), w);
    return;
  }
  std::size_t bad = homomorphism_failures_random(rep, r, static_cast<int>(samples));
  t.add(samples, bad, std::to_string(bad) + " random homogeneous pairs fail");
}

inline bool small_point(int m, int n) { return (m == 1 && n == 1) || (m == 2 && n == 0) || (m == 1 && n == 0); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites. Each returns the records of one grid point.

inline std::vector<CheckRecord> run_algebra(int m, int n, const SuiteConfig& cfg) {
  detail::Recorder rec("algebra", m, n);
  SplitMix64 r(detail::mix_seed(cfg.seed, "algebra", m, n));
  unsigned random_triples = std::max(300U, cfg.samples);
  Spo g(m, n);
  Josp J(m, n);
  Tkk T{Josp(m, n)};
  TkkToSpo phi(T, g);
  bool exhaustive = detail::small_point(m, n);
  rec.run("spo_super_jacobi", "super Jacobi identity for spo(2m|4n)", [&](Tally& t) {
    std::size_t f = exhaustive ? jacobi_failures_exhaustive(g.alg()) : jacobi_failures_random(g.alg(), r, static_cast<int>(random_triples));
    t.expect(f == 0, [&] { return std::to_string(f) + " basis triples violate the super Jacobi identity"; });
  });
  rec.run("josp_jordan_identity", "super Jordan identity for JOSP(m|2n)", [&](Tally& t) {
    std::size_t f = jordan_identity_failures(J);
    t.expect(f == 0, [&] { return std::to_string(f) + " triples violate the Jordan identity"; });
  });
  rec.run("tkk_super_jacobi", "TKK(J) is a Lie superalgebra", [&](Tally& t) {
    std::size_t f = exhaustive ? jacobi_failures_exhaustive(T.alg()) : jacobi_failures_random(T.alg(), r, static_cast<int>(random_triples));
    t.expect(f == 0, [&] { return std::to_string(f) + " triples violate the Jacobi identity in TKK(J)"; });
  });
  rec.run("phi_isomorphism", "phi: TKK(J) -> spo(2m|2n,2n) preserves brackets", [&](Tally& t) {
    t.expect(rank(phi.matrix()) == g.dim(), [&] { return std::string("phi is not bijective"); });
    std::size_t f = phi_bracket_mismatches(T, g, phi);
    t.expect(f == 0, [&] { return std::to_string(f) + " basis pairs with phi[a,b] != [phi a, phi b]"; });
  });
  rec.run("three_grading", "ad(h) eigenspaces -2, 0, 2 spanned by the U blocks", [&](Tally& t) {
    Mat adh = g.alg().ad(g.sl2_h());
    int N = m + 2 * n;
    std::vector<Vec> neg, zero, pos;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        neg.push_back(g.U(g.lo(i), g.lo(j)));
        zero.push_back(g.U(g.ti(i), g.lo(j)));
        pos.push_back(g.U(g.ti(i), g.ti(j)));
      }
    auto eig = [&](const std::vector<Vec>& vs, long want, const char* name) {
      for (const auto& v : vs)
        if (!is_zero_vec(v)) t.expect(eigenvalue(adh, v) == Scalar(want), [&] { return std::string(name) + " element is not an eigenvector"; });
    };
    eig(neg, -2, "U(lo,lo)");
    eig(zero, 0, "U(ti,lo)");
    eig(pos, 2, "U(ti,ti)");
    std::size_t total = detail::span_rank(neg) + detail::span_rank(zero) + detail::span_rank(pos);
    t.expect(total == g.dim(), [&] { return detail::sides(std::to_string(total), std::to_string(g.dim())); });
  });
  return rec.take();
}

inline std::vector<CheckRecord> run_bessel(int m, int n, const SuiteConfig& cfg) {
  detail::Recorder rec("bessel", m, n);
  MatrixVarSpace S(m, n);
  Scalar half_neg = Scalar::rational(-1, 2);
  rec.run("definitional_vs_explicit", "Bessel operator: definition equals the explicit normal form", [&](Tally& t) {
    for (Scalar lam : {Scalar(1), half_neg, Scalar(2)})
      for (int i = 1; i <= S.N(); ++i)
        for (int j = 1; j <= S.N(); ++j) {
          auto a = bessel_operator(S, Character{lam}, i, j, BesselConstruction::Definitional);
          auto b = bessel_operator(S, Character{lam}, i, j, BesselConstruction::Explicit);
          t.expect((a - b).is_zero(), [&] { return "lambda=" + lam.compact() + " (" + std::to_string(i) + "," + std::to_string(j) + "): difference " + (a - b).str(); });
        }
  });
  rec.run("bessel_supercommute", "Bessel operators pairwise supercommute", [&](Tally& t) {
    for (Scalar lam : {Scalar(1), half_neg, Scalar(2)}) {
      std::size_t f = bessel_supercommutation_failures(S, Character{lam});
      t.expect(f == 0, [&] { return "lambda=" + lam.compact() + ": " + std::to_string(f) + " pairs fail"; });
    }
  });
  rec.run("V_lambda_solver", "solver spans V_1 and V_{-1/2} as displayed; V_2 = 0", [&](Tally& t) {
    MonomialIndex idx(S.monomials(2));
    for (Scalar lam : {Scalar(1), half_neg}) {
      auto solved = compute_V_lambda(S, lam);
      auto shown = graded_basis(S, lam, printed_V_family(S, lam), 2).basis;
      auto all = solved.basis;
      all.insert(all.end(), shown.begin(), shown.end());
      std::size_t ra = detail::poly_rank(idx, solved.basis), rb = detail::poly_rank(idx, shown), rab = detail::poly_rank(idx, all);
      t.expect(ra == rab && rb == rab, [&] {
        return "lambda=" + lam.compact() + ": ranks solved " + std::to_string(ra) + ", displayed " + std::to_string(rb) + ", union " + std::to_string(rab);
      });
    }
    auto V2 = compute_V_lambda(S, Scalar(2));
    t.expect(V2.basis.empty(), [&] { return "V_2 has dimension " + std::to_string(V2.basis.size()); });
  });
  rec.run("V_lambda_dimensions", "dim V_lambda equals the counting formulas", [&](Tally& t) {
    for (Scalar lam : {Scalar(1), half_neg}) {
      auto V = compute_V_lambda(S, lam);
      auto [e, o] = V_dimension_formula(m, n, lam);
      t.expect(static_cast<long>(V.dim_even) == e && static_cast<long>(V.dim_odd) == o, [&] {
        return "lambda=" + lam.compact() + ": " + detail::sides(std::to_string(V.dim_even) + "|" + std::to_string(V.dim_odd), std::to_string(e) + "|" + std::to_string(o));
      });
      t.expect(Scalar(V.sdim()) == V_sdim_formula(m, n, lam), [&] {
        return "lambda=" + lam.compact() + ": sdim " + detail::sides(std::to_string(V.sdim()), V_sdim_formula(m, n, lam).compact());
      });
    }
  });
  rec.run("folding_kills_V", "psi vanishes on V_{-1/2}", [&](Tally& t) {
    Folding psi(S);
    for (const auto& q : compute_V_lambda(S, half_neg).basis)
      t.expect(psi.fold(q).is_zero(), [&] { return "psi(" + q.str() + ") = " + psi.fold(q).str(); });
  });
  if (cfg.displayed)
    rec.run("two_e_displayed", "displayed expansion of 2e", [&](Tally& t) {
      t.expect(two_e_displayed(S) == two_e(S), [&] { return detail::sides(two_e_displayed(S).str(), two_e(S).str()); });
    });
  return rec.take();
}

inline std::vector<CheckRecord> run_reps(int m, int n, const SuiteConfig& cfg) {
  detail::Recorder rec("reps", m, n);
  SplitMix64 r(detail::mix_seed(cfg.seed, "reps", m, n));
  RepContext C(m, n);
  const auto& X = C.X();
  Scalar half_neg = Scalar::rational(-1, 2), i = Scalar::i();
  bool exhaustive = detail::small_point(m, n) || (m == 0 && n == 2);
  auto pi = pi_lambda(C, half_neg);
  auto pt = pi_tilde(C);
  auto ptu = pi_tilde_U(C);
  auto rtu = rho_tilde_U(C, ptu);
  auto ph = pi_hat_U(C);
  Scalar hbar = Scalar::rational(1, 2);
  auto u = U_star(C, hbar);
  auto mu = mu_star(C, u, hbar);
  std::vector<std::pair<std::string, const Realisation*>> reps = {{"pi_lambda", &pi},   {"pi_tilde", &pt},
                                                                   {"pi_tilde_U", &ptu}, {"rho_tilde_U", &rtu},
                                                                   {"pi_hat_U", &ph},    {"U_star", &u},
                                                                   {"mu_star", &mu}};
  auto rho = rho_lambda(C, pi);
  reps.insert(reps.begin() + 1, {"rho_lambda", &rho});
  for (const auto& [name, rep] : reps)
    rec.run("homomorphism_" + name, "bracket homomorphism for " + name,
            [&](Tally& t) { detail::homomorphism_into(t, *rep, exhaustive, r, cfg.samples); });
  rec.run("pi_tilde_closed_form", "closed form of pi~ equals psi o pi_lambda o psi^-1 on even monomials", [&](Tally& t) {
    Folding psi(C.S());
    unsigned cap = std::min(cfg.degree_cap, 4U);
    for (std::size_t a = 0; a < C.T().dim(); ++a)
      for (unsigned k = 0; k <= cap; k += 2)
        for (const auto& mono : X.monomials("x", k)) {
          Poly p = Poly::monomial(X.vars(), mono);
          Poly lhs = pt.basis(a).apply(p), rhs = pi_tilde_by_folding(psi, pi, C.T().alg().unit(a), p);
          t.expect(lhs == rhs, [&] { return "basis " + std::to_string(a) + " on " + p.str() + ": " + detail::sides(lhs, rhs); });
        }
  });
  rec.run("mu_star_is_pi_hat", "mu_* at hbar = 1/2 equals pi^", [&](Tally& t) {
    auto shown = mu_star_displayed(C, hbar);
    for (std::size_t a = 0; a < C.g().dim(); ++a) {
      t.expect((mu.basis(a) - ph.basis(a)).is_zero(), [&] { return "U basis " + C.g().alg().name(a); });
      t.expect((mu.basis(a) - shown.basis(a)).is_zero(), [&] { return "displayed mu_* at " + C.g().alg().name(a); });
    }
  });
  rec.run("sl2_relations", "R^2, E + M/2, -Delta/2 form an sl(2) triple commuting with L_ij", [&](Tally& t) {
    DiffOp R2 = X.mult(X.R2()), D = X.Delta(), E = X.Euler();
    t.expect(bracket(D, R2) == Scalar(4) * E + X.scalar_op(Scalar(2 * X.M())), [] { return std::string("[Delta, R^2]"); });
    t.expect(bracket(R2, E) == Scalar(-2) * R2, [] { return std::string("[R^2, E]"); });
    t.expect(bracket(D, E) == Scalar(2) * D, [] { return std::string("[Delta, E]"); });
    for (int a = 1; a <= X.N(); ++a)
      for (int b = 1; b <= X.N(); ++b) {
        DiffOp L = X.L(a, b);
        t.expect(bracket(D, L).is_zero() && bracket(R2, L).is_zero() && bracket(E, L).is_zero(),
                 [&] { return "L_" + std::to_string(a) + std::to_string(b) + " does not commute"; });
      }
  });
  rec.run("ladder", "sl(2) ladder on R^{2k} phi_l, l <= 2, k <= 3", [&](Tally& t) {
    auto rt = rho_tilde(C, pt);
    for (unsigned l = 0; l <= 2; ++l) {
      auto rp = ladder_check(C, rt, pt, l, 3);
      t.add(rp.checks, rp.failures, "l=" + std::to_string(l) + ", lowest weight " + rp.lowest_weight.compact());
    }
    if (X.M() == 0) {
      // rho^- on R^{2k} phi_l vanishes exactly when k (M + 2k - 2 + 2l) = 0.
      Vec e = C.J().unit();
      DiffOp rho_m = pt(scale(Scalar(-4), C.T().plus(e)));
      for (unsigned l = 0; l <= 2; ++l)
        for (const auto& phi : harmonics(X, l))
          for (unsigned k = 0; k <= 3; ++k) {
            bool zero = rho_m.apply(X.R2().pow(k) * phi).is_zero();
            bool want = k == 0 || X.M() + 2 * static_cast<int>(k) - 2 + 2 * static_cast<int>(l) == 0;
            t.expect(zero == want, [&] { return "k=" + std::to_string(k) + " l=" + std::to_string(l) + " phi=" + phi.str(); });
          }
    }
  });
  if (cfg.displayed)
    rec.run("ladder_displayed", "displayed ladder coefficients", [&](Tally& t) {
      auto rt = rho_tilde(C, pt);
      for (unsigned l = 0; l <= 2; ++l) {
        auto rp = ladder_check(C, rt, pt, l, 3);
        t.expect(rp.f_plus_displayed_mismatch == 0, [&] { return "f^+ coefficient without l, l=" + std::to_string(l); });
        t.expect(rp.rho_minus_displayed_mismatch == 0, [&] { return "rho^- coefficient without i, l=" + std::to_string(l); });
      }
    });
  rec.run("fischer_decomposition", "P_k = sum R^{k-l} H_l (generalised when M in -2N) is direct", [&](Tally& t) {
    for (unsigned k = 0; k <= cfg.degree_cap; ++k) {
      auto cert = fischer_decompose(X, k);
      t.expect(cert.holds(), [&] {
        return "k=" + std::to_string(k) + ": rank " + std::to_string(cert.rank) + ", summed " + std::to_string(cert.total()) + ", dim " + std::to_string(cert.dim_Pk);
      });
      t.expect(cert.degenerate == in_minus_two_N(X.M()), [&] { return std::string("degeneracy flag"); });
    }
  });
  rec.run("kmcs_finiteness", "k_mcs-finiteness of exp(-R^2) and l_1 exp(-R^2)", [&](Tally& t) {
    auto rp = kmcs_finiteness_check(C, ptu);
    t.expect(rp.delta_formula, [] { return std::string("delta formula"); });
    t.expect(rp.three_term, [] { return std::string("three-term formula"); });
    t.expect(rp.L_formula && rp.L_kills, [] { return std::string("L_ij formula"); });
    t.expect(rp.inside, [&] { return "closure " + std::to_string(rp.closure_one) + "/" + std::to_string(rp.closure_l1) + " exceeds " + std::to_string(rp.bound); });
  });
  return rec.take();
}

inline std::vector<CheckRecord> run_products(int m, int n, const SuiteConfig& cfg) {
  detail::Recorder rec("products", m, n);
  SplitMix64 r(detail::mix_seed(cfg.seed, "products", m, n));
  SuperSpace Z(m, n, {"z"});
  FockSpace F(Z);
  MatrixVarSpace S(m, n);
  Scalar half_neg = Scalar::rational(-1, 2);
  unsigned mcap = 3U;
  rec.run("constants", "engine omega normalises exp(-R^2); gamma = pi^M", [&](Tally& t) {
    SuperSpace X(m, n);
    L2Product l2(X);
    auto g = gaussian(X.one(), "x", 1);
    t.expect(l2(g, g) == Scalar(1), [&] { return "<exp(-R^2), exp(-R^2)> = " + l2(g, g).compact(); });
    t.expect(gamma(m, n) == gamma_closed_form(m, n), [&] { return detail::sides(gamma(m, n), gamma_closed_form(m, n)); });
    Scalar w = omega(m, n), c = omega_closed_form(m, n);
    t.expect(w == c || w == -c, [&] { return detail::sides(w, c); });
  });
  if (cfg.displayed)
    rec.run("omega_closed_form", "omega = 2^n (pi/2)^{M/2}", [&](Tally& t) {
      t.expect(omega(m, n) == omega_closed_form(m, n), [&] { return detail::sides(omega(m, n), omega_closed_form(m, n)); });
    });
  rec.run("fischer_equals_fock", "Fischer product equals Fock product on monomial pairs", [&](Tally& t) {
    auto basis = detail::monomials_up_to(Z, std::min(cfg.degree_cap + 2, 6U));
    for (const auto& p : basis)
      for (const auto& q : basis) {
        Scalar a = F.fischer(p, q), b = F.fock(p, q);
        t.expect(a == b, [&] { return "p=" + p.str() + " q=" + q.str() + ": " + detail::sides(a, b); });
      }
  });
  rec.run("adjoint_identities", "x_i and the lowered derivative are adjoint up to sign", [&](Tally& t) {
    for (unsigned s = 0; s < cfg.samples; ++s) {
      auto pp = static_cast<unsigned>(r.uniform(0, 1));
      auto k = static_cast<unsigned>(r.uniform(0, 3));
      Poly p = detail::random_homogeneous(Z, r, k, pp);
      Poly q = detail::random_homogeneous(Z, r, k + 1, static_cast<unsigned>(r.uniform(0, 1)));
      int i = static_cast<int>(r.uniform(1, Z.N()));
      Scalar sg((Z.parity(i) & pp) ? -1 : 1);
      Scalar lhs = F.fock(Z.x(i) * p, q), rhs = sg * F.fock(p, Z.derive_lowered(q, "z", i));
      t.expect(lhs == rhs, [&] { return "i=" + std::to_string(i) + " p=" + p.str() + " q=" + q.str() + ": " + detail::sides(lhs, rhs); });
      Scalar lf = F.fischer(Z.x(i) * p, q), rf = sg * F.fischer(p, Z.derive_lowered(q, "z", i));
      t.expect(lf == rf, [&] { return "Fischer, i=" + std::to_string(i) + ": " + detail::sides(lf, rf); });
    }
  });
  rec.run("bessel_fischer_is_folded_fischer", "Bessel-Fischer product at -1/2 equals the Fischer product after folding", [&](Tally& t) {
    Folding psi(S);
    BesselFischer B(S, half_neg);
    for (unsigned k = 0; k <= std::min(mcap, cfg.degree_cap); ++k) {
      auto basis = detail::monomials_of(S, k);
      for (const auto& p : basis)
        for (const auto& q : basis) {
          Scalar a = B(p, q), b = fischer(psi.target(), psi.fold(p), psi.fold(q));
          t.expect(a == b, [&] { return "p=" + p.str() + " q=" + q.str() + ": " + detail::sides(a, b); });
        }
    }
  });
  rec.run("gram_positivity", "Fischer Gram nonsingular, (., S_F .) positive definite, Bessel-Fischer rank = dim P_k - dim I_k", [&](Tally& t) {
    for (unsigned k = 0; k <= cfg.degree_cap; ++k) {
      auto basis = monomial_basis(Z, k);
      if (basis.empty()) continue;
      auto G = gram(basis, [&](const Poly& a, const Poly& b) { return fischer(Z, a, b); });
      t.expect(rank(G) == basis.size(), [&] { return "singular Gram matrix at k=" + std::to_string(k); });
    }
    auto rp = positivity_check(Z, cfg.degree_cap);
    t.expect(rp.ok(), [&] { return rp.witness; });
    for (Scalar lam : {Scalar(1), half_neg}) {
      BesselFischer B(S, lam);
      auto V = compute_V_lambda(S, lam);
      for (unsigned k = 1; k <= std::min(S.dim() > 6 ? 2U : 3U, cfg.degree_cap); ++k) {
        auto basis = detail::monomials_of(S, k);
        auto G = gram(basis, [&](const Poly& a, const Poly& b) { return B(a, b); });
        std::size_t want = basis.size() - ideal_slice(S, V, k).size(), got = rank(G);
        t.expect(got == want, [&] { return "Bessel-Fischer rank, lambda=" + lam.compact() + " k=" + std::to_string(k) + ": " + detail::sides(std::to_string(got), std::to_string(want)); });
      }
    }
  });
  rec.run("skew_supersymmetry", "pi~, rho~ and pi_lambda are skew-supersymmetric for their products", [&](Tally& t) {
    RepContext C(m, n);
    const auto& X = C.X();
    unsigned fam_cap = X.N() > 3 ? 2U : 3U;
    L2Product l2(X);
    std::vector<GaussianFunction> fam;
    for (const auto& p : detail::monomials_up_to(X, fam_cap)) fam.push_back(gaussian(p, "x", 1));
    auto act = [&](const DiffOp& A, const GaussianFunction& f) { return apply(X, A, f); };
    auto par = [](const GaussianFunction& f) { return static_cast<unsigned>(f.poly.parity()); };
    auto a = skew_supersymmetry_check(pi_tilde_U(C), fam, l2, act, par, &r, static_cast<int>(cfg.samples));
    t.expect(a.ok(), [&] { return "L2 / pi~: " + a.witness; });
    FockSpace FX(X);
    auto pfam = detail::monomials_up_to(X, fam_cap);
    auto pact = [](const DiffOp& A, const Poly& p) { return A.apply(p); };
    auto ppar = [](const Poly& p) { return static_cast<unsigned>(p.parity()); };
    auto fock = [&](const Poly& p, const Poly& q) { return FX.fock(p, q); };
    auto b = skew_supersymmetry_check(rho_tilde_U(C, pi_tilde_U(C)), pfam, fock, pact, ppar, &r, static_cast<int>(cfg.samples));
    t.expect(b.ok(), [&] { return "Fock / rho~: " + b.witness; });
    Folding psi(C.S());
    SchrodingerProduct O(psi);
    Poly L = two_e(C.S());
    auto sfam = detail::monomials_of(C.S(), 0);
    if (C.S().dim() <= 6)
      for (auto& p : detail::monomials_of(C.S(), 1)) sfam.push_back(std::move(p));
    auto sact = [&](const DiffOp& A, const Poly& p) { return apply_exp_linear(A, L, p); };
    auto c = skew_supersymmetry_check(pi_lambda(C, half_neg), sfam, O, sact, ppar, &r, static_cast<int>(std::min(cfg.samples, 10U)));
    t.expect(c.ok(), [&] { return "Schroedinger / pi_lambda: " + c.witness; });
  });
  rec.run("kernel_reproduction", "kernel slices and truncated kernels reproduce modulo I_lambda", [&](Tally& t) {
    KernelSpace K(S);
    for (Scalar lam : {Scalar(1), half_neg}) {
      BesselFischer B(S, lam);
      auto V = compute_V_lambda(S, lam);
      for (unsigned k = 0; k <= std::min(mcap, cfg.degree_cap); ++k) {
        Poly slice = K.slice(lam, k);
        auto ideal = ideal_slice(S, V, k);
        for (const auto& p : detail::monomials_of(S, k)) {
          Poly got = K.reproduce(B, p, slice);
          t.expect(equal_modulo(S, got, p, ideal, k), [&] { return "lambda=" + lam.compact() + " p=" + p.str() + " got " + got.str(); });
        }
      }
    }
    Folding psi(S);
    BesselFischer B(S, half_neg);
    unsigned cap = std::min(mcap, cfg.degree_cap);
    Poly kernel = K.truncated(half_neg, cap);
    Poly p = S.zero();
    for (unsigned k = 0; k <= cap; ++k)
      for (const auto& q : detail::monomials_of(S, k))
        if (r.uniform(0, 2) == 0) p += Scalar(r.coeff()) * q;
    Poly got = K.reproduce(B, p, kernel);
    t.expect(psi.fold(got) == psi.fold(p), [&] { return "truncated kernel on " + p.str() + ": got " + got.str(); });
    SuperSpace T2(m, n, {"z", "w"});
    Poly zw = T2.dot("z", "w");
    Scalar fact(1);
    for (unsigned k = 0; k <= 3; ++k) {
      if (k > 0) fact *= Scalar(static_cast<long>((2 * k - 1) * 2 * k));
      t.expect(K.fold(K.slice(half_neg, k), T2) == (Scalar(1) / fact) * zw.pow(2 * k),
               [&] { return "folded slice k=" + std::to_string(k) + " is not (z.w)^{2k}/(2k)!"; });
    }
    for (unsigned s = 0; s < std::min(cfg.samples, 4U); ++s) {
      Poly q = Z.zero();
      for (unsigned k = 0; k <= 3; ++k) q += detail::random_homogeneous(Z, r, k, static_cast<unsigned>(r.uniform(0, 1)));
      t.expect(F.reproduce(q, 3) == F.embed(q, "w"), [&] { return "Fock kernel on " + q.str(); });
    }
  });
  return rec.take();
}

inline std::vector<CheckRecord> run_transforms(int m, int n, const SuiteConfig& cfg) {
  detail::Recorder rec("transforms", m, n);
  SplitMix64 r(detail::mix_seed(cfg.seed, "transforms", m, n));
  RepContext C(m, n);
  const auto& X = C.X();
  SegalBargmann sb(X);
  Fourier F(X);
  unsigned cap = cfg.degree_cap;
  std::vector<HermiteIndex> family;
  for (unsigned k = 0; k <= cap; ++k)
    for (auto& a : hermite_indices(X, k)) family.push_back(std::move(a));
  auto w1 = [](const Poly& p) { return gaussian(p, "x", 1); };
  rec.run("sb_examples", "SB(exp(-R^2)) = 1 and SB(2 x_1 exp(-R^2)) = z_1", [&](Tally& t) {
    for (auto method : {SbMethod::Moments, SbMethod::HermiteBasis}) {
      Poly a = sb(w1(X.one()), method), b = sb(w1(Scalar(2) * X.x(1)), method);
      t.expect(a == X.one(), [&] { return detail::sides(a.str(), "1"); });
      t.expect(b == X.x(1), [&] { return detail::sides(b.str(), X.x(1).str()); });
    }
  });
  rec.run("sb_hermite", "SB(h~_alpha) = z^alpha", [&](Tally& t) {
    for (const auto& a : family) {
      auto h = hermite(X, a, HermiteVariant::h_tilde);
      for (auto method : {SbMethod::Moments, SbMethod::HermiteBasis}) {
        Poly got = sb(h, method);
        t.expect(got == a.monomial(X), [&] { return "alpha=" + a.str() + ": " + detail::sides(got.str(), a.monomial(X).str()); });
      }
    }
  });
  rec.run("sb_pipelines_agree", "moment and Hermite-basis SB pipelines agree", [&](Tally& t) {
    for (unsigned s = 0; s < cfg.samples; ++s) {
      Poly p = detail::random_poly(X, r, cap);
      Poly a = sb.moments(p), b = sb.hermite_basis(p);
      t.expect(a == b, [&] { return "p=" + p.str() + ": " + detail::sides(a, b); });
    }
  });
  rec.run("sb_inverse", "SB^-1 o SB = id and SB o SB^-1 = id", [&](Tally& t) {
    for (const auto& a : family) {
      auto got = sb.inverse(a.monomial(X));
      auto want = hermite(X, a, HermiteVariant::h_tilde);
      t.expect(got == want, [&] { return "alpha=" + a.str() + ": " + detail::sides(detail::gauss_str(got), detail::gauss_str(want)); });
    }
    for (unsigned s = 0; s < std::min(cfg.samples, 6U); ++s) {
      Poly p = detail::random_poly(X, r, std::min(cap, 3U));
      t.expect(sb(sb.inverse(p)) == p, [&] { return "SB(SB^-1(" + p.str() + "))"; });
      t.expect(sb.inverse(sb(w1(p))) == w1(p), [&] { return "SB^-1(SB(" + p.str() + " exp(-R^2)))"; });
    }
  });
  rec.run("sb_intertwining", "SB o pi~(X) = rho~(X) o SB on every U basis element", [&](Tally& t) {
    auto ptu = pi_tilde_U(C);
    auto rtu = rho_tilde_U(C, ptu);
    for (const auto& a : family) {
      auto h = hermite(X, a, HermiteVariant::h_tilde);
      Poly image = sb(h);
      for (std::size_t b = 0; b < C.g().dim(); ++b) {
        Poly lhs = sb(apply(X, ptu.basis(b), h)), rhs = rtu.basis(b).apply(image);
        t.expect(lhs == rhs, [&] { return C.g().alg().name(b) + " on h~_" + a.str() + ": " + detail::sides(lhs, rhs); });
      }
    }
  });
  rec.run("sb_superunitary", "<SB f, SB g>_F = <f, g>_W; even and odd parts orthogonal", [&](Tally& t) {
    FockSpace FX(X);
    L2Product l2(X);
    std::vector<GaussianFunction> fam;
    for (const auto& a : family) fam.push_back(hermite(X, a, HermiteVariant::h_tilde));
    std::vector<Poly> images;
    for (const auto& f : fam) images.push_back(sb(f));
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = 0; b < fam.size(); ++b) {
        Scalar lhs = FX.fock(images[a], images[b]), rhs = l2(fam[a], fam[b]);
        t.expect(lhs == rhs, [&] { return "h~_" + family[a].str() + ", h~_" + family[b].str() + ": " + detail::sides(lhs, rhs); });
        if ((family[a].degree() + family[b].degree()) % 2)
          t.expect(lhs.is_zero(), [&] { return "even/odd pair h~_" + family[a].str() + ", h~_" + family[b].str() + " not orthogonal"; });
      }
  });
  rec.run("sb_hat_diagram", "psi_C o SB^ = SB o psi_R and SB^ preserves the products", [&](Tally& t) {
    Folding psi(C.S());
    SegalBargmannHat hat(psi);
    SchrodingerProduct sch(psi);
    BesselFischer bf(C.S(), Scalar::rational(-1, 2));
    std::vector<Poly> fam;
    for (unsigned k = 0; k <= std::min(cap, C.S().dim() > 6 ? 1U : 2U); ++k)
      for (auto& p : detail::monomials_of(C.S(), k)) fam.push_back(std::move(p));
    std::vector<Poly> images;
    for (const auto& p : fam) {
      images.push_back(hat(p));
      t.expect(psi.fold(images.back()) == hat.folded(p), [&] { return "psi_C(SB^(" + p.str() + "))"; });
    }
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = 0; b < fam.size(); ++b) {
        Scalar lhs = bf(images[a], images[b]), rhs = sch(fam[a], fam[b]);
        t.expect(lhs == rhs, [&] { return fam[a].str() + ", " + fam[b].str() + ": " + detail::sides(lhs, rhs); });
      }
  });
  rec.run("fourier_inversion", "F+ F- = F- F+ = id", [&](Tally& t) {
    for (unsigned s = 0; s < std::min(cfg.samples, 6U); ++s) {
      mpq_class c = s % 2 ? mpq_class(1, 2) : mpq_class(1);
      auto f = gaussian(detail::random_poly(X, r, cap), "x", c);
      t.expect(F(F(f, -1), 1) == f && F(F(f, 1), -1) == f, [&] { return "f=" + detail::gauss_str(f); });
    }
  });
  rec.run("fourier_exchange", "F(d_i f) = -+i x_i F(f), F(x_i f) = -+i d_i F(f) for the kernel exp(+-i x.l)", [&](Tally& t) {
    for (unsigned s = 0; s < std::min(cfg.samples, 3U); ++s) {
      auto f = gaussian(detail::random_poly(X, r, std::min(cap, 3U)), "x", 1);
      for (int sg : {1, -1}) {
        Scalar si = Scalar(-sg) * Scalar::i();
        auto Ff = F(f, sg);
        for (int i = 1; i <= X.N(); ++i) {
          auto a = F(apply(X, X.dl(i), f), sg);
          auto b = gaussian(si * (X.x(i) * Ff.poly), "x", Ff.c("x"));
          t.expect(a == b, [&] { return "d_" + std::to_string(i) + ": " + detail::sides(detail::gauss_str(a), detail::gauss_str(b)); });
          auto c = F(X.x(i) * f, sg);
          auto dF = apply(X, X.dl(i), Ff);
          auto d = gaussian(si * dF.poly, "x", dF.c("x"));
          t.expect(c == d, [&] { return "x_" + std::to_string(i) + ": " + detail::sides(detail::gauss_str(c), detail::gauss_str(d)); });
        }
      }
    }
  });
  if (cfg.displayed)
    rec.run("fourier_exchange_displayed", "displayed F(d_i f) = +-i x_i F(f)", [&](Tally& t) {
      auto f = gaussian(X.one(), "x", 1);
      for (int sg : {1, -1}) {
        auto Ff = F(f, sg);
        auto a = F(apply(X, X.dl(1), f), sg);
        auto b = gaussian((Scalar(sg) * Scalar::i()) * (X.x(1) * Ff.poly), "x", Ff.c("x"));
        t.expect(a == b, [&] { return detail::sides(detail::gauss_str(a), detail::gauss_str(b)); });
      }
    });
  rec.run("fourier_l2", "<F+- f, g> = <f, F-+ g>", [&](Tally& t) {
    L2Product l2(X);
    for (unsigned s = 0; s < std::min(cfg.samples, 4U); ++s) {
      auto f = gaussian(detail::random_poly(X, r, std::min(cap, 3U)), "x", mpq_class(1, 2));
      auto g = gaussian(detail::random_poly(X, r, std::min(cap, 3U)), "x", mpq_class(1, 2));
      for (int sg : {1, -1}) {
        Scalar a = l2(F(f, sg), g), b = l2(f, F(g, -sg));
        t.expect(a == b, [&] { return detail::sides(a, b); });
      }
    }
  });
  rec.run("pi_hat_conjugation", "F- o pi~ o F+ equals the closed form of pi^", [&](Tally& t) {
    auto ptu = pi_tilde_U(C);
    auto ph = pi_hat_U(C);
    for (unsigned k = 0; k <= std::min(cap, 3U); ++k)
      for (const auto& p : monomial_basis(X, k)) {
        auto f = w1(p);
        for (std::size_t b = 0; b < C.g().dim(); ++b) {
          auto lhs = F(apply(X, ptu.basis(b), F(f, 1)), -1);
          auto rhs = apply(X, ph.basis(b), f);
          t.expect(lhs == rhs, [&] { return C.g().alg().name(b) + " on " + p.str() + ": " + detail::sides(detail::gauss_str(lhs), detail::gauss_str(rhs)); });
        }
      }
  });
  return rec.take();
}

inline std::vector<CheckRecord> run_gk(int m, int n, const SuiteConfig& /*cfg*/) {
  detail::Recorder rec("gk", m, n);
  rec.run("gk_counting", "dim P_{2j}: closed count equals enumeration, j <= 6", [&](Tally& t) {
    for (int j = 0; j <= 6; ++j) {
      long a = dim_P2j_formula(m, n, j), b = dim_P2j_enumerated(m, n, j);
      t.expect(a == b, [&] { return "j=" + std::to_string(j) + ": " + detail::sides(std::to_string(a), std::to_string(b)); });
    }
  });
  rec.run("gk_exponent", "growth exponent of the partial sums equals m", [&](Tally& t) {
    auto e = gk_exponent(m, n, 2 * n + m + 8);
    t.expect(e.has_value() && *e == m, [&] { return "exponent " + (e ? std::to_string(*e) : std::string("undetermined")) + ", m = " + std::to_string(m); });
  });
  return rec.take();
}

// ---------------------------------------------------------------------------
// Tables.

/// Smallest valid (m,n) with m - 2n = M.
inline std::pair<int, int> representative(int M) {
  if (M > 0) return {M, 0};
  if (M == 0) return {2, 1};
  if (M == -2) return {2, 2};
  int n = (1 - M) / 2;
  return {M + 2 * n, n};
}

inline Table vdim_table(int M_lo = -4, int M_hi = 4) {
  Table tb{"vdim", {"M", "m", "n", "lambda", "dim_even", "dim_odd", "sdim", "sdim_formula"}, {}};
  for (int M = M_lo; M <= M_hi; ++M) {
    auto [m, n] = representative(M);
    MatrixVarSpace S(m, n);
    for (Scalar lam : {Scalar(1), Scalar::rational(-1, 2)}) {
      auto V = compute_V_lambda(S, lam);
      tb.rows.push_back({std::to_string(M), std::to_string(m), std::to_string(n), lam.compact(), std::to_string(V.dim_even),
                         std::to_string(V.dim_odd), std::to_string(V.sdim()), V_sdim_formula(m, n, lam).compact()});
    }
  }
  return tb;
}

inline Table fischer_dims_table(const std::vector<std::pair<int, int>>& grid, unsigned cap) {
  Table tb{"fischer_dims", {"m", "n", "k", "dim_P_k", "summands", "rank", "direct"}, {}};
  for (auto [m, n] : grid) {
    SuperSpace X(m, n);
    for (unsigned k = 0; k <= cap; ++k) {
      auto cert = fischer_decompose(X, k);
      std::string parts;
      for (const auto& s : cert.summands) {
        if (!parts.empty()) parts += " + ";
        parts += "R^" + std::to_string(k - s.l) + (s.generalised ? " H~_" : " H_") + std::to_string(s.l) + ":" + std::to_string(s.dim);
      }
      tb.rows.push_back({std::to_string(m), std::to_string(n), std::to_string(k), std::to_string(cert.dim_Pk), parts,
                         std::to_string(cert.rank), cert.holds() ? "yes" : "no"});
    }
  }
  return tb;
}

inline Table gk_table(const std::vector<std::pair<int, int>>& grid, int k_max = 8) {
  Table tb{"gk", {"m", "n", "k", "dim_P_2k", "partial_sum", "exponent"}, {}};
  for (auto [m, n] : grid) {
    auto sums = gk_partial_sums(m, n, k_max);
    auto e = gk_exponent(m, n, std::max(k_max, 2 * n + m + 8));
    for (int k = 0; k <= k_max; ++k)
      tb.rows.push_back({std::to_string(m), std::to_string(n), std::to_string(k), std::to_string(dim_P2j_formula(m, n, k)),
                         std::to_string(sums[static_cast<std::size_t>(k)]), e ? std::to_string(*e) : "?"});
  }
  return tb;
}

inline Table hermite_table(int m, int n, unsigned cap, HermiteVariant v = HermiteVariant::H) {
  SuperSpace X(m, n);
  Table tb{"hermite", {"m", "n", "alpha", "value"}, {}};
  for (unsigned k = 0; k <= cap; ++k)
    for (const auto& a : hermite_indices(X, k)) {
      auto g = hermite(X, a, v);
      std::string val = g.poly.str();
      if (g.c("x") != 0) val = "(" + val + ") exp(-" + g.c("x").get_str() + " R^2)";
      tb.rows.push_back({std::to_string(m), std::to_string(n), a.str(), val});
    }
  return tb;
}

// ---------------------------------------------------------------------------

/// Runs every (suite, grid point) job concurrently; records come back in config order.
inline Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Report rep{cfg, {}, {}};
  using Job = std::function<std::vector<CheckRecord>(int, int, const SuiteConfig&)>;
  std::vector<std::future<std::vector<CheckRecord>>> futures;
  std::set<std::string> chosen(cfg.suites.begin(), cfg.suites.end());
  std::vector<std::pair<std::string, Job>> jobs = {{"algebra", run_algebra},   {"bessel", run_bessel},
                                                    {"reps", run_reps},         {"products", run_products},
                                                    {"transforms", run_transforms}, {"gk", run_gk}};
  for (const auto& [name, job] : jobs) {
    if (!chosen.count(name)) continue;
    for (auto [m, n] : cfg.grid) futures.push_back(std::async(std::launch::async, job, m, n, std::cref(cfg)));
  }
  for (auto& f : futures)
    for (auto& r : f.get()) rep.records.push_back(std::move(r));
  if (chosen.count("dims")) {
    rep.tables.push_back(vdim_table());
    rep.tables.push_back(fischer_dims_table(cfg.grid, cfg.degree_cap));
  }
  if (chosen.count("gk")) rep.tables.push_back(gk_table(cfg.grid));
  return rep;
}

}  // namespace spo
