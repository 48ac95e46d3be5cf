// Copyright 2026 The spomin Authors
// SPDX-License-Identifier: Apache-2.0
//
// spomin: runs the identity suites and prints tables, Gram matrices and transforms.
// Exit codes: 0 all checks pass, 1 some check fails, 2 bad configuration.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spo/suite.hpp"

using nlohmann::ordered_json;
using namespace spo;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

ordered_json table_json(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json o;
    for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = r[c];
    rows.push_back(std::move(o));
  }
  return {{"kind", t.kind}, {"rows", std::move(rows)}};
}

void print_table_text(std::ostream& os, const Table& t) {
  std::vector<std::size_t> w(t.columns.size());
  for (std::size_t c = 0; c < w.size(); ++c) {
    w[c] = t.columns[c].size();
    for (const auto& r : t.rows) w[c] = std::max(w[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << cells[c];
      if (c + 1 < cells.size()) os << std::string(w[c] - cells[c].size() + 2, ' ');
    }
    os << '\n';
  };
  os << "# " << t.kind << '\n';
  line(t.columns);
  for (const auto& r : t.rows) line(r);
}

ordered_json report_json(const Report& rep) {
  ordered_json grid = ordered_json::array();
  for (auto [m, n] : rep.config.grid) grid.push_back({m, n});
  ordered_json checks = ordered_json::array();
  for (const auto& r : rep.records) {
    ordered_json o{{"suite", r.suite}, {"check_id", r.check_id}, {"anchor", r.anchor}, {"m", r.m}, {"n", r.n}, {"status", status_str(r.status)}};
    if (!r.witness.empty()) o["witness"] = r.witness;
    checks.push_back(std::move(o));
  }
  ordered_json tables = ordered_json::array();
  for (const auto& t : rep.tables) tables.push_back(table_json(t));
  return {{"config",
           {{"grid", grid},
            {"suites", rep.config.suites},
            {"degree_cap", rep.config.degree_cap},
            {"samples", rep.config.samples},
            {"seed", rep.config.seed},
            {"include_displayed", rep.config.displayed}}},
          {"summary",
           {{"pass", rep.count(CheckStatus::Pass)}, {"fail", rep.count(CheckStatus::Fail)}, {"skipped", rep.count(CheckStatus::Skipped)}}},
          {"checks", std::move(checks)},
          {"tables", std::move(tables)}};
}

void print_report_text(std::ostream& os, const Report& rep) {
  for (const auto& r : rep.records) {
    os << (r.status == CheckStatus::Pass ? "PASS" : r.status == CheckStatus::Fail ? "FAIL" : "SKIP") << "  " << r.suite << '/'
       << r.check_id << " (" << r.m << ',' << r.n << ")  " << r.anchor << '\n';
    if (!r.witness.empty()) os << "      " << r.witness << '\n';
  }
  for (const auto& t : rep.tables) {
    os << '\n';
    print_table_text(os, t);
  }
  os << '\n'
     << rep.count(CheckStatus::Pass) << " passed, " << rep.count(CheckStatus::Fail) << " failed, " << rep.count(CheckStatus::Skipped)
     << " skipped\n";
}

std::vector<std::pair<int, int>> make_grid(const std::vector<int>& ms, const std::vector<int>& ns, const SuiteConfig& dflt) {
  if (ms.empty() && ns.empty()) return dflt.grid;
  if (ms.size() != ns.size()) throw ConfigError("--m and --n must be given the same number of times");
  std::vector<std::pair<int, int>> g;
  for (std::size_t i = 0; i < ms.size(); ++i) g.emplace_back(ms[i], ns[i]);
  return g;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& it : items) {
    std::stringstream ss(it);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

struct GramResult {
  std::vector<std::string> labels;
  Mat G;
};

GramResult gram_of(const ProductId& id, int m, int n, unsigned k) {
  GramResult r;
  if (id.kind == ProductKind::Fock || id.kind == ProductKind::Fischer) {
    SuperSpace Z(m, n, {"z"});
    FockSpace F(Z);
    auto basis = monomial_basis(Z, k);
    for (const auto& p : basis) r.labels.push_back(p.str());
    if (id.kind == ProductKind::Fock) r.G = gram(basis, [&](const Poly& a, const Poly& b) { return F.fock(a, b); });
    else r.G = gram(basis, [&](const Poly& a, const Poly& b) { return fischer(Z, a, b); });
    return r;
  }
  if (id.kind == ProductKind::L2) {
    SuperSpace X(m, n);
    L2Product l2(X);
    std::vector<GaussianFunction> basis;
    for (const auto& p : monomial_basis(X, k)) {
      r.labels.push_back(p.str() + " exp(-R^2)");
      basis.push_back(gaussian(p, "x", 1));
    }
    r.G = zero_mat(basis.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) r.G[a][b] = l2(basis[a], basis[b]);
    return r;
  }
  MatrixVarSpace S(m, n);
  std::vector<Poly> basis = detail::monomials_of(S, k);
  for (const auto& p : basis) r.labels.push_back(p.str());
  if (id.kind == ProductKind::BesselFischer) {
    BesselFischer B(S, id.lambda);
    r.G = gram(basis, [&](const Poly& a, const Poly& b) { return B(a, b); });
  } else {
    Folding psi(S);
    SchrodingerProduct O(psi);
    r.G = gram(basis, [&](const Poly& a, const Poly& b) { return O(a, b); });
  }
  return r;
}

struct VerifyRow {
  std::string identity;
  bool ok;
  std::string counterexample;
};

std::vector<VerifyRow> verify_rep(const std::string& tag, int m, int n) {
  RepContext C(m, n);
  Scalar hbar = Scalar::rational(1, 2);
  auto pick = [&]() -> Realisation {
    if (tag == "pi_lambda") return pi_lambda(C, Scalar::rational(-1, 2));
    if (tag == "pi_lambda_1") return pi_lambda(C, Scalar(1));
    if (tag == "rho_lambda") return rho_lambda(C, pi_lambda(C, Scalar::rational(-1, 2)));
    if (tag == "pi_tilde") return pi_tilde(C);
    if (tag == "rho_tilde") return rho_tilde(C, pi_tilde(C));
    if (tag == "pi_tilde_U") return pi_tilde_U(C);
    if (tag == "rho_tilde_U") return rho_tilde_U(C, pi_tilde_U(C));
    if (tag == "pi_hat_U") return pi_hat_U(C);
    if (tag == "U_star") return U_star(C, hbar);
    if (tag == "mu_star") return mu_star(C, U_star(C, hbar), hbar);
    throw ConfigError("unknown representation tag '" + tag + "'");
  };
  Realisation rep = pick();
  const auto& A = rep.algebra();
  std::vector<VerifyRow> rows;
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = a; b < A.dim(); ++b) {
      DiffOp lhs = rep(A.bracket(A.unit(a), A.unit(b)));
      DiffOp rhs = bracket(rep(A.unit(a)), rep(A.unit(b)));
      DiffOp diff = lhs - rhs;
      VerifyRow r{"rep[" + A.name(a) + ", " + A.name(b) + "] = [rep " + A.name(a) + ", rep " + A.name(b) + "]", diff.is_zero(), ""};
      if (!r.ok) r.counterexample = "difference " + diff.str();
      rows.push_back(std::move(r));
    }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spomin: exact checks for the minimal representation of spo(2m|2n,2n)"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  SuiteConfig dflt;
  std::vector<int> ms, ns;
  std::vector<std::string> suites;
  SuiteConfig cfg;
  app.add_option("--m", ms, "even dimension m (repeat to build a grid, paired with --n)");
  app.add_option("--n", ns, "odd dimension n (repeat to build a grid, paired with --m)");
  app.add_option("--suite", suites, "suites to run: " + [] {
    std::string s;
    for (const auto& n : kSuiteNames) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  app.add_option("--degree-cap", cfg.degree_cap, "maximal polynomial degree (at most 8)");
  app.add_option("--samples", cfg.samples, "random samples per identity");
  app.add_option("--seed", cfg.seed, "seed of the random checks");
  app.add_option("--format", cfg.format, "json or text");
  app.add_flag("--include-displayed", cfg.displayed, "also compare with displayed forms that disagree with the computation");

  auto* table = app.add_subcommand("table", "print a table");
  std::string kind = "vdim";
  std::string variant = "H";
  table->add_option("--kind", kind, "vdim, fischer_dims, gk or hermite");
  table->add_option("--variant", variant, "Hermite variant for --kind hermite");

  auto* gram_cmd = app.add_subcommand("gram", "exact Gram matrix of a product on degree k");
  std::string product = "fock";
  unsigned k = 2;
  gram_cmd->add_option("--product", product, "fischer, fock, l2, schrodinger, bessel_fischer(1), bessel_fischer(-1/2)");
  gram_cmd->add_option("--k", k, "degree");

  auto* herm = app.add_subcommand("hermite", "one super Hermite function");
  std::string alpha;
  herm->add_option("--alpha", alpha, "multi-index, for example 2,0,1")->required();
  herm->add_option("--variant", variant, "h, H, h_tilde or H_tilde");

  auto* sb_cmd = app.add_subcommand("sb", "Segal-Bargmann transform of p exp(-R^2)");
  std::string input;
  bool inverse = false;
  sb_cmd->add_option("--input", input, "polynomial in x1..xN, for example 2*x1 + x3*x4")->required();
  sb_cmd->add_flag("--inverse", inverse, "apply the inverse to a polynomial in x1..xN read as z1..zN");

  auto* verify = app.add_subcommand("verify", "bracket homomorphism of one realisation, pair by pair");
  std::string tag;
  verify->add_option("--rep", tag, "pi_lambda, rho_lambda, pi_tilde, rho_tilde, pi_tilde_U, rho_tilde_U, pi_hat_U, U_star, mu_star")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    cfg.grid = make_grid(ms, ns, dflt);
    if (!suites.empty()) cfg.suites = split_list(suites);
    cfg.validate();
    bool json = cfg.format == "json";
    auto [m0, n0] = cfg.grid.front();

    if (table->parsed()) {
      Table t;
      if (kind == "vdim") t = vdim_table();
      else if (kind == "fischer_dims") t = fischer_dims_table(cfg.grid, cfg.degree_cap);
      else if (kind == "gk") t = gk_table(cfg.grid);
      else if (kind == "hermite") t = hermite_table(m0, n0, std::min(cfg.degree_cap, 3U), parse_hermite_variant(variant));
      else throw ConfigError("unknown table kind '" + kind + "'");
      if (json) std::cout << table_json(t).dump(2) << '\n';
      else print_table_text(std::cout, t);
      return 0;
    }

    if (gram_cmd->parsed()) {
      if (k > kMaxDegreeCap) throw ConfigError("degree above " + std::to_string(kMaxDegreeCap));
      ProductId id;
      try {
        id = ProductId::parse(product);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      auto r = gram_of(id, m0, n0, k);
      if (json) {
        ordered_json mat = ordered_json::array();
        for (const auto& row : r.G) {
          ordered_json jr = ordered_json::array();
          for (const auto& c : row) jr.push_back(c.compact());
          mat.push_back(std::move(jr));
        }
        ordered_json out{{"product", id.str()}, {"m", m0}, {"n", n0}, {"k", k}, {"basis", r.labels}, {"matrix", std::move(mat)}};
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << "# " << id.str() << " on degree " << k << ", (m,n) = (" << m0 << ',' << n0 << ")\n";
        for (std::size_t a = 0; a < r.G.size(); ++a) {
          std::cout << r.labels[a] << ":";
          for (const auto& c : r.G[a]) std::cout << ' ' << c.compact();
          std::cout << '\n';
        }
      }
      return 0;
    }

    if (herm->parsed()) {
      SuperSpace X(m0, n0);
      HermiteIndex a;
      for (const auto& tok : split_list({alpha})) a.alpha.push_back(static_cast<unsigned>(std::stoul(tok)));
      try {
        a.validate(X);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      auto v = parse_hermite_variant(variant);
      auto g = hermite(X, a, v);
      std::string c = g.weight.empty() ? "0" : g.c("x").get_str();
      if (json) std::cout << ordered_json{{"m", m0}, {"n", n0}, {"alpha", a.str()}, {"variant", variant}, {"poly", g.poly.str()}, {"weight", c}}.dump(2) << '\n';
      else if (c == "0") std::cout << g.poly.str() << '\n';
      else std::cout << "(" << g.poly.str() << ") exp(-" << c << " R^2)\n";
      return 0;
    }

    if (sb_cmd->parsed()) {
      SuperSpace X(m0, n0);
      Poly p = X.zero();
      try {
        p = X.parse(input);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot parse input: ") + e.what());
      }
      SegalBargmann sb(X);
      std::string out;
      if (inverse) {
        auto g = sb.inverse(p);
        out = "(" + g.poly.str() + ") exp(-R^2)";
      } else {
        out = sb(gaussian(p, "x", 1)).str();
      }
      if (json) std::cout << ordered_json{{"m", m0}, {"n", n0}, {"input", p.str()}, {"inverse", inverse}, {"output", out}}.dump(2) << '\n';
      else std::cout << out << '\n';
      return 0;
    }

    if (verify->parsed()) {
      auto rows = verify_rep(tag, m0, n0);
      bool all = true;
      ordered_json jr = ordered_json::array();
      for (const auto& r : rows) {
        all = all && r.ok;
        ordered_json o{{"identity", r.identity}, {"status", r.ok ? "pass" : "fail"}};
        if (!r.ok) o["counterexample"] = r.counterexample;
        jr.push_back(std::move(o));
      }
      if (json) {
        std::cout << ordered_json{{"rep", tag}, {"m", m0}, {"n", n0}, {"rows", std::move(jr)}}.dump(2) << '\n';
      } else {
        for (const auto& r : rows) std::cout << (r.ok ? "PASS  " : "FAIL  ") << r.identity << (r.ok ? "" : "  " + r.counterexample) << '\n';
      }
      return all ? 0 : kExitFail;
    }

    Report rep = run_suite(cfg);
    if (json) std::cout << report_json(rep).dump(2) << '\n';
    else print_report_text(std::cout, rep);
    return rep.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
}
