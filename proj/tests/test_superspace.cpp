#include <gtest/gtest.h>

#include <utility>
#include <vector>

#include "spo/rng.hpp"
#include "spo/superspace.hpp"

using spo::DiffOp;
using spo::Mono;
using spo::Poly;
using spo::Scalar;
using spo::SuperSpace;

namespace {

// Oracle: sort a word of variables by adjacent transpositions, tracking Koszul signs.
std::pair<int, Mono> sort_word(const spo::VarSet& vs, std::vector<std::size_t> w) {
  int sign = 1;
  for (std::size_t pass = 0; pass < w.size(); ++pass)
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k] > w[k + 1]) {
        if (vs.parity[w[k]] && vs.parity[w[k + 1]]) sign = -sign;
        std::swap(w[k], w[k + 1]);
      }
  Mono m(vs.size(), 0);
  for (auto v : w) {
    if (vs.parity[v] && m[v]) return {0, m};
    ++m[v];
  }
  return {sign, m};
}

std::vector<std::size_t> word_of(const Mono& m) {
  std::vector<std::size_t> w;
  for (std::size_t v = 0; v < m.size(); ++v)
    for (unsigned e = 0; e < m[v]; ++e) w.push_back(v);
  return w;
}

Poly oracle_mul(const Poly& a, const Poly& b) {
  Poly r(a.vars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto w = word_of(ma);
      auto wb = word_of(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      auto [s, m] = sort_word(*a.vars(), w);
      if (s) r.add_term(m, Scalar(s) * ca * cb);
    }
  return r;
}

// Oracle: left derivative acting letter by letter on the word.
Poly oracle_derive(const Poly& p, std::size_t v) {
  const auto& vs = *p.vars();
  Poly r(p.vars());
  for (const auto& [m, c] : p.terms()) {
    auto w = word_of(m);
    int passed = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] == v) {
        auto rest = w;
        rest.erase(rest.begin() + static_cast<long>(k));
        auto [s, mm] = sort_word(vs, rest);
        int sg = (vs.parity[v] && (passed & 1)) ? -1 : 1;
        if (s) r.add_term(mm, Scalar(s * sg) * c);
      }
      if (vs.parity[w[k]]) ++passed;
    }
  }
  return r;
}

Poly random_poly(const SuperSpace& S, spo::SplitMix64& r, unsigned maxdeg, int terms) {
  Poly p = S.zero();
  for (int t = 0; t < terms; ++t) {
    unsigned d = static_cast<unsigned>(r.uniform(0, maxdeg));
    auto monos = S.monomials(S.bank(), d);
    if (monos.empty()) continue;
    const auto& m = monos[static_cast<std::size_t>(r.uniform(0, static_cast<long>(monos.size()) - 1))];
    p += Poly::monomial(S.vars(), m, Scalar(r.coeff()));
  }
  return p;
}

Poly random_homogeneous(const SuperSpace& S, spo::SplitMix64& r, unsigned maxdeg, unsigned parity) {
  for (int tries = 0; tries < 50; ++tries) {
    Poly p = random_poly(S, r, maxdeg, 4).parity_part(parity);
    if (!p.is_zero()) return p;
  }
  return S.zero();
}

const std::vector<std::pair<int, int>> kGrid = {{1, 1}, {2, 0}, {0, 2}, {2, 1}, {3, 0}, {1, 2}};

}  // namespace

TEST(PolyMul, OddVariablesAnticommute) {
  SuperSpace S(1, 1);
  EXPECT_EQ(S.x(2) * S.x(3), oracle_mul(S.x(2), S.x(3)));
  EXPECT_EQ(S.x(3) * S.x(2), -(S.x(2) * S.x(3)));
  EXPECT_TRUE((S.x(2) * S.x(2)).is_zero());
}

TEST(PolyMul, CrossTermsAgainstWordOracle) {
  SuperSpace S(1, 1);
  Poly a = S.x(1) + S.x(2), b = S.x(1) - S.x(2);
  Poly expect = oracle_mul(a, b);
  EXPECT_EQ(a * b, expect);
  // x1 is even, so x1 x2 = x2 x1 and x2^2 = 0
  EXPECT_EQ(expect, S.x(1) * S.x(1));
}

TEST(PolyMul, MatchesWordOracleRandom) {
  spo::SplitMix64 r(21);
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    for (int t = 0; t < 30; ++t) {
      Poly a = random_poly(S, r, 3, 4), b = random_poly(S, r, 3, 4);
      EXPECT_EQ(a * b, oracle_mul(a, b));
    }
  }
}

TEST(PolyMul, SuperCommutativity) {
  spo::SplitMix64 r(22);
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    for (int t = 0; t < 30; ++t) {
      unsigned pa = static_cast<unsigned>(r.uniform(0, 1)), pb = static_cast<unsigned>(r.uniform(0, 1));
      Poly a = random_homogeneous(S, r, 3, pa), b = random_homogeneous(S, r, 3, pb);
      Scalar s((pa & pb) ? -1 : 1);
      EXPECT_EQ(a * b, s * (b * a));
    }
  }
}

TEST(Derive, KoszulSigns) {
  SuperSpace S(1, 1);
  Poly x23 = S.x(2) * S.x(3);
  EXPECT_EQ(x23.derive(S.var("x", 2)), S.x(3));
  EXPECT_EQ(x23.derive(S.var("x", 3)), -S.x(2));
  EXPECT_EQ(S.x(1).pow(3).derive(S.var("x", 1)), Scalar(3) * S.x(1).pow(2));
}

TEST(Derive, MatchesLetterOracle) {
  spo::SplitMix64 r(23);
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    for (int t = 0; t < 20; ++t) {
      Poly p = random_poly(S, r, 5, 6);
      for (int i = 1; i <= S.N(); ++i) EXPECT_EQ(p.derive(S.var("x", i)), oracle_derive(p, S.var("x", i)));
    }
  }
}

TEST(Derive, LoweredMatchesContraction) {
  for (auto [m, n] : kGrid) {
    if (n == 0) continue;
    SuperSpace S(m, n);
    for (int i = 1; i <= S.N(); ++i)
      for (int k = 1; k <= S.N(); ++k) {
        // sum_j beta_ij d/dl_j (l_k) = beta_ik
        Poly got = S.derive_lowered(S.x(k), "x", i);
        EXPECT_EQ(got, S.constant(S.beta(i, k)));
      }
    EXPECT_TRUE(S.derive_lowered(S.x(m + 1), "x", m + 1).is_zero());
  }
}

TEST(Derive, SuperLeibniz) {
  spo::SplitMix64 r(24);
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    for (int t = 0; t < 15; ++t) {
      unsigned pa = static_cast<unsigned>(r.uniform(0, 1));
      Poly a = random_homogeneous(S, r, 3, pa), b = random_poly(S, r, 3, 4);
      for (int i = 1; i <= S.N(); ++i) {
        auto v = S.var("x", i);
        Scalar s((S.parity(i) & pa) ? -1 : 1);
        EXPECT_EQ((a * b).derive(v), a.derive(v) * b + s * (a * b.derive(v)));
      }
    }
  }
}

TEST(Special, LaplacianOfSquare) {
  SuperSpace S(1, 0);
  EXPECT_EQ(S.Delta().apply(S.x(1) * S.x(1)), S.constant(2));
}

TEST(Special, RadialSquareOddPair) {
  SuperSpace S(0, 1);
  Poly expect = S.zero();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) expect += S.beta_inv(i, j) * oracle_mul(S.x(i), S.x(j));
  EXPECT_EQ(S.R2(), expect);
  EXPECT_EQ(S.R2(), Scalar(2) * (S.x(1) * S.x(2)));
}

TEST(Special, EulerHomogeneity) {
  SuperSpace S(2, 0, {"z"});
  Poly p = S.x(1).pow(2) * S.x(2);
  EXPECT_EQ(S.Euler().apply(p), Scalar(3) * p);
}

TEST(Special, DerivativeAnticommutationConsistency) {
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    for (int i = 1; i <= S.N(); ++i)
      for (int j = 1; j <= S.N(); ++j) {
        DiffOp a = S.d(i) * S.d(j), b = S.d(j) * S.d(i);
        EXPECT_EQ(a, Scalar(S.sgn(i, j)) * b);
        Poly q = S.x(j) * S.x(i);
        EXPECT_EQ(a.apply(q), oracle_derive(oracle_derive(q, S.var("x", j)), S.var("x", i)));
      }
  }
}

TEST(OpAlgebra, Sl2TripleRelations) {
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    DiffOp R2 = S.mult(S.R2()), D = S.Delta(), E = S.Euler();
    EXPECT_EQ(spo::bracket(D, R2), Scalar(4) * E + S.scalar_op(Scalar(2 * S.M())));
    EXPECT_EQ(spo::bracket(R2, E), Scalar(-2) * R2);
    EXPECT_EQ(spo::bracket(D, E), Scalar(2) * D);
    for (int i = 1; i <= S.N(); ++i)
      for (int j = 1; j <= S.N(); ++j) {
        DiffOp L = S.L(i, j);
        EXPECT_TRUE(spo::bracket(D, L).is_zero());
        EXPECT_TRUE(spo::bracket(R2, L).is_zero());
        EXPECT_TRUE(spo::bracket(E, L).is_zero());
      }
    // (R^2, E + M/2, -Delta/2) as an sl(2)-triple
    DiffOp e = R2, h = E + S.scalar_op(Scalar::rational(S.M(), 2)), f = Scalar::rational(-1, 2) * D;
    EXPECT_EQ(spo::bracket(e, f), Scalar(2) * h);
    EXPECT_EQ(spo::bracket(h, e), Scalar(2) * e);
    EXPECT_EQ(spo::bracket(h, f), Scalar(-2) * f);
  }
}

TEST(OpAlgebra, NormalFormSoundness) {
  spo::SplitMix64 r(25);
  for (auto [m, n] : kGrid) {
    SuperSpace S(m, n);
    for (int t = 0; t < 8; ++t) {
      std::vector<DiffOp> factors;
      int k = static_cast<int>(r.uniform(2, 4));
      for (int f = 0; f < k; ++f) {
        if (r.uniform(0, 1)) factors.push_back(S.mult(random_poly(S, r, 2, 2)));
        else factors.push_back(S.d(static_cast<int>(r.uniform(1, S.N()))));
      }
      DiffOp A = factors[0];
      for (std::size_t f = 1; f < factors.size(); ++f) A = A * factors[f];
      for (int s = 0; s < 3; ++s) {
        Poly p = random_poly(S, r, 6, 5);
        Poly direct = p;
        for (std::size_t f = factors.size(); f-- > 0;) direct = factors[f].apply(direct);
        EXPECT_EQ(A.apply(p), direct);
      }
    }
  }
}

TEST(OpAlgebra, BracketSkewSymmetry) {
  SuperSpace S(1, 1);
  DiffOp a = S.mult(S.x(2)) * S.d(1), b = S.d(3) * S.d(2) + S.mult(S.x(1));
  DiffOp ab = spo::bracket(a, b), ba = spo::bracket(b, a);
  // a is odd; b mixes parities, so compare componentwise
  for (unsigned q = 0; q < 2; ++q) {
    DiffOp bq = b.parity_part(q);
    EXPECT_EQ(spo::bracket(a, bq), Scalar(q ? 1 : -1) * spo::bracket(bq, a));
  }
  EXPECT_FALSE(ab.is_zero());
  (void)ba;
}

TEST(Parse, RoundTrip) {
  SuperSpace S(1, 1, {"z"});
  Poly p = S.parse("3*z1^2*z2 - 1/2*i*z3 + sqrt2");
  Poly q = Scalar(3) * S.x(1).pow(2) * S.x(2) + Scalar::gauss(0, mpq_class(-1, 2)) * S.x(3) +
           S.constant(Scalar::sqrt2());
  EXPECT_EQ(p, q);
  EXPECT_EQ(S.parse("z3*z2"), -(S.x(2) * S.x(3)));
}
