#include <gtest/gtest.h>

#include "spo/bessel.hpp"
#include "spo/rng.hpp"

using spo::BesselConstruction;
using spo::Character;
using spo::MatrixVarSpace;
using spo::Poly;
using spo::Scalar;

namespace {

const std::vector<std::pair<int, int>> kGrid = {{1, 0}, {2, 0}, {1, 1}, {0, 2}, {2, 1}, {3, 0}, {1, 2}};

Scalar half_neg() { return Scalar::rational(-1, 2); }

Poly random_poly(const MatrixVarSpace& S, spo::SplitMix64& r, unsigned max_deg) {
  Poly p = S.zero();
  for (unsigned k = 0; k <= max_deg; ++k)
    for (const auto& m : S.monomials(k))
      if (r.uniform(0, 3) == 0) p.add_term(m, Scalar(r.coeff()));
  return p;
}

// Oracle: rank of a family of polynomials, computed via their coefficient vectors.
std::size_t rank_of(const MatrixVarSpace& S, const std::vector<Poly>& family, unsigned k) {
  spo::MonomialIndex idx(S.monomials(k));
  spo::Mat rows;
  for (const auto& p : family) rows.push_back(idx.coords(p));
  return rows.empty() ? 0 : spo::rank(rows);
}

bool same_span(const MatrixVarSpace& S, const std::vector<Poly>& a, const std::vector<Poly>& b, unsigned k) {
  std::vector<Poly> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  std::size_t r = rank_of(S, ab, k);
  return r == rank_of(S, a, k) && r == rank_of(S, b, k);
}

}  // namespace

TEST(Bessel, DerivativeDuality) {
  for (auto [m, n] : kGrid) EXPECT_NO_THROW(MatrixVarSpace(m, n)) << m << "," << n;
}

TEST(Bessel, MonomialCountMatchesBinomials) {
  // dim P_k = sum_i C(odd, i) C(k - i + even - 1, even - 1).
  auto binom = [](long a, long b) -> long {
    if (b < 0 || a < b) return 0;
    long r = 1;
    for (long t = 1; t <= b; ++t) r = r * (a - b + t) / t;
    return r;
  };
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    long e = S.m_hat(), o = S.n_hat() * 2;
    for (unsigned k = 0; k <= 4; ++k) {
      long want = 0;
      for (long i = 0; i <= std::min<long>(o, k); ++i) want += binom(o, i) * binom(k - i + e - 1, e - 1);
      if (e == 0) want = binom(o, k);
      EXPECT_EQ(static_cast<long>(S.monomials(k).size()), want) << m << "," << n << " k=" << k;
    }
  }
}

TEST(Bessel, DefinitionalMatchesExplicit) {
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    for (Scalar lam : {Scalar(1), half_neg(), Scalar::rational(7, 3)}) {
      Character chi{lam};
      for (int i = 1; i <= S.N(); ++i)
        for (int j = 1; j <= S.N(); ++j) {
          auto a = spo::bessel_operator(S, chi, i, j, BesselConstruction::Definitional);
          auto b = spo::bessel_operator(S, chi, i, j, BesselConstruction::Explicit);
          EXPECT_TRUE((a - b).is_zero()) << m << "," << n << " (" << i << "," << j << ") " << (a - b).str();
        }
    }
  }
}

TEST(Bessel, BesselOperatorsSupercommute) {
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    for (Scalar lam : {Scalar(1), half_neg(), Scalar(2), Scalar::rational(7, 3)})
      EXPECT_EQ(spo::bessel_supercommutation_failures(S, Character{lam}), 0U) << m << "," << n << " " << lam.str();
  }
}

TEST(Bessel, BesselIsLinearInX) {
  spo::SplitMix64 r(5);
  MatrixVarSpace S(2, 1);
  Character chi{Scalar(1)};
  const auto& J = S.J();
  for (int t = 0; t < 4; ++t) {
    spo::Vec x(J.dim());
    for (auto& c : x) c = Scalar(r.coeff());
    spo::DiffOp sum(S.vars());
    for (std::size_t a = 0; a < J.dim(); ++a)
      sum += x[a] * spo::bessel_definitional(S, chi, spo::unit_vec(J.dim(), a));
    EXPECT_TRUE((sum - spo::bessel_definitional(S, chi, x)).is_zero());
  }
}

TEST(Bessel, SolverAgreesWithNullspaceAndDisplayedFamilies) {
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    for (Scalar lam : {Scalar(1), half_neg()}) {
      auto solved = spo::compute_V_lambda(S, lam);
      auto direct = spo::annihilated_quadratics(S, Character{lam});
      auto shown = spo::graded_basis(S, lam, spo::printed_V_family(S, lam), 2);
      EXPECT_TRUE(same_span(S, solved.basis, direct.basis, 2)) << m << "," << n << " " << lam.str();
      EXPECT_TRUE(same_span(S, solved.basis, shown.basis, 2)) << m << "," << n << " " << lam.str();
      EXPECT_EQ(solved.dim_even, direct.dim_even);
      EXPECT_EQ(solved.dim_odd, direct.dim_odd);
    }
  }
}

TEST(Bessel, DimensionFormulas) {
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    for (Scalar lam : {Scalar(1), half_neg()}) {
      auto V = spo::compute_V_lambda(S, lam);
      auto [e, o] = spo::V_dimension_formula(m, n, lam);
      EXPECT_EQ(static_cast<long>(V.dim_even), e) << m << "," << n << " " << lam.str();
      EXPECT_EQ(static_cast<long>(V.dim_odd), o) << m << "," << n << " " << lam.str();
      EXPECT_EQ(Scalar(V.sdim()), spo::V_sdim_formula(m, n, lam));
    }
  }
  auto V = spo::compute_V_lambda(MatrixVarSpace(2, 0), half_neg());
  EXPECT_EQ(V.dim_even, 1U);
  EXPECT_EQ(V.dim_odd, 0U);
  EXPECT_EQ(spo::V_sdim_formula(0, 2, Scalar(1)), Scalar(1));
  EXPECT_EQ(spo::V_sdim_formula(0, 2, half_neg()), Scalar(20));
}

TEST(Bessel, OtherLambdasGiveNoQuadratics) {
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    for (Scalar lam : {Scalar(2), Scalar::rational(7, 3), Scalar(0)}) {
      auto V = spo::compute_V_lambda(S, lam);
      auto D = spo::annihilated_quadratics(S, Character{lam});
      EXPECT_EQ(V.basis.size(), D.basis.size()) << m << "," << n << " " << lam.str();
      if (lam == Scalar(2)) EXPECT_TRUE(V.basis.empty()) << m << "," << n;
    }
  }
}

TEST(Bessel, FoldingBasics) {
  spo::SplitMix64 r(11);
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    spo::Folding psi(S);
    const auto& T = psi.target();
    EXPECT_EQ(psi.fold(S.linear(spo::scale(Scalar(2), S.J().unit()))), T.R2()) << m << "," << n;
    for (int t = 0; t < 3; ++t) {
      Poly q = S.zero();
      for (unsigned k = 0; k <= 3; ++k) q += random_poly(S, r, 2 * k).degree_part(k);
      Poly folded = psi.fold(q);
      EXPECT_EQ(psi.fold(psi.unfold(folded)), folded);
    }
  }
}

TEST(Bessel, FoldingKillsVMinusHalf) {
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    spo::Folding psi(S);
    for (const auto& q : spo::compute_V_lambda(S, half_neg()).basis) EXPECT_TRUE(psi.fold(q).is_zero()) << q.str();
  }
}

TEST(Bessel, FoldingIntertwinesBesselAndLaplacian) {
  spo::SplitMix64 r(13);
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    spo::Folding psi(S);
    auto B = spo::bessel_definitional(S, Character{half_neg()}, spo::scale(Scalar(2), S.J().unit()));
    for (int t = 0; t < 4; ++t) {
      Poly p = random_poly(S, r, 3);
      EXPECT_EQ(psi.fold(B.apply(p)), psi.target().Delta().apply(psi.fold(p))) << m << "," << n;
    }
  }
}

TEST(Bessel, IdealSliceIsKernelOfFolding) {
  // Oracle: the kernel of psi on P_k as a nullspace of the folding matrix.
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    spo::Folding psi(S);
    auto V = spo::compute_V_lambda(S, half_neg());
    for (unsigned k = 2; k <= (S.dim() > 6 ? 3U : 4U); ++k) {
      auto slice = spo::ideal_slice(S, V, k);
      auto monos = S.monomials(k);
      spo::MonomialIndex tgt(psi.target().monomials("x", 2 * k));
      spo::Mat A = spo::zero_mat(tgt.size(), monos.size());
      for (std::size_t c = 0; c < monos.size(); ++c) {
        auto v = tgt.coords(psi.fold(Poly::monomial(S.vars(), monos[c])));
        for (std::size_t rr = 0; rr < v.size(); ++rr) A[rr][c] = v[rr];
      }
      std::size_t kernel = monos.size() - spo::rank(A);
      EXPECT_EQ(slice.size(), kernel) << m << "," << n << " k=" << k;
      for (const auto& q : slice) EXPECT_TRUE(psi.fold(q).is_zero());
    }
  }
}

TEST(Bessel, GrassmannFoldingOnVOne) {
  // theta_i theta_j realises V_1 in its kernel only while N <= 3; from N = 4 the
  // elements with four distinct indices survive.
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    spo::GrassmannFolding psi1(S);
    auto V = spo::compute_V_lambda(S, Scalar(1));
    bool all_killed = true;
    for (const auto& q : V.basis) all_killed = all_killed && psi1.fold(q).is_zero();
    EXPECT_EQ(all_killed, S.N() <= 3) << m << "," << n;
  }
}

TEST(Bessel, UnitAndTraceElements) {
  // Oracle: direct expansion over i <= j with the pairs (i,j), (j,i) collected.
  for (auto [m, n] : kGrid) {
    MatrixVarSpace S(m, n);
    const auto& J = S.J();
    Poly diag = S.zero(), odd = S.zero();
    for (int i = 1; i <= m; ++i) diag += S.var(i, i);
    for (int i = m + 1; i <= S.N(); ++i)
      for (int j = i + 1; j <= S.N(); ++j) odd += J.beta_inv(i, j) * S.var(i, j);
    EXPECT_EQ(spo::two_e(S), diag + Scalar(2) * odd) << m << "," << n;
    EXPECT_EQ(spo::trace_element(S), diag + odd) << m << "," << n;
    EXPECT_EQ(spo::two_e_displayed(S), diag + Scalar::rational(1, 2) * odd);
    // The displayed expansion, tr and 2e coincide exactly in the symplectic case.
    EXPECT_EQ(spo::two_e_displayed(S) == spo::two_e(S), n == 0) << m << "," << n;
    EXPECT_EQ(spo::trace_element(S) == spo::two_e(S), n == 0) << m << "," << n;
  }
}
