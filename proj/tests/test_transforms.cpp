#include <gtest/gtest.h>

#include "spo/products.hpp"
#include "spo/reps.hpp"
#include "spo/transforms.hpp"

namespace spo {
void PrintTo(const GaussianFunction& g, std::ostream* os) {
  *os << "(" << g.poly.str() << ")";
  for (const auto& [b, c] : g.weight) *os << " exp(-" << c.get_str() << " R2_" << b << ")";
}
}  // namespace spo

using spo::GaussianFunction;
using spo::HermiteIndex;
using spo::HermiteVariant;
using spo::Poly;
using spo::Scalar;
using spo::SuperSpace;

namespace {

const std::vector<std::pair<int, int>> kGrid = {{1, 1}, {2, 0}, {0, 2}, {2, 1}, {3, 0}, {1, 2}};

Poly random_poly(const SuperSpace& X, spo::SplitMix64& r, unsigned cap) {
  Poly p = X.zero();
  for (unsigned k = 0; k <= cap; ++k)
    for (const auto& m : X.monomials(X.bank(), k))
      if (r.uniform(0, 2) == 0) p.add_term(m, Scalar::gauss(r.coeff(), r.coeff()));
  return p;
}

std::vector<HermiteIndex> indices_up_to(const SuperSpace& X, unsigned cap) {
  std::vector<HermiteIndex> out;
  for (unsigned k = 0; k <= cap; ++k)
    for (auto& a : spo::hermite_indices(X, k)) out.push_back(std::move(a));
  return out;
}

HermiteIndex unit_index(const SuperSpace& X, int i) {
  HermiteIndex a{std::vector<unsigned>(static_cast<std::size_t>(X.N()), 0)};
  a.alpha[static_cast<std::size_t>(i - 1)] = 1;
  return a;
}

GaussianFunction w1(const Poly& p) { return spo::gaussian(p, "x", 1); }

// Degree caps that keep the larger grid points fast.
unsigned cap_for(const SuperSpace& X, unsigned want) { return X.N() > 4 ? std::min(want, 3U) : want; }

}  // namespace

TEST(Transforms, ClassicalHermitePolynomials) {
  // Oracle: H_{k+1} = 2x H_k - 2k H_{k-1}.
  SuperSpace X(1, 0);
  Poly x = X.x(1);
  std::vector<Poly> H = {X.one(), Scalar(2) * x};
  for (unsigned k = 1; k < 6; ++k) H.push_back(Scalar(2) * x * H[k] - Scalar(2 * static_cast<long>(k)) * H[k - 1]);
  for (unsigned k = 0; k <= 6; ++k) {
    HermiteIndex a{{k}};
    EXPECT_EQ(spo::hermite_poly(X, a, HermiteVariant::H), H[k]) << k;
    auto h = spo::hermite(X, a, HermiteVariant::h);
    EXPECT_EQ(h.poly, H[k]);
    EXPECT_EQ(h.c("x"), mpq_class(1, 2));
  }
  EXPECT_EQ(spo::hermite_poly(X, HermiteIndex{{2}}, HermiteVariant::H), X.parse("4*x1^2 - 2"));
}

TEST(Transforms, HermiteZeroIndexAndFirstTilde) {
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    HermiteIndex zero{std::vector<unsigned>(static_cast<std::size_t>(X.N()), 0)};
    EXPECT_EQ(spo::hermite(X, zero, HermiteVariant::h), spo::gaussian(X.one(), "x", mpq_class(1, 2)));
    EXPECT_EQ(spo::hermite(X, zero, HermiteVariant::h_tilde), spo::gaussian(X.one(), "x", 1));
    EXPECT_EQ(spo::hermite_poly(X, zero, HermiteVariant::H), X.one());
    EXPECT_EQ(spo::hermite_poly(X, zero, HermiteVariant::H_tilde), X.one());
    EXPECT_EQ(spo::hermite(X, unit_index(X, 1), HermiteVariant::h_tilde), spo::gaussian(Scalar(2) * X.x(1), "x", 1))
        << m << "," << n;
  }
}

TEST(Transforms, HermiteRenormalisation) {
  // Oracle: h~_a(x) = sqrt2^{-|a|} h_a(sqrt2 x) by substitution.
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    std::vector<Poly> scaled;
    for (int i = 1; i <= X.N(); ++i) scaled.push_back(Scalar::sqrt2() * X.x(i));
    for (const auto& a : indices_up_to(X, cap_for(X, 4))) {
      auto h = spo::hermite(X, a, HermiteVariant::h);
      Poly want = Scalar::sqrt2_pow(-static_cast<int>(a.degree())) * h.poly.substitute(scaled, X.vars());
      auto ht = spo::hermite(X, a, HermiteVariant::h_tilde);
      EXPECT_EQ(ht.poly, want) << m << "," << n << " " << a.str();
      EXPECT_EQ(ht.c("x"), 1);
      EXPECT_EQ(spo::hermite_poly(X, a, HermiteVariant::H_tilde), ht.poly);
    }
  }
}

TEST(Transforms, HermiteRejectsBadIndex) {
  SuperSpace X(1, 1);
  EXPECT_THROW(spo::hermite(X, HermiteIndex{{0, 2, 0}}, HermiteVariant::h), spo::TransformError);
  EXPECT_THROW(spo::hermite(X, HermiteIndex{{1, 0}}, HermiteVariant::h), spo::TransformError);
  EXPECT_THROW(spo::parse_hermite_variant("g"), spo::TransformError);
}

TEST(Transforms, SegalBargmannExamples) {
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::SegalBargmann sb(X);
    for (auto method : {spo::SbMethod::Moments, spo::SbMethod::HermiteBasis}) {
      EXPECT_EQ(sb(w1(X.one()), method), X.one()) << m << "," << n;
      EXPECT_EQ(sb(w1(Scalar(2) * X.x(1)), method), X.x(1)) << m << "," << n;
    }
    EXPECT_THROW(sb(spo::gaussian(X.one(), "x", 2)), spo::TransformError);
    EXPECT_THROW(sb(spo::gaussian(X.one(), "x", 0)), spo::TransformError);
  }
}

TEST(Transforms, SegalBargmannOfHermiteIsMonomial) {
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::SegalBargmann sb(X);
    for (const auto& a : indices_up_to(X, 4)) {
      auto h = spo::hermite(X, a, HermiteVariant::h_tilde);
      EXPECT_EQ(sb(h), a.monomial(X)) << m << "," << n << " " << a.str();
      EXPECT_EQ(sb(h, spo::SbMethod::HermiteBasis), a.monomial(X)) << m << "," << n << " " << a.str();
    }
  }
}

TEST(Transforms, SegalBargmannPipelinesAgree) {
  spo::SplitMix64 r(31);
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::SegalBargmann sb(X);
    for (int t = 0; t < 4; ++t) {
      Poly p = random_poly(X, r, 4);
      EXPECT_EQ(sb.moments(p), sb.hermite_basis(p)) << m << "," << n << " " << p.str();
    }
  }
}

TEST(Transforms, InverseSegalBargmann) {
  spo::SplitMix64 r(37);
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::SegalBargmann sb(X);
    EXPECT_EQ(sb.inverse(X.one()), spo::gaussian(X.one(), "x", 1)) << m << "," << n;
    for (const auto& a : indices_up_to(X, 4))
      EXPECT_EQ(sb.inverse(a.monomial(X)), spo::hermite(X, a, HermiteVariant::h_tilde)) << m << "," << n << " " << a.str();
    for (int t = 0; t < 3; ++t) {
      Poly p = random_poly(X, r, 3);
      EXPECT_EQ(sb(sb.inverse(p)), p) << m << "," << n;
      EXPECT_EQ(sb.inverse(sb(w1(p))), w1(p)) << m << "," << n;
    }
  }
}

TEST(Transforms, SegalBargmannIntertwines) {
  for (auto [m, n] : kGrid) {
    spo::RepContext C(m, n);
    const auto& X = C.X();
    spo::SegalBargmann sb(X);
    auto pt = spo::pi_tilde_U(C);
    auto rt = spo::rho_tilde_U(C, pt);
    auto family = indices_up_to(X, 4);
    std::vector<Poly> images;
    for (const auto& a : family) images.push_back(sb(spo::hermite(X, a, HermiteVariant::h_tilde)));
    std::size_t failures = 0;
    for (std::size_t b = 0; b < C.g().dim(); ++b)
      for (std::size_t t = 0; t < family.size(); ++t) {
        auto h = spo::hermite(X, family[t], HermiteVariant::h_tilde);
        if (sb(spo::apply(X, pt.basis(b), h)) != rt.basis(b).apply(images[t])) ++failures;
      }
    EXPECT_EQ(failures, 0U) << m << "," << n;
  }
}

TEST(Transforms, SegalBargmannIsSuperunitary) {
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::SegalBargmann sb(X);
    spo::FockSpace F(X);
    spo::L2Product l2(X);
    std::vector<GaussianFunction> family;
    for (const auto& a : indices_up_to(X, 4)) family.push_back(spo::hermite(X, a, HermiteVariant::h_tilde));
    family.push_back(w1(X.parse(m > 0 ? "1 + 2*i*x1^2" : "x1*x2 - i")));
    std::vector<Poly> images;
    for (const auto& f : family) images.push_back(sb(f));
    std::size_t failures = 0;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = 0; b < family.size(); ++b) {
        Scalar lhs = F.fock(images[a], images[b]);
        if (lhs != l2(family[a], family[b])) ++failures;
        // Even against odd degree is orthogonal on both sides.
        int pa = images[a].max_degree() % 2, pb = images[b].max_degree() % 2;
        bool homogeneous = images[a].degree_part(static_cast<unsigned>(images[a].max_degree())) == images[a];
        if (homogeneous && images[b].degree_part(static_cast<unsigned>(images[b].max_degree())) == images[b] && pa != pb)
          EXPECT_TRUE(lhs.is_zero());
      }
    EXPECT_EQ(failures, 0U) << m << "," << n;
  }
}

TEST(Transforms, SegalBargmannHatDiagram) {
  // psi_C o SB^ = SB o psi_R, and SB^ carries the Schroedinger product to the
  // Bessel-Fischer product at lambda = -1/2.
  for (auto [m, n] : kGrid) {
    spo::MatrixVarSpace S(m, n);
    spo::Folding psi(S);
    spo::SegalBargmannHat hat(psi);
    spo::SchrodingerProduct sch(psi);
    spo::BesselFischer bf(S, Scalar::rational(-1, 2));
    std::vector<Poly> family;
    for (unsigned k = 0; k <= (S.dim() > 6 ? 1U : 2U); ++k)
      for (const auto& mono : S.monomials(k)) family.push_back(Poly::monomial(S.vars(), mono));
    std::vector<Poly> images;
    for (const auto& p : family) {
      images.push_back(hat(p));
      EXPECT_EQ(psi.fold(images.back()), hat.folded(p)) << m << "," << n << " " << p.str();
    }
    std::size_t failures = 0;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = 0; b < family.size(); ++b)
        if (bf(images[a], images[b]) != sch(family[a], family[b])) ++failures;
    EXPECT_EQ(failures, 0U) << m << "," << n;
  }
}

TEST(Transforms, FourierOfTheGaussian) {
  SuperSpace X(1, 0);
  spo::Fourier F(X);
  for (int s : {1, -1}) {
    auto g = F(spo::gaussian(X.one(), "x", 1), s);
    EXPECT_EQ(g, spo::gaussian(X.constant(Scalar::sqrt2_pow(-1)), "x", mpq_class(1, 4)));
  }
  // Oracle: int l exp(+-i x l - l^2) dl = +-(i x / 2) sqrt(pi) exp(-x^2/4).
  auto g = F(spo::gaussian(X.x(1), "x", 1), 1);
  EXPECT_EQ(g, spo::gaussian((Scalar::i() * Scalar::sqrt2_pow(-3)) * X.x(1), "x", mpq_class(1, 4)));
  EXPECT_THROW(F(spo::gaussian(X.one(), "x", 0), 1), spo::TransformError);
  EXPECT_THROW(F(spo::gaussian(X.one(), "x", 1), 2), spo::TransformError);
}

TEST(Transforms, FourierInversion) {
  spo::SplitMix64 r(41);
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::Fourier F(X);
    for (mpq_class c : {mpq_class(1), mpq_class(1, 2)})
      for (int t = 0; t < 3; ++t) {
        auto f = spo::gaussian(random_poly(X, r, 4), "x", c);
        EXPECT_EQ(F(F(f, -1), 1), f) << m << "," << n;
        EXPECT_EQ(F(F(f, 1), -1), f) << m << "," << n;
      }
  }
}

TEST(Transforms, FourierExchangeProperties) {
  // Signs follow the kernel exp(+-i x.l): integrating by parts gives
  // F(d_i f) = -+i x_i F(f) and F(l_i f) = -+i d_i F(f).
  spo::SplitMix64 r(43);
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::Fourier F(X);
    for (int t = 0; t < 2; ++t) {
      auto f = spo::gaussian(random_poly(X, r, 3), "x", 1);
      for (int s : {1, -1}) {
        Scalar si = Scalar(-s) * Scalar::i();
        auto Ff = F(f, s);
        for (int i = 1; i <= X.N(); ++i) {
          auto lhs = F(spo::apply(X, X.dl(i), f), s);
          EXPECT_EQ(lhs, spo::gaussian(si * (X.x(i) * Ff.poly), "x", Ff.c("x"))) << m << "," << n << " d" << i;
          auto lhs2 = F(X.x(i) * f, s);
          auto rhs2 = spo::apply(X, X.dl(i), Ff);
          EXPECT_EQ(lhs2, spo::gaussian(si * rhs2.poly, "x", rhs2.c("x"))) << m << "," << n << " x" << i;
        }
      }
    }
  }
}

TEST(Transforms, DisplayedExchangeSignIsOpposite) {
  // Oracle at (1,0): int exp(i x l) d/dl exp(-l^2) dl = -i x int exp(i x l) exp(-l^2) dl.
  // The displayed rule F+(d f) = +i x F+(f) therefore fails by an overall sign.
  SuperSpace X(1, 0);
  spo::Fourier F(X);
  auto f = spo::gaussian(X.one(), "x", 1);
  auto lhs = F(spo::apply(X, X.dl(1), f), 1);
  auto Ff = F(f, 1);
  EXPECT_EQ(lhs, spo::gaussian((Scalar(-1) * Scalar::i()) * (X.x(1) * Ff.poly), "x", Ff.c("x")));
  EXPECT_NE(lhs, spo::gaussian(Scalar::i() * (X.x(1) * Ff.poly), "x", Ff.c("x")));
}

TEST(Transforms, FourierPreservesTheL2Product) {
  spo::SplitMix64 r(47);
  for (auto [m, n] : kGrid) {
    SuperSpace X(m, n);
    spo::Fourier F(X);
    spo::L2Product l2(X);
    for (int t = 0; t < 3; ++t) {
      auto f = spo::gaussian(random_poly(X, r, 3), "x", mpq_class(1, 2));
      auto g = spo::gaussian(random_poly(X, r, 3), "x", mpq_class(1, 2));
      for (int s : {1, -1}) EXPECT_EQ(l2(F(f, s), g), l2(f, F(g, -s))) << m << "," << n;
    }
  }
}

TEST(Transforms, PiHatIsFourierConjugation) {
  for (auto [m, n] : kGrid) {
    spo::RepContext C(m, n);
    const auto& X = C.X();
    spo::Fourier F(X);
    auto pt = spo::pi_tilde_U(C);
    auto ph = spo::pi_hat_U(C);
    std::vector<GaussianFunction> family;
    for (unsigned k = 0; k <= cap_for(X, 3); ++k)
      for (const auto& p : spo::monomial_basis(X, k)) family.push_back(w1(p));
    std::size_t failures = 0;
    for (std::size_t b = 0; b < C.g().dim(); ++b)
      for (const auto& f : family)
        if (F(spo::apply(X, pt.basis(b), F(f, 1)), -1) != spo::apply(X, ph.basis(b), f)) ++failures;
    EXPECT_EQ(failures, 0U) << m << "," << n;
  }
}
