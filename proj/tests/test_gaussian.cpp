#include <gtest/gtest.h>

#include "spo/gaussian.hpp"
#include "spo/rng.hpp"

using spo::GaussianFunction;
using spo::Poly;
using spo::Scalar;
using spo::SuperSpace;

namespace {

Poly random_poly(const SuperSpace& S, spo::SplitMix64& r, unsigned max_deg, const std::string& bank = "x") {
  Poly p = S.zero();
  for (unsigned k = 0; k <= max_deg; ++k)
    for (const auto& m : S.monomials(bank, k))
      if (r.uniform(0, 2) == 0) p.add_term(m, Scalar(r.coeff()));
  return p;
}

// Oracle: closed-form one-dimensional moments computed by recursion
// I_k = (k-1)/(2c) I_{k-2}, I_0 = sqrt(pi/c).
Scalar moment_oracle(unsigned k, const mpq_class& c) {
  if (k & 1U) return Scalar();
  Scalar v = Scalar::sqrt_pi_pow(1) / spo::sqrt_rational(c);
  for (unsigned t = 2; t <= k; t += 2) v = v * Scalar(mpq_class(t - 1) / (2 * c));
  return v;
}

}  // namespace

TEST(Gaussian, SqrtRational) {
  EXPECT_EQ(spo::sqrt_rational(mpq_class(9, 4)), Scalar::rational(3, 2));
  EXPECT_EQ(spo::sqrt_rational(mpq_class(2)), Scalar::sqrt2());
  EXPECT_EQ(spo::sqrt_rational(mpq_class(1, 2)), Scalar::rational(1, 2) * Scalar::sqrt2());
  EXPECT_THROW(spo::sqrt_rational(mpq_class(3)), spo::IntegrationError);
}

TEST(Gaussian, BerezinTopMonomial) {
  SuperSpace S(0, 1);
  EXPECT_EQ(spo::berezin(S, S.x(1) * S.x(2), "x"), S.constant(Scalar::pi_pow(-1)));
  EXPECT_TRUE(spo::berezin(S, S.one(), "x").is_zero());
  // exp(-2R^2) = 1 - 4 x1 x2 since R^2 = 2 x1 x2 here.
  Poly e = spo::exp_series(Scalar(-2) * S.R2());
  EXPECT_EQ(e, S.one() - Scalar(4) * (S.x(1) * S.x(2)));
  EXPECT_EQ(spo::berezin(S, e, "x"), S.constant(Scalar(-4) * Scalar::pi_pow(-1)));
}

TEST(Gaussian, EvenMomentsMatchRecursion) {
  for (unsigned k = 0; k <= 8; ++k)
    for (mpq_class c : {mpq_class(1), mpq_class(2), mpq_class(1, 2), mpq_class(1, 4)})
      EXPECT_EQ(spo::even_moment(k, c), moment_oracle(k, c)) << k << " " << c.get_str();
  EXPECT_EQ(spo::even_moment(4, 1), Scalar::rational(3, 4) * Scalar::sqrt_pi_pow(1));
}

TEST(Gaussian, OddEvenMomentVanishes) {
  SuperSpace S(2, 1);
  EXPECT_TRUE(spo::integrate_real_scalar(S, spo::gaussian(S.x(1), "x", 2), "x").is_zero());
}

TEST(Gaussian, DivergentIntegralThrows) {
  SuperSpace S(1, 0);
  EXPECT_THROW(spo::integrate_real(S, GaussianFunction{S.x(1) * S.x(1), {}}, "x"), spo::IntegrationError);
  SuperSpace T(0, 1);
  EXPECT_NO_THROW(spo::integrate_real(T, GaussianFunction{T.x(1) * T.x(2), {}}, "x"));
}

TEST(Gaussian, OmegaMagnitudeAndSign) {
  // The engine integrates literally; the result equals the printed closed form
  // up to the sign (-1)^{n(n+1)/2} coming from ordering the top odd monomial.
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      if (m == 0 && n == 1) continue;
      Scalar w = spo::omega(m, n);
      int s = ((n * (n + 1) / 2) % 2) ? -1 : 1;
      EXPECT_EQ(w, Scalar(s) * spo::omega_closed_form(m, n)) << m << "," << n;
    }
  EXPECT_EQ(spo::omega(2, 0), Scalar::pi_pow(1) / Scalar(2));
  EXPECT_EQ(spo::omega(2, 1), Scalar(-2));
}

TEST(Gaussian, GammaMatchesClosedForm) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      if (m == 0 && n == 1) continue;
      EXPECT_EQ(spo::gamma(m, n), spo::gamma_closed_form(m, n)) << m << "," << n;
    }
}

TEST(Gaussian, ComplexMoments) {
  SuperSpace S(1, 1, {"z", "zbar"});
  Scalar g = spo::gamma(1, 1);
  EXPECT_EQ(spo::integrate_complex_scalar(S, S.x("z", 1) * S.x("zbar", 1), "z", "zbar") / g, Scalar(1));
  EXPECT_TRUE(spo::integrate_complex_scalar(S, S.x("z", 1), "z", "zbar").is_zero());
  EXPECT_EQ(spo::integrate_complex_scalar(S, S.x("z", 1).pow(3) * S.x("zbar", 1).pow(3), "z", "zbar") / g,
            Scalar(6));
}

TEST(Gaussian, TwistedDerivative) {
  SuperSpace S(1, 0);
  GaussianFunction g = spo::gaussian(S.one(), "x", 1);
  auto h = spo::apply(S, S.d(1), g);
  EXPECT_EQ(h.poly, Scalar(-2) * S.x(1));
  auto h2 = spo::apply(S, S.d(1) * S.d(1), g);
  EXPECT_EQ(h2.poly, Scalar(4) * S.x(1) * S.x(1) - S.constant(2));
}

TEST(Gaussian, IntegralOfDerivativeVanishes) {
  spo::SplitMix64 r(17);
  for (auto [m, n] : {std::pair{1, 1}, {2, 0}, {0, 2}, {2, 1}, {1, 2}}) {
    SuperSpace S(m, n);
    for (mpq_class c : {mpq_class(1), mpq_class(2), mpq_class(1, 2)})
      for (int t = 0; t < 4; ++t) {
        GaussianFunction g = spo::gaussian(random_poly(S, r, 3), "x", c);
        for (int i = 1; i <= S.N(); ++i) {
          auto dg = spo::apply(S, S.d(i), g);
          EXPECT_TRUE(spo::integrate_real_scalar(S, dg, "x").is_zero()) << m << "," << n << " i=" << i;
        }
      }
  }
}

TEST(Gaussian, Linearity) {
  spo::SplitMix64 r(23);
  SuperSpace S(1, 1);
  for (int t = 0; t < 10; ++t) {
    Poly p = random_poly(S, r, 3), q = random_poly(S, r, 3);
    Scalar a(r.coeff()), b(r.coeff());
    auto I = [&](const Poly& f) { return spo::integrate_real_scalar(S, spo::gaussian(f, "x", 1), "x"); };
    EXPECT_EQ(I(a * p + b * q), a * I(p) + b * I(q));
  }
}

TEST(Gaussian, ParameterBanksPassThrough) {
  SuperSpace S(1, 0, {"x", "z"});
  // int exp(2 z x - x^2) truncated: int (1 + 2zx + 2z^2x^2) exp(-x^2) = sqrt(pi)(1 + z^2)
  Poly p = S.one() + Scalar(2) * S.x("z", 1) * S.x("x", 1) +
           Scalar(2) * S.x("z", 1).pow(2) * S.x("x", 1).pow(2);
  Poly got = spo::integrate_real(S, spo::gaussian(p, "x", 1), "x");
  EXPECT_EQ(got, Scalar::sqrt_pi_pow(1) * (S.one() + S.x("z", 1).pow(2)));
}
