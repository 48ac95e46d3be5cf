#include <gtest/gtest.h>

#include "spo/rng.hpp"
#include "spo/scalar.hpp"

using spo::Scalar;

namespace {

Scalar random_scalar(spo::SplitMix64& r) {
  Scalar s;
  int terms = static_cast<int>(r.uniform(1, 3));
  for (int t = 0; t < terms; ++t) {
    Scalar part = Scalar::gauss(mpq_class(r.coeff(), r.coeff_nonzero()), mpq_class(r.coeff(), 2));
    if (r.uniform(0, 1)) part *= Scalar::sqrt2();
    part *= Scalar::sqrt_pi_pow(static_cast<int>(r.uniform(-2, 2)));
    s += part;
  }
  return s;
}

Scalar random_monomial(spo::SplitMix64& r) {
  Scalar s = Scalar::gauss(mpq_class(r.coeff_nonzero(), r.coeff_nonzero()), mpq_class(r.coeff(), 3));
  if (r.uniform(0, 1)) s += Scalar::gauss(r.coeff(), 0) * Scalar::sqrt2();
  return s * Scalar::sqrt_pi_pow(static_cast<int>(r.uniform(-3, 3)));
}

}  // namespace

TEST(Scalar, GaussianIntegerNorm) {
  Scalar a = Scalar::gauss(1, 1), b = Scalar::gauss(1, -1);
  EXPECT_EQ(a * b, Scalar(2));
}

TEST(Scalar, SqrtTwoSquared) { EXPECT_EQ(Scalar::sqrt2() * Scalar::sqrt2(), Scalar(2)); }

TEST(Scalar, LaurentCancellation) {
  // (pi/2)^{-1/2} * 2 times (pi/2)^{1/2}
  Scalar a = Scalar::sqrt_pi_pow(-1) * Scalar::sqrt2() * Scalar(2);
  Scalar b = Scalar::sqrt_pi_pow(1) * Scalar::sqrt2() * Scalar::rational(1, 2);
  EXPECT_EQ(a * b, Scalar(2));
}

TEST(Scalar, ZeroDetection) {
  EXPECT_TRUE(Scalar().is_zero());
  EXPECT_TRUE((Scalar::sqrt2() - Scalar::sqrt2()).is_zero());
  EXPECT_TRUE((Scalar(2) - Scalar::sqrt2() * Scalar::sqrt2()).is_zero());
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(1) / Scalar(), spo::ScalarError); }

TEST(Scalar, MultiTermDivision) {
  Scalar b = Scalar(1) + Scalar::sqrt_pi_pow(2);
  Scalar a = b * (Scalar(3) - Scalar::sqrt_pi_pow(-1) * Scalar::sqrt2());
  EXPECT_EQ(a / b, Scalar(3) - Scalar::sqrt_pi_pow(-1) * Scalar::sqrt2());
  EXPECT_THROW(Scalar(1) / b, spo::ScalarError);
}

TEST(Scalar, FieldAxiomsRandom) {
  spo::SplitMix64 r(7);
  for (int t = 0; t < 200; ++t) {
    Scalar x = random_scalar(r), y = random_scalar(r), z = random_scalar(r);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    Scalar w = random_monomial(r);
    EXPECT_EQ((x / w) * w, x);
    EXPECT_EQ(w * (Scalar(1) / w), Scalar(1));
  }
}

TEST(Scalar, ConjugationIsInvolutiveAutomorphism) {
  spo::SplitMix64 r(11);
  for (int t = 0; t < 100; ++t) {
    Scalar x = random_scalar(r), y = random_scalar(r);
    EXPECT_EQ(x.conj().conj(), x);
    EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
    EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
  }
  EXPECT_EQ(Scalar::sqrt2().conj(), Scalar::sqrt2());
  EXPECT_EQ(Scalar::sqrt_pi_pow(3).conj(), Scalar::sqrt_pi_pow(3));
  EXPECT_EQ(Scalar::i().conj(), -Scalar::i());
}

TEST(Scalar, TextRoundTrip) {
  spo::SplitMix64 r(3);
  for (int t = 0; t < 100; ++t) {
    Scalar x = random_scalar(r);
    EXPECT_EQ(Scalar::parse(x.str()), x) << x.str();
  }
  EXPECT_EQ(Scalar::parse("((1/2) + (-3/4)i) * sqrt2 * pi^(-3/2)"),
            Scalar::gauss(mpq_class(1, 2), mpq_class(-3, 4)) * Scalar::sqrt2() * Scalar::sqrt_pi_pow(-3));
  EXPECT_EQ(Scalar().str(), "((0/1) + (0/1)i)");
  EXPECT_EQ(Scalar(2).str(), "((2/1) + (0/1)i)");
}

TEST(Scalar, CanonicalFormIdempotent) {
  spo::SplitMix64 r(5);
  for (int t = 0; t < 50; ++t) {
    Scalar x = random_scalar(r);
    Scalar y = x + Scalar();
    EXPECT_EQ(y.terms(), x.terms());
    for (const auto& [k, q] : x.terms()) EXPECT_FALSE(q.is_zero());
  }
}
