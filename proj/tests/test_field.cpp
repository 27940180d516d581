#include <gtest/gtest.h>

#include "frobtrace/field.hpp"

using namespace frobtrace;

namespace {

// Hand-rolled F_9 = F_3[t]/(t^2+1): (a + b t)(c + d t) = (ac - bd) + (ad + bc) t.
struct F9 {
  int a, b;
};
F9 mul9(F9 x, F9 y) { return {((x.a * y.a - x.b * y.b) % 3 + 3) % 3, (x.a * y.b + x.b * y.a) % 3}; }
F9 add9(F9 x, F9 y) { return {(x.a + y.a) % 3, (x.b + y.b) % 3}; }

Scalar lift(const FieldRef& f, F9 x) {
  return Scalar::from_coeffs(f, {static_cast<Residue>(x.a), static_cast<Residue>(x.b)});
}

}  // namespace

TEST(Field, SpecExamples) {
  const auto f2 = FieldSpec::prime(2);
  EXPECT_TRUE((Scalar::one(f2) + Scalar::one(f2)).is_zero());
  const auto f5 = FieldSpec::prime(5);
  EXPECT_EQ(Scalar::from_int(f5, 2) * Scalar::from_int(f5, 3), Scalar::one(f5));
  const auto f7 = FieldSpec::prime(7);
  EXPECT_EQ(Scalar::from_int(f7, 180), Scalar::from_int(f7, 180 % 7));
  EXPECT_EQ(Scalar::from_int(f7, 180).to_string(), "5");
  EXPECT_EQ(Scalar::from_int(f7, -1).to_string(), "6");

  EXPECT_EQ(Scalar::one(f2).frobenius(3), Scalar::one(f2));
  EXPECT_EQ(Scalar::from_int(f5, 2).frobenius(1), Scalar::from_int(f5, 2));
  EXPECT_EQ(Scalar::one(f2).inverse_frobenius(5), Scalar::one(f2));

  const auto f9 = FieldSpec::extension(3, {1, 0, 1});
  const Scalar t = Scalar::from_coeffs(f9, {0, 1});
  EXPECT_EQ(t.frobenius(1), Scalar::from_coeffs(f9, {0, 2}));
  EXPECT_EQ(Scalar::from_coeffs(f9, {0, 2}).inverse_frobenius(1), t);
  EXPECT_EQ(t.to_string(), "[0,1]");
}

TEST(Field, F9AgainstHandTables) {
  const auto f9 = FieldSpec::extension(3, {1, 0, 1});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const F9 x{a, b}, y{c, d};
          EXPECT_EQ(lift(f9, x) * lift(f9, y), lift(f9, mul9(x, y)));
          EXPECT_EQ(lift(f9, x) + lift(f9, y), lift(f9, add9(x, y)));
          EXPECT_EQ(lift(f9, x) - lift(f9, y), lift(f9, {(a - c + 3) % 3, (b - d + 3) % 3}));
        }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const F9 x{a, b};
      const F9 cube = mul9(mul9(x, x), x);
      EXPECT_EQ(lift(f9, x).frobenius(1), lift(f9, cube));
      EXPECT_EQ(lift(f9, x).frobenius(2), lift(f9, x));
      if (a == 0 && b == 0) continue;
      // inverse by search
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const F9 prod = mul9(x, {c, d});
          if (prod.a == 1 && prod.b == 0) EXPECT_EQ(lift(f9, x).inverse(), lift(f9, {c, d}));
        }
    }
}

TEST(Field, FrobeniusRoundTripF8) {
  const auto f8 = FieldSpec::extension(2, {1, 1, 0, 1});
  EXPECT_EQ(f8->describe(), "F_2^3");
  for (Residue a = 0; a < 2; ++a)
    for (Residue b = 0; b < 2; ++b)
      for (Residue c = 0; c < 2; ++c) {
        const Scalar x = Scalar::from_coeffs(f8, {a, b, c});
        EXPECT_EQ(x.pow(8), x);
        for (unsigned e = 1; e <= 4; ++e) {
          EXPECT_EQ(x.inverse_frobenius(e).frobenius(e), x);
          EXPECT_EQ(x.frobenius(e), x.pow(1u << e));
        }
      }
}

TEST(Field, Errors) {
  EXPECT_THROW(FieldSpec::prime(4), UsageError);
  EXPECT_THROW(FieldSpec::prime(65537), UsageError);
  EXPECT_THROW(FieldSpec::prime(1), UsageError);
  EXPECT_THROW(FieldSpec::extension(2, {1, 0, 1}), UsageError);  // t^2+1 = (t+1)^2
  EXPECT_THROW(FieldSpec::extension(3, {1, 0, 2}), UsageError);  // not monic
  EXPECT_THROW(Scalar::zero(FieldSpec::prime(3)).inverse(), DivisionByZero);
  EXPECT_THROW(Scalar::one(FieldSpec::prime(3)) / Scalar::zero(FieldSpec::prime(3)), DivisionByZero);
  EXPECT_THROW(Scalar::one(FieldSpec::prime(3)) + Scalar::one(FieldSpec::prime(5)), UsageError);
}

TEST(Field, LinearModulusIsPrimeField) {
  const auto f = FieldSpec::extension(5, {3, 1});
  EXPECT_EQ(f->s(), 1u);
  EXPECT_TRUE(f->same_as(*FieldSpec::prime(5)));
}

TEST(Field, FermatLittleAndInverseAllPrimes) {
  for (Residue p : {2u, 3u, 5u, 7u, 11u, 65521u}) {
    const auto f = FieldSpec::prime(p);
    for (std::int64_t a : {1, 2, 3, 1000, 65000}) {
      const Scalar x = Scalar::from_int(f, a);
      if (x.is_zero()) continue;
      EXPECT_EQ(x * x.inverse(), Scalar::one(f));
      EXPECT_EQ(x.pow(p - 1), Scalar::one(f));
    }
  }
}
