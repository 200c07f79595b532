#include <gtest/gtest.h>

#include "flaggeom/field.hpp"

using namespace flaggeom;

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField(4), std::invalid_argument);
  EXPECT_THROW(PrimeField(91), std::invalid_argument);
  EXPECT_NO_THROW(PrimeField(2));
  EXPECT_NO_THROW(PrimeField(2147483647u));
}

TEST(PrimeField, InverseTimesElementIsOne) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    PrimeField k(p);
    for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ(k.mul(a, k.inv(a)), 1u) << "p=" << p << " a=" << a;
    EXPECT_THROW(k.inv(0), std::domain_error);
  }
}

TEST(PrimeField, AgreesWithIntegerArithmetic) {
  PrimeField k(7);
  for (long long a = -20; a <= 20; ++a)
    for (long long b = -20; b <= 20; ++b) {
      auto ma = k.from_int(a), mb = k.from_int(b);
      EXPECT_EQ(k.add(ma, mb), k.from_int(a + b));
      EXPECT_EQ(k.sub(ma, mb), k.from_int(a - b));
      EXPECT_EQ(k.mul(ma, mb), k.from_int(a * b));
    }
}

TEST(PrimeField, LargePrimeProductsDoNotOverflow) {
  PrimeField k(2147483647u);
  auto a = k.from_int(-1);
  EXPECT_EQ(k.mul(a, a), 1u);
}

TEST(PrimeField, TwoIsNotInvertibleInCharacteristicTwo) {
  EXPECT_FALSE(PrimeField(2).int_invertible(2));
  EXPECT_TRUE(PrimeField(3).int_invertible(2));
  EXPECT_FALSE(PrimeField(3).int_invertible(3));
}

TEST(RationalField, ParsesAndPrintsFractions) {
  RationalField q;
  EXPECT_EQ(q.to_string(q.parse("6/4")), "3/2");
  EXPECT_EQ(q.to_string(q.parse("-2")), "-2/1");
  EXPECT_EQ(q.to_string(q.from_fraction(-3, 9)), "-1/3");
  EXPECT_THROW(q.parse("1/0"), std::invalid_argument);
  EXPECT_THROW(q.parse("x"), std::invalid_argument);
  EXPECT_THROW(q.inv(q.zero()), std::domain_error);
}

TEST(FactorialCondition, ThrowsFieldTooSmall) {
  EXPECT_THROW(require_factorials_invertible(PrimeField(2), 2, "test"), FieldTooSmall);
  EXPECT_THROW(require_factorials_invertible(PrimeField(3), 3, "test"), FieldTooSmall);
  EXPECT_NO_THROW(require_factorials_invertible(PrimeField(5), 4, "test"));
  EXPECT_NO_THROW(require_factorials_invertible(RationalField{}, 10, "test"));
}

TEST(FieldSpec, ParsesPrimeAndRational) {
  EXPECT_EQ(FieldSpec::parse("5"), FieldSpec::prime(5));
  EXPECT_TRUE(FieldSpec::parse("rat").rational);
  EXPECT_THROW(FieldSpec::parse("6"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::parse("5x"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::parse(""), std::invalid_argument);
}

TEST(FieldSpec, WithFieldDispatches) {
  auto name = [](const auto& k) { return k.name(); };
  EXPECT_EQ(with_field(FieldSpec::prime(3), name), "F_3");
  EXPECT_EQ(with_field(FieldSpec::rationals(), name), "Q");
}
