#include <gtest/gtest.h>

#include "frobtrace/checks.hpp"
#include "frobtrace/forms.hpp"
#include "frobtrace/parse.hpp"

using namespace frobtrace;

namespace {

DiffForm F(const std::string& text, const std::vector<std::string>& vars, const FieldRef& f) {
  return parse_form(text, vars, f);
}

}  // namespace

TEST(Forms, IndexSubsets) {
  const auto subsets = index_subsets(3, 2);
  EXPECT_EQ(subsets, (std::vector<IndexSet>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(index_subsets(3, 0).size(), 1u);
  EXPECT_EQ(index_subsets(4, 2).size(), 6u);
}

TEST(Forms, WedgeSign) {
  const auto f3 = FieldSpec::prime(3);
  const std::vector<std::string> xy{"x", "y"};
  EXPECT_EQ(F("(1) dy^dx", xy, f3), -F("(1) dx^dy", xy, f3));
  EXPECT_TRUE(F("(x) dx^dx", xy, f3).is_zero());
  EXPECT_TRUE((F("(x) dx^dy", xy, f3) + F("(x) dy^dx", xy, f3)).is_zero());
}

TEST(Forms, ExteriorDerivativeExamples) {
  const auto f2 = FieldSpec::prime(2);
  const std::vector<std::string> xy{"x", "y"};
  const DiffForm zero_form = DiffForm::single({}, parse_poly("x*y", xy, f2));
  EXPECT_EQ(exterior_derivative(zero_form), F("(y) dx + (x) dy", xy, f2));

  const auto f3 = FieldSpec::prime(3);
  EXPECT_TRUE(exterior_derivative(DiffForm::single({}, parse_poly("x^3", {"x"}, f3))).is_zero());

  // d(f dy) = df/dx dx^dy and d(f dx) = -df/dy dx^dy
  const auto f5 = FieldSpec::prime(5);
  EXPECT_EQ(exterior_derivative(F("(x^2*y) dy", xy, f5)), F("(2*x*y) dx^dy", xy, f5));
  EXPECT_EQ(exterior_derivative(F("(x^2*y) dx", xy, f5)), F("(4*x^2) dx^dy", xy, f5));
  EXPECT_THROW(exterior_derivative(F("(x) dx^dy", xy, f5)), UsageError);
}

TEST(Forms, DSquaredIsZero) {
  Rng rng(5);
  for (const auto& field : test_fields()) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + rng.below(3);
      const std::size_t i = rng.below(n - 1);
      const DiffForm eta = rng.form(field, n, i, 4, 5);
      EXPECT_TRUE(exterior_derivative(exterior_derivative(eta)).is_zero());
    }
  }
}

TEST(Forms, ExactBounded) {
  const auto f2 = FieldSpec::prime(2);
  EXPECT_FALSE(is_exact_bounded(F("(x) dx", {"x"}, f2), 5));
  EXPECT_TRUE(is_exact_bounded(DiffForm(f2, 1, 1), 3));
  // f' only has even exponents in char 2, so x^{2k} dx is exact and x^{2k+1} dx is not.
  EXPECT_TRUE(is_exact_bounded(F("(x^4) dx", {"x"}, f2), 4));
  EXPECT_FALSE(is_exact_bounded(F("(x^3) dx", {"x"}, f2), 4));
  EXPECT_THROW(is_exact_bounded(F("(x^9) dx", {"x"}, f2), 4), UsageError);

  Rng rng(9);
  for (const auto& field : test_fields()) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 1 + rng.below(2);
      const DiffForm eta = rng.form(field, n, n - 1, 3, 3);
      EXPECT_TRUE(is_exact_bounded(exterior_derivative(eta), 6));
    }
  }
}

TEST(Forms, FormBasisCoordinates) {
  const auto f3 = FieldSpec::prime(3);
  const FormBasis basis(2, 1, 2);
  EXPECT_EQ(basis.size(), 2u * 6u);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto c = basis.coordinates(basis.form(f3, k));
    ASSERT_TRUE(c.has_value());
    for (std::size_t j = 0; j < c->size(); ++j) EXPECT_EQ((*c)[j].is_one(), j == k);
  }
  EXPECT_FALSE(basis.coordinates(F("(x^3) dx", {"x", "y"}, f3)).has_value());
}

TEST(Forms, TopFormRoundTrip) {
  const auto f2 = FieldSpec::prime(2);
  const std::vector<std::string> xyz{"x", "y", "z"};
  const DiffForm w = F("(x*y) dz^dx^dy", xyz, f2);
  const TopForm top = TopForm::from_form(w);
  EXPECT_EQ(top.coeff(), RationalFn(parse_poly("x*y", xyz, f2)));
  EXPECT_EQ(top.to_form(), w);
  EXPECT_THROW(TopForm::from_form(F("(x) dx", xyz, f2)), UsageError);
}
