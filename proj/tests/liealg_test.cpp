#include <csbf/liealg.hpp>
#include <csbf/random.hpp>

#include <gtest/gtest.h>

namespace csbf {
namespace {

const LieMatrix E = basis_element(sl2(), 0);
const LieMatrix F = basis_element(sl2(), 1);
const LieMatrix H = basis_element(sl2(), 2);

// Oracle: plain rational matrix arithmetic on the sl(2) basis.
RationalMatrix commutator(const RationalMatrix& x, const RationalMatrix& y) { return x * y - y * x; }

TEST(LieAlgebra, BracketOfBasis) {
  const auto& b = sl2().basis;
  EXPECT_EQ(commutator(b[0], b[1]), b[2]);
  EXPECT_EQ(bracket(E, F), LieMatrix::constant(commutator(b[0], b[1])));
  EXPECT_EQ(bracket(E, F), H);
  EXPECT_TRUE(bracket(E, E).is_zero());
  EXPECT_EQ(bracket(H, E), Rational(2) * E);
  EXPECT_EQ(bracket(H, E), LieMatrix::constant(commutator(b[2], b[0])));
}

TEST(LieAlgebra, TraceForm) {
  EXPECT_EQ(trace_form(E, F), Jet(1));
  EXPECT_EQ(trace_form(H, H), Jet(2));
  EXPECT_TRUE(trace_form(E, E).is_zero());
  EXPECT_EQ(trace_form(E, F), trace(E * F));
}

TEST(LieAlgebra, FromCoefficients) {
  const Jet x = Jet::variable(Axis::x);
  const Jet y = Jet::variable(Axis::y);
  EXPECT_EQ(from_coefficients(sl2(), {Jet(1), Jet(0), Jet(0)}), E);
  EXPECT_TRUE(from_coefficients(sl2(), {Jet(0), Jet(0), Jet(0)}).is_zero());
  EXPECT_EQ(from_coefficients(sl2(), {x, y, Jet(0)}), x * E + y * F);
  EXPECT_THROW(from_coefficients(sl2(), {x, y}), std::invalid_argument);
}

TEST(LieAlgebra, SizeMismatchIsRejected) {
  const LieMatrix m3 = basis_element(sl3(), 0);
  EXPECT_THROW(bracket(E, m3), std::invalid_argument);
  EXPECT_THROW(trace_form(E, m3), std::invalid_argument);
}

TEST(LieAlgebra, BuiltinsAreValidLieAlgebras) {
  EXPECT_EQ(sl2().validate(), "");
  EXPECT_EQ(sl3().validate(), "");
  EXPECT_EQ(sl2().dim(), 3);
  EXPECT_EQ(sl3().dim(), 8);
  EXPECT_EQ(&algebra_by_name("sl3"), &sl3());
  EXPECT_THROW(algebra_by_name("g2"), std::invalid_argument);
}

TEST(LieAlgebra, ValidationCatchesBrokenSpecs) {
  LieAlgebraSpec dependent = sl2();
  dependent.basis.push_back(sl2().basis[0] + sl2().basis[1]);
  dependent.basis_names.push_back("EF");
  EXPECT_EQ(dependent.validate(), "basis is linearly dependent");

  LieAlgebraSpec open{"borel-ish", 2, {sl2().basis[0], sl2().basis[1]}, {"E", "F_"}};
  EXPECT_NE(open.validate().find("leaves the span"), std::string::npos);
}

TEST(LieAlgebra, Decompose) {
  const auto c = sl3().decompose(sl3().basis[3] - Rational(1, 2) * sl3().basis[7]);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ((*c)[3], 1);
  EXPECT_EQ((*c)[7], Rational(-1, 2));
  EXPECT_FALSE(sl2().decompose(RationalMatrix::identity(2)).has_value());
}

class LieProperties : public ::testing::TestWithParam<const LieAlgebraSpec*> {
 protected:
  InstanceRng rng{7};
};

TEST_P(LieProperties, Antisymmetry) {
  for (int trial = 0; trial < 100; ++trial) {
    const LieMatrix x = rng.lie(*GetParam(), 3), y = rng.lie(*GetParam(), 3);
    EXPECT_EQ(bracket(x, y), -bracket(y, x));
  }
}

TEST_P(LieProperties, Jacobi) {
  for (int trial = 0; trial < 100; ++trial) {
    const LieMatrix x = rng.lie(*GetParam(), 2), y = rng.lie(*GetParam(), 2), z = rng.lie(*GetParam(), 2);
    EXPECT_TRUE((bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero());
  }
}

TEST_P(LieProperties, TraceFormIsAdInvariant) {
  for (int trial = 0; trial < 100; ++trial) {
    const LieMatrix x = rng.lie(*GetParam(), 2), y = rng.lie(*GetParam(), 2), z = rng.lie(*GetParam(), 2);
    EXPECT_EQ(trace_form(bracket(x, y), z), trace_form(x, bracket(y, z)));
    EXPECT_TRUE(trace(bracket(x, y)).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, LieProperties, ::testing::Values(&sl2(), &sl3()),
                         [](const auto& info) { return info.param->name; });

}  // namespace
}  // namespace csbf
