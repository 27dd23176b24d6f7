#include <csbf/forms.hpp>
#include <csbf/random.hpp>

#include <gtest/gtest.h>

#include "oracle.hpp"

namespace csbf {
namespace {

const LieMatrix E = basis_element(sl2(), 0);
const LieMatrix F = basis_element(sl2(), 1);
const LieMatrix H = basis_element(sl2(), 2);
const Jet X = Jet::variable(Axis::x);

GForm one_form(const LieMatrix& ax, const LieMatrix& ay, const LieMatrix& az) {
  return GForm::single(dx, ax) + GForm::single(dy, ay) + GForm::single(dz, az);
}

TEST(Wedge, BasisCovectors) {
  EXPECT_EQ(wedge(GForm::single(dx, E), GForm::single(dy, F)), GForm::single(dx | dy, E * F));
  EXPECT_EQ(wedge(GForm::single(dy, F), GForm::single(dx, E)), GForm::single(dx | dy, -(F * E)));
  EXPECT_TRUE(wedge(GForm::single(dx, E), GForm::single(dx, F)).is_zero());
}

TEST(Wedge, AlphaSquared) {
  // Nine products E*F dx^dy - F*E dx^dy ... collected by hand with the sl(2) table.
  const GForm a = one_form(E, F, H);
  const GForm expected =
      GForm::single(dx | dy, H) + GForm::single(dx | dz, Rational(-2) * E) + GForm::single(dy | dz, Rational(2) * F);
  EXPECT_EQ(wedge(a, a), expected);
  EXPECT_EQ(wedge(a, a), oracle::from_tensor(oracle::wedge(oracle::to_tensor(a), oracle::to_tensor(a))));
}

TEST(Wedge, BeyondTopDegreeIsZero) {
  const GForm two = GForm::single(dx | dy, E);
  const GForm prod = wedge(two, two);
  EXPECT_EQ(prod.degree(), 4);
  EXPECT_TRUE(prod.is_zero());
}

TEST(Wedge, SizeMismatch) {
  EXPECT_THROW(wedge(GForm::single(dx, E), GForm::single(dy, basis_element(sl3(), 0))), std::invalid_argument);
}

TEST(GradedBracket, OddSelfBracketIsTwiceSquare) {
  const GForm w = one_form(E, X * F, H);
  EXPECT_EQ(gbracket(w, w), Rational(2) * wedge(w, w));
}

TEST(GradedBracket, ZeroForms) {
  EXPECT_EQ(gbracket(zero_form(E), zero_form(F)), zero_form(bracket(E, F)));
}

TEST(GradedBracket, OneFormWithZeroForm) {
  EXPECT_EQ(gbracket(GForm::single(dx, E), zero_form(H)), GForm::single(dx, Rational(-2) * E));
}

TEST(ExteriorD, SinglePartial) {
  const GForm w = GForm::single(dy, X * E, 4);
  const GForm dw = exterior_d(w);
  EXPECT_EQ(dw, GForm::single(dx | dy, E));
  EXPECT_EQ(dw.valid_order(), 3);
  EXPECT_EQ(dw.degree(), 2);
}

TEST(ExteriorD, ConstantFormIsClosed) {
  EXPECT_TRUE(exterior_d(one_form(E, F, H).truncated(3)).is_zero());
}

TEST(ExteriorD, ZeroValidOrderIsAnError) {
  EXPECT_THROW(exterior_d(GForm::single(dx, E, 0)), OrderError);
}

TEST(Trace, Examples) {
  EXPECT_TRUE(trace(GForm::single(dz, H)).is_zero());
  EXPECT_EQ(trace(GForm::single(dx | dy | dz, H * H)), ScalarForm::single(dx | dy | dz, Jet(2)));
  EXPECT_TRUE(trace(GForm(2, 2, 4)).is_zero());
}

TEST(Contract, Examples) {
  const VectorField ex = VectorField::coordinate(Axis::x);
  const VectorField ey = VectorField::coordinate(Axis::y);
  EXPECT_EQ(contract(ex, GForm::single(dx, E)), zero_form(E));
  EXPECT_TRUE(contract(ey, GForm::single(dx, E)).is_zero());
  EXPECT_EQ(contract(ex, GForm::single(dx | dy, H)), GForm::single(dy, H));
  // i_xi(dx^dy) = xi^x dy - xi^y dx.
  EXPECT_EQ(contract(ey, GForm::single(dx | dy, H)), GForm::single(dx, -H));
  EXPECT_THROW(contract(ex, zero_form(H)), std::invalid_argument);
}

TEST(ScaleAdd, Examples) {
  const GForm a = one_form(E, X * F, H);
  const GForm b = one_form(H, E, F);
  EXPECT_EQ(scale_add(Rational(1), a, Rational(0), b), a);
  EXPECT_TRUE(scale_add(Rational(1), a, Rational(-1), a).is_zero());
  const GForm avg = scale_add(Rational(1, 2), a, Rational(1, 2), b);
  EXPECT_EQ(Rational(2) * avg, a + b);
  EXPECT_THROW(scale_add(Rational(1), a, Rational(1), zero_form(E)), std::invalid_argument);
}

TEST(Printing, ScalarForms) {
  EXPECT_EQ(ScalarForm::single(dx | dy | dz, Jet(4)).to_string(), "4 dx^dy^dz");
  EXPECT_EQ((ScalarForm::single(dx, Jet(1) + X) + ScalarForm::single(dz, Jet(2))).to_string(), "(1 + x) dx + 2 dz");
  EXPECT_EQ(ScalarForm(1, 1, 3).to_string(), "0");
}

class FormProperties : public ::testing::TestWithParam<const LieAlgebraSpec*> {
 protected:
  const LieAlgebraSpec& spec() const { return *GetParam(); }
  InstanceRng rng{99};
  static constexpr int kCap = 4;
};

TEST_P(FormProperties, DSquaredVanishes) {
  for (int trial = 0; trial < 100; ++trial) {
    const GForm a = rng.form(spec(), trial % 4, kCap);
    const GForm dda = exterior_d(exterior_d(a));
    EXPECT_EQ(dda.valid_order(), kCap - 2);
    EXPECT_TRUE(dda.is_zero_at(kCap - 2));
  }
}

TEST_P(FormProperties, GradedLeibniz) {
  for (int trial = 0; trial < 100; ++trial) {
    const int p = rng.uniform(0, 2), q = rng.uniform(0, 2 - p);
    const GForm a = rng.form(spec(), p, kCap), b = rng.form(spec(), q, kCap);
    const GForm lhs = exterior_d(wedge(a, b));
    const GForm rhs = wedge(exterior_d(a), b) + Rational(p % 2 ? -1 : 1) * wedge(a, exterior_d(b));
    EXPECT_TRUE(equal_at(lhs, rhs, kCap - 1));
  }
}

TEST_P(FormProperties, TraceGradedSymmetry) {
  for (int trial = 0; trial < 100; ++trial) {
    const int p = rng.uniform(0, 3), q = rng.uniform(0, 3 - p);
    const GForm a = rng.form(spec(), p, 3), b = rng.form(spec(), q, 3);
    EXPECT_EQ(trace(wedge(a, b)), Rational((p * q) % 2 ? -1 : 1) * trace(wedge(b, a)));
  }
}

TEST_P(FormProperties, ContractionIsAntiderivation) {
  for (int trial = 0; trial < 100; ++trial) {
    const int p = rng.uniform(1, 2), q = rng.uniform(1, 3 - p);
    const GForm a = rng.form(spec(), p, 3), b = rng.form(spec(), q, 3);
    const VectorField xi = rng.vector_field(3);
    const GForm lhs = contract(xi, wedge(a, b));
    const GForm rhs = wedge(contract(xi, a), b) + Rational(p % 2 ? -1 : 1) * wedge(a, contract(xi, b));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_P(FormProperties, GradedBracketSymmetry) {
  for (int trial = 0; trial < 100; ++trial) {
    const int p = rng.uniform(0, 3), q = rng.uniform(0, 3 - p);
    const GForm a = rng.form(spec(), p, 3), b = rng.form(spec(), q, 3);
    EXPECT_EQ(gbracket(a, b), Rational((p * q) % 2 ? 1 : -1) * gbracket(b, a));
  }
}

TEST_P(FormProperties, WedgeMatchesTensorOracle) {
  for (int trial = 0; trial < 30; ++trial) {
    const int p = rng.uniform(0, 3), q = rng.uniform(0, 3 - p);
    const GForm a = rng.form(spec(), p, 2), b = rng.form(spec(), q, 2);
    EXPECT_EQ(wedge(a, b), oracle::from_tensor(oracle::wedge(oracle::to_tensor(a), oracle::to_tensor(b))));
  }
}

TEST_P(FormProperties, WedgeIsAssociative) {
  for (int trial = 0; trial < 50; ++trial) {
    const GForm a = rng.form(spec(), 1, 2), b = rng.form(spec(), 1, 2), c = rng.form(spec(), 1, 2);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, FormProperties, ::testing::Values(&sl2(), &sl3()),
                         [](const auto& info) { return info.param->name; });

}  // namespace
}  // namespace csbf
