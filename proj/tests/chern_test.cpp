#include <csbf/chern.hpp>
#include <csbf/random.hpp>

#include <gtest/gtest.h>

#include "oracle.hpp"

namespace csbf {
namespace {

const LieMatrix E = basis_element(sl2(), 0);
const LieMatrix F = basis_element(sl2(), 1);
const LieMatrix H = basis_element(sl2(), 2);
constexpr int kCap = 4;
constexpr Covector kVolume = dx | dy | dz;

// alpha = E dx + F dy + H dz at cap 4.
GForm constant_alpha() {
  return GForm::single(dx, E, kCap) + GForm::single(dy, F, kCap) + GForm::single(dz, H, kCap);
}

Connection zero_connection() { return Connection(GForm(1, 2, kCap)); }

// Brute force over the six orderings of (dx, dy, dz); tr(2/3 alpha^3) since d alpha = 0 and Omega0 = 0.
Rational constant_alpha_q() {
  const auto& b = sl2().basis;
  return Rational(2, 3) * oracle::trace_cube_constant({b[0], b[1], b[2]});
}

TEST(Oracle, ConstantAlphaValue) { EXPECT_EQ(constant_alpha_q(), 4); }

TEST(Transgression, VanishesOnEqualConnections) {
  InstanceRng rng(11);
  const Connection w = rng.connection(sl2(), kCap);
  EXPECT_TRUE(transgression(w, w).is_zero());
  EXPECT_TRUE(transgression_alt(w, w).is_zero());
}

TEST(Transgression, ConstantSl2Example) {
  const Connection w1(constant_alpha());
  const ScalarForm expected = ScalarForm::single(kVolume, Jet(constant_alpha_q()));
  EXPECT_EQ(transgression(w1, zero_connection()), expected);
  EXPECT_EQ(transgression_alt(w1, zero_connection()), expected);
  EXPECT_EQ(transgression(w1, zero_connection()).to_string(), "4 dx^dy^dz");
}

TEST(ChernSimons, Examples) {
  EXPECT_TRUE(chern_simons(zero_connection()).is_zero());
  const Connection w(constant_alpha());
  EXPECT_EQ(chern_simons(w), ScalarForm::single(kVolume, Jet(constant_alpha_q())));
}

TEST(Splitting, Examples) {
  InstanceRng rng(12);
  const Connection w = rng.connection(sl2(), kCap);
  EXPECT_TRUE(splitting_check(w, w).is_zero_at(kCap - 2));
  const Connection a(constant_alpha());
  const ScalarForm s = splitting_check(a, zero_connection());
  EXPECT_EQ(s, transgression(a, zero_connection()));
  EXPECT_EQ(s, ScalarForm::single(kVolume, Jet(4)));
}

TEST(Splitting, PureGaugePair) {
  InstanceRng rng(13);
  const Connection w0 = flat_connection(rng.group_element(sl2(), kCap));
  const Connection w1 = flat_connection(rng.group_element(sl2(), kCap));
  const ScalarForm s = splitting_check(w1, w0);
  EXPECT_TRUE(equal_at(s, transgression(w1, w0), s.valid_order()));
}

TEST(Splitting, NeedsTwoOrders) {
  const Connection w(GForm::single(dx, E, 1));
  EXPECT_THROW(splitting_check(w, w), OrderError);
}

TEST(QGeneral, HalfIsAverageConnectionForm) {
  InstanceRng rng(14);
  const Connection w0 = rng.connection(sl2(), kCap), w1 = rng.connection(sl2(), kCap);
  const GForm a = difference(w1, w0);
  const VariableChoice half(Rational(1, 2));
  const Connection w_bar = interpolate(w0, a, half);
  EXPECT_EQ(Connection(scale_add(Rational(1, 2), w1.form(), Rational(1, 2), w0.form())), w_bar);
  EXPECT_EQ(q_general(w_bar, a, half), q_average(w_bar, a));
  EXPECT_EQ(q_average(w_bar, a), transgression(w1, w0));
}

TEST(QGeneral, ZeroIsFirstPresentation) {
  InstanceRng rng(15);
  const Connection w0 = rng.connection(sl3(), kCap);
  const GForm a = rng.form(sl3(), 1, kCap);
  const VariableChoice zero(Rational(0));
  EXPECT_EQ(q_general(w0, a, zero), transgression(Connection(w0.form() + a), w0));
}

TEST(QGeneral, VanishesWithoutAlpha) {
  InstanceRng rng(16);
  const Connection w = rng.connection(sl2(), kCap);
  EXPECT_TRUE(q_general(w, GForm(1, 2, kCap), VariableChoice(Rational(1, 3))).is_zero());
}

TEST(Identity7, ThreeWayAgreement) {
  InstanceRng rng(17);
  const Connection w0 = rng.connection(sl2(), kCap), w1 = rng.connection(sl2(), kCap);
  const auto r = identity7_check(w0, w1, VariableChoice(Rational(1, 3)));
  EXPECT_EQ(r[0], r[1]);
  EXPECT_EQ(r[1], r[2]);
  EXPECT_FALSE(r[0].is_zero());
}

TEST(Identity7, HalfReducesToTwoConnectionForm) {
  InstanceRng rng(18);
  const Connection w0 = rng.connection(sl2(), kCap), w1 = rng.connection(sl2(), kCap);
  const auto r = identity7_check(w0, w1, VariableChoice(Rational(1, 2)));
  EXPECT_EQ(r[2], identity5_rhs(w0, w1));
}

TEST(Identity7, EqualConnections) {
  InstanceRng rng(19);
  const Connection w = rng.connection(sl2(), kCap);
  const auto r = identity7_check(w, w, VariableChoice(Rational(4, 5)));
  for (const auto& f : r) EXPECT_EQ(f, Rational(2) * curvature(w));
}

TEST(EOM, PureGaugePairSolvesEveryPresentation) {
  InstanceRng rng(20);
  const Connection w0 = flat_connection(rng.group_element(sl2(), kCap));
  const Connection w1 = flat_connection(rng.group_element(sl2(), kCap));
  const GForm a = difference(w1, w0);
  for (const Rational& t : {Rational(0), Rational(1, 5), Rational(1, 2), Rational(4, 5), Rational(1)}) {
    const VariableChoice c(t);
    const EOMResiduals r = eom_residuals(interpolate(w0, a, c), a, c);
    EXPECT_TRUE(r.vanish()) << "t = " << t;
    EXPECT_EQ(r.valid_order(), kCap - 2);
  }
}

TEST(EOM, BFPresentation) {
  // At t = 1/2: Omega_bar + 1/4 alpha^2 and D_bar alpha.
  InstanceRng rng(21);
  const Connection w0 = rng.connection(sl2(), kCap), w1 = rng.connection(sl2(), kCap);
  const GForm a = difference(w1, w0);
  const VariableChoice half(Rational(1, 2));
  const Connection w_bar = interpolate(w0, a, half);
  const EOMResiduals r = eom_residuals(w_bar, a, half);
  EXPECT_EQ(r.curvature, curvature(w_bar) + Rational(1, 4) * wedge(a, a));
  EXPECT_EQ(r.covariant, covariant_d(w_bar, a));
}

TEST(EOM, FlatConnectionWithoutAlpha) {
  InstanceRng rng(22);
  const Connection w = flat_connection(rng.group_element(sl2(), kCap));
  const EOMResiduals r = eom_residuals(w, GForm(1, 2, kCap), VariableChoice(Rational(1, 5)));
  EXPECT_TRUE(r.vanish());
}

TEST(EOM, GenericInputsAreNotSolutions) {
  InstanceRng rng(23);
  const Connection w0 = rng.connection(sl2(), kCap), w1 = rng.connection(sl2(), kCap);
  const GForm a = difference(w1, w0);
  const VariableChoice c(Rational(1, 5));
  EXPECT_FALSE(eom_residuals(interpolate(w0, a, c), a, c).vanish());
}

TEST(Superpotential, GaugeExample) {
  const ScalarForm u = superpotential_gauge(constant_alpha(), H);
  EXPECT_EQ(u, ScalarForm::single(dz, Jet(2)));
  EXPECT_EQ(u.to_string(), "2 dz");
  EXPECT_TRUE(superpotential_gauge(constant_alpha(), LieMatrix(2, kCap)).is_zero());
  EXPECT_TRUE(superpotential_gauge(GForm(1, 2, kCap), H).is_zero());
  EXPECT_THROW(superpotential_gauge(constant_alpha(), basis_element(sl3(), 0)), std::invalid_argument);
}

TEST(Superpotential, DiffeoIsIndependentOfT) {
  InstanceRng rng(24);
  for (int trial = 0; trial < 5; ++trial) {
    const Connection w0 = rng.connection(sl2(), kCap), w1 = rng.connection(sl2(), kCap);
    const GForm a = difference(w1, w0);
    const VectorField xi = rng.vector_field(kCap);
    const VariableChoice half(Rational(1, 2));
    const ScalarForm ref = superpotential_diffeo(a, interpolate(w0, a, half), half, xi);
    // At t = 1/2 the alpha(xi) term drops out.
    EXPECT_EQ(ref, trace(wedge(a, Rational(2) * contract(xi, interpolate(w0, a, half).form()))));
    for (const Rational& t : {Rational(0), Rational(1)}) {
      const VariableChoice c(t);
      EXPECT_EQ(superpotential_diffeo(a, interpolate(w0, a, c), c, xi), ref);
    }
  }
}

TEST(Superpotential, ZeroVectorField) {
  InstanceRng rng(25);
  const Connection w = rng.connection(sl2(), kCap);
  const GForm a = rng.form(sl2(), 1, kCap);
  const VectorField zero(Jet::zero(kCap), Jet::zero(kCap), Jet::zero(kCap));
  EXPECT_TRUE(superpotential_diffeo(a, w, VariableChoice(Rational(1, 5)), zero).is_zero());
}

TEST(VariableChoice, Range) {
  EXPECT_THROW(VariableChoice(Rational(-1, 5)), std::invalid_argument);
  EXPECT_THROW(VariableChoice(Rational(6, 5)), std::invalid_argument);
  EXPECT_EQ(VariableChoice(Rational(1)).t(), 1);
}

TEST(ChangeOfVariables, InverseAndAffineIdentity) {
  InstanceRng rng(26);
  const Connection w0 = rng.connection(sl3(), kCap), w1 = rng.connection(sl3(), kCap);
  const GForm a = difference(w1, w0);
  for (const Rational& t : {Rational(0), Rational(1, 5), Rational(1, 2), Rational(4, 5), Rational(1)}) {
    const VariableChoice c(t);
    const Connection wt = interpolate(w0, a, c);
    EXPECT_EQ(recover_w0(wt, a, c), w0);
    EXPECT_EQ(recover_w1(wt, a, c), w1);
    EXPECT_EQ(t * w1.form() + Rational(t - 1) * w0.form(),
              Rational(2 * t - 1) * wt.form() + Rational(2 * t * (1 - t)) * a);
  }
}

class ChernProperties : public ::testing::TestWithParam<const LieAlgebraSpec*> {
 protected:
  const LieAlgebraSpec& spec() const { return *GetParam(); }
  InstanceRng rng{41};
};

TEST_P(ChernProperties, PresentationsAgree) {
  for (int trial = 0; trial < 5; ++trial) {
    const Connection w0 = rng.connection(spec(), kCap), w1 = rng.connection(spec(), kCap);
    const ScalarForm q = transgression(w1, w0);
    EXPECT_FALSE(q.is_zero());
    EXPECT_EQ(q, transgression_alt(w1, w0));
    EXPECT_TRUE((q + transgression(w0, w1)).is_zero());
    const ScalarForm s = splitting_check(w1, w0);
    EXPECT_EQ(s.valid_order(), kCap - 1);
    EXPECT_TRUE(equal_at(q, s, s.valid_order()));
    const GForm a = difference(w1, w0);
    for (const Rational& t : {Rational(0), Rational(1, 5), Rational(1, 2), Rational(4, 5), Rational(1)}) {
      const VariableChoice c(t);
      EXPECT_EQ(q_general(interpolate(w0, a, c), a, c), q) << "t = " << t;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, ChernProperties, ::testing::Values(&sl2(), &sl3()),
                         [](const auto& info) { return info.param->name; });

}  // namespace
}  // namespace csbf
