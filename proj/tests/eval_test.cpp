#include <csbf/eval.hpp>
#include <csbf/identities.hpp>

#include <gtest/gtest.h>

namespace csbf {
namespace {

dsl::Context concrete_sl2() {
  dsl::Context c = dsl::symbolic_context();
  c.concrete = true;
  c.basis_names = sl2().basis_names;
  return c;
}

Value eval(const std::string& src, const EvalEnv& env) { return evaluate(dsl::parse(src, concrete_sl2()), env); }

const Jet X = Jet::variable(Axis::x);
const Jet Y = Jet::variable(Axis::y);

TEST(Evaluate, ScalarsPromoteToMultiplesOfIdentity) {
  EvalEnv env;
  const Value v = eval("1 + x*E", env);
  ASSERT_TRUE(v.is_matrix());
  const LieMatrix& m = v.matrix().component(0);
  EXPECT_EQ(m(0, 0), Jet(1));
  EXPECT_EQ(m(0, 1), X);
  EXPECT_EQ(m(1, 0), Jet(0));
  EXPECT_EQ(m(1, 1), Jet(1));
}

TEST(Evaluate, CoordinatesAndCovectors) {
  EvalEnv env;
  const Value v = eval("x*y**2*dx ^ dz", env);
  ASSERT_TRUE(v.is_scalar());
  EXPECT_EQ(v.degree(), 2);
  EXPECT_EQ(v.scalar().component(dx | dz), X * Y * Y);
  EXPECT_TRUE(v.scalar().component(dx | dy).is_zero());
}

TEST(Evaluate, ParameterNeedsAValue) {
  EvalEnv env;
  EXPECT_THROW(eval("t*E", env), EvalError);
  env.t = Rational(1, 5);
  EXPECT_EQ(eval("5*t", env).scalar().component(0), Jet(1));
}

TEST(Evaluate, ConstantExampleByHand) {
  // a = E dx + F dy + H dz is constant, so with w0 = 0 only 2/3 tr(a^3)
  // survives: tr(a^3) = 3 tr(E [F, H]) = 6 tr(EF) = 6, hence Q = 4 dx^dy^dz.
  EvalEnv env;
  env.bindings["w0"] = {GForm(1, 2, 4)};
  env.bindings["w1"] = eval("E*dx + F_*dy + H*dz", env);
  env.bindings["a"] = env.bindings["w1"];
  const Value q = eval(text::q_first, env);
  ASSERT_TRUE(q.is_scalar());
  EXPECT_EQ(q.scalar().component(dx | dy | dz), Jet(4));
  EXPECT_EQ(q.to_string(), "4 dx^dy^dz");
  EXPECT_TRUE(compare(q, eval(text::q_second, env), 2).equal);
}

TEST(Evaluate, CurvatureAgreesWithItsDefinition) {
  InstanceRng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    EvalEnv env = random_bindings(sl3(), 4, rng);
    const Comparison c = compare(evaluate(dsl::parse("F(w0)", dsl::symbolic_context()), env),
                                 evaluate(dsl::parse("d(w0) + w0 ^ w0", dsl::symbolic_context()), env), 3);
    EXPECT_TRUE(c.equal);
    EXPECT_EQ(c.order, 3);
  }
}

TEST(Evaluate, Errors) {
  EvalEnv env;
  EXPECT_THROW(eval("w0", env), EvalError);  // unbound
  env.bindings["xi"] = {VectorField(X, Y, Jet(0))};
  env.bindings["w0"] = eval("E*dx", env);
  EXPECT_THROW(eval("tr(x)", env), EvalError);
  dsl::Context ctx = concrete_sl2();
  ctx.vectors.insert("v");
  EXPECT_THROW(evaluate(dsl::parse("ic(v; w0)", ctx), env), EvalError);
  EXPECT_EQ(eval("ic(xi; w0)", env).matrix().component(0)(0, 1), X);
}

TEST(Evaluate, BasisNamesFollowTheAlgebra) {
  EvalEnv env;
  env.algebra = &sl3();
  dsl::Context ctx = dsl::symbolic_context();
  ctx.concrete = true;
  ctx.basis_names = sl3().basis_names;
  const LieMatrix m = evaluate(dsl::parse("E12 - F12 + H2", ctx), env).matrix().component(0);
  EXPECT_EQ(m.size(), 3);
  EXPECT_EQ(m(0, 1), Jet(1));
  EXPECT_EQ(m(1, 0), Jet(-1));
  EXPECT_EQ(m(1, 1), Jet(1));
  EXPECT_EQ(m(2, 2), Jet(-1));
  EXPECT_THROW(evaluate(dsl::parse("E", concrete_sl2()), env), EvalError);
}

TEST(Compare, ReportsOffendingTermAndOrder) {
  EvalEnv env;
  const Value lhs = eval("x**2*dy", env);
  const Value rhs = eval("x*x*dy + y**3*dy", env);
  const Comparison same_low = compare(lhs, Value{rhs.scalar().truncated(2)}, 2);
  EXPECT_TRUE(same_low.equal);
  EXPECT_EQ(same_low.order, 2);
  const Comparison c = compare(lhs, rhs, 2);
  EXPECT_FALSE(c.equal);
  EXPECT_NE(c.offending.find("y**3"), std::string::npos);
}

TEST(Compare, ZeroLiteralMatchesAnyDegree) {
  EvalEnv env;
  env.bindings["w0"] = eval("x*E*dx", env);
  EXPECT_TRUE(compare(eval("w0 - w0", env), eval("0", env), 2).equal);
  EXPECT_FALSE(compare(eval("w0", env), eval("0", env), 2).equal);
}

}  // namespace
}  // namespace csbf
