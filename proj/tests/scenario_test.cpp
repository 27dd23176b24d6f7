#include <csbf/scenario.hpp>

#include <gtest/gtest.h>

namespace csbf {
namespace {

const std::string kHeader = "algebra: sl2\ncap: 4\n---\n";

std::string error_of(const std::string& src) {
  try {
    Scenario::run(src);
  } catch (const ScenarioError& e) {
    return e.what();
  } catch (const dsl::ParseError& e) {
    return e.what();
  }
  return "";
}

const ValueRecord* find_value(const Report& r, const std::string& name) {
  for (const auto& v : r.values)
    if (v.name == name) return &v;
  return nullptr;
}

const CheckRecord* find_check(const Report& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

TEST(BundledScenario, WorkedSl2) {
  const Report r = Scenario::run_file(std::string(CSBF_SCENARIO_DIR) + "/worked_sl2.scn");
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checks.size(), 6u);
  ASSERT_NE(find_value(r, "Q"), nullptr);
  EXPECT_EQ(find_value(r, "Q")->value, "4 dx^dy^dz");
  ASSERT_NE(find_value(r, "Uchi"), nullptr);
  EXPECT_EQ(find_value(r, "Uchi")->value, "2 dz");
}

TEST(BundledScenario, BfBullet) {
  const Report r = Scenario::run_file(std::string(CSBF_SCENARIO_DIR) + "/bf_bullet.scn");
  EXPECT_TRUE(r.pass());
  for (const char* id : {"eq9_residuals", "bf_curvature", "bf_covariant", "flat_w0", "flat_w1"}) {
    const CheckRecord* c = find_check(r, id);
    ASSERT_NE(c, nullptr) << id;
    EXPECT_TRUE(c->pass) << id;
    EXPECT_GE(c->valid_order.value_or(-1), 2) << id;
  }
}

TEST(Scenario, UnknownSymbolIsLocated) {
  std::string src = kHeader + "connection w0 = 0\nconnection w1 = E*dx\n";
  while (std::count(src.begin(), src.end(), '\n') < 11) src += "\n";
  src += "form b = beta ^ a\n";
  EXPECT_EQ(error_of(src), "unknown symbol 'beta' at 12:10");
  EXPECT_EQ(error_of(kHeader + "connection w0 = 0\n  show   w0 ^ gamma"), "unknown symbol 'gamma' at 5:15");
}

TEST(Scenario, FailingUserCheckCarriesCertificate) {
  const Report r = Scenario::run(kHeader + "connection w0 = 0\nconnection w1 = x*E*dy\ncheck wrong: F(w1) == 0\n");
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.checks[0].certificate.empty());
  EXPECT_EQ(r.checks[0].value, "not equal");
}

TEST(Scenario, TDependentNamesAreShownPerT) {
  const Report r = Scenario::run("algebra: sl2\nt: 0, 1\n---\nconnection w0 = x*H*dy\nform a = E*dz\nshow wt\n");
  ASSERT_EQ(r.values.size(), 2u);
  EXPECT_EQ(r.values[0].name, "wt [t = 0]");
  EXPECT_EQ(r.values[1].name, "wt [t = 1]");
}

TEST(Scenario, DerivesMissingConnection) {
  const Report r = Scenario::run(kHeader + "connection w1 = E*dx\nform a = H*dy\ncheck back: w0 == E*dx - H*dy\n");
  EXPECT_TRUE(r.pass());
}

TEST(Scenario, VectorFieldsAndDiffeoSuperpotential) {
  const Report r = Scenario::run(kHeader +
                                 "connection w0 = x*E*dy\nconnection w1 = H*dz + y*F_*dx\n"
                                 "vector xi = (1; x; y*z)\nshow Uxi\ncheck superpotential_diffeo\n");
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.values.size(), t_sweep().size());
}

TEST(Scenario, GroupElementsMustBeInvertible) {
  EXPECT_EQ(error_of(kHeader + "group g = x*E\n"), "not a unit: constant part of the group element is singular at 4:11");
}

TEST(Scenario, HeaderErrors) {
  EXPECT_EQ(error_of("algebra: so3\n---\n"), "unknown algebra 'so3' at 1:1");
  EXPECT_EQ(error_of("cap: four\n---\n"), "cap must be an integer at 1:1");
  EXPECT_EQ(error_of("t: 3/2\n---\n"), "t values must lie in [0, 1], got 3/2 at 1:1");
  EXPECT_EQ(error_of("colour: red\n---\n"), "unknown header key 'colour' at 1:1");
  EXPECT_EQ(error_of("algebra: sl2\nconnection w0 = 0\n"), "expected 'key: value' at 2:1");
}

TEST(Scenario, StatementErrors) {
  EXPECT_EQ(error_of(kHeader + "connection w0 = 0\nconnection w0 = 0\n"), "'w0' is already declared at 5:12");
  EXPECT_EQ(error_of(kHeader + "form tr = 0\n"), "'tr' cannot be used as a name at 4:6");
  EXPECT_EQ(error_of(kHeader + "connection w0 = H\n"), "a connection must be a 1-form, got degree 0 at 4:17");
  EXPECT_EQ(error_of(kHeader + "plot w0\n"), "unknown statement 'plot' at 4:1");
  EXPECT_EQ(error_of(kHeader + "check eq2_dual\n"), "check 'eq2_dual' needs 'w0' to be declared at 4:7");
  EXPECT_EQ(error_of(kHeader + "connection w0 = 0\nconnection w1 = 0\ncheck eq99\n"), "unknown check 'eq99' at 6:7");
  EXPECT_EQ(error_of(kHeader + "connection w0 = 0\nconnection w1 = 0\ncheck c: w0\n"), "a check needs 'lhs == rhs' at 6:10");
}

TEST(Scenario, MissingFile) {
  EXPECT_THROW(Scenario::run_file("/nonexistent/none.scn"), ScenarioError);
}

}  // namespace
}  // namespace csbf
