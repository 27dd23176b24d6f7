#pragma once

// The identity manifest: each identity is a chain of DSL expressions that must
// all be equal. The same chain is proved symbolically (symdga) and evaluated
// on random concrete instances (eval), which is what makes the soundness
// cross-check possible.

#include <csbf/eval.hpp>
#include <csbf/random.hpp>
#include <csbf/symdga.hpp>

#include <string>
#include <vector>

namespace csbf {

struct Identity {
  std::string id;
  std::string title;
  std::vector<std::string> chain;
  bool uses_t = false;
};

/// The parameter values at which t-dependent identities are checked. All
/// t-dependence is at most quadratic, so any three values certify it.
inline const std::vector<Rational>& t_sweep() {
  static const std::vector<Rational> ts{Rational(0), Rational(1, 5), Rational(1, 2), Rational(4, 5), Rational(1)};
  return ts;
}

namespace text {

inline const std::string q_first = "tr(2*F(w0) ^ a + D(w0; a) ^ a + 2/3*a ^ a ^ a)";
inline const std::string q_second = "tr(2*F(w1) ^ a - D(w1; a) ^ a + 2/3*a ^ a ^ a)";
inline const std::string q_reversed =
    "tr(2*F(w1) ^ (w0 - w1) + D(w1; w0 - w1) ^ (w0 - w1) + 2/3*(w0 - w1) ^ (w0 - w1) ^ (w0 - w1))";

inline std::string chern_simons(const std::string& w) {
  return "tr(F(" + w + ") ^ " + w + " - 1/3*" + w + " ^ " + w + " ^ " + w + ")";
}

}  // namespace text

inline const std::vector<Identity>& identity_manifest() {
  using namespace text;
  static const std::vector<Identity> ids{
      {"eq2_dual", "transgression form, both presentations", {q_first, q_second}},
      {"eq2_antisym", "Q(w1, w0) = -Q(w0, w1)", {q_first + " + " + q_reversed, "0"}},
      {"eq3_splitting",
       "Q = CS(w1) - CS(w0) + d tr(w0 ^ w1)",
       {q_first, chern_simons("w1") + " - " + chern_simons("w0") + " + d(tr(w0 ^ w1))"}},
      {"eq5_two_connection",
       "2 Omega0 + D0 a = 2 Omega1 - D1 a = Omega0 + Omega1 - a^2",
       {"2*F(w0) + D(w0; a)", "2*F(w1) - D(w1; a)", "F(w0) + F(w1) + 1/2*(D(w0; a) - D(w1; a))",
        "F(w0) + F(w1) - a ^ a"}},
      {"eq6_average", "Q in terms of the average connection", {"2*tr(F(1/2*w1 + 1/2*w0) ^ a + 1/12*a ^ a ^ a)", q_first}},
      {"eq7_general",
       "two-connection identity for the interpolated connection",
       {"2*F(w1) - D(w1; a)", "2*F(w0) + D(w0; a)", "2*F(wt) - 2*t*(1 - t)*a ^ a - (2*t - 1)*D(wt; a)"},
       true},
      {"eq8_general",
       "Q in the variables (wt, a)",
       {"2*tr(F(wt) ^ a - (t - 1/2)*D(wt; a) ^ a + (1/3 - t + t*t)*a ^ a ^ a)", q_first},
       true},
      {"affine_identity", "t w1 + (t - 1) w0 = (2t - 1) wt + 2t(1 - t) a", {"t*w1 + (t - 1)*w0", "(2*t - 1)*wt + 2*t*(1 - t)*a"}, true},
  };
  return ids;
}

/// Single-coefficient corruptions of eq3, eq6 and eq8. Each must be rejected
/// by both backends.
inline const std::vector<Identity>& mutation_manifest() {
  using namespace text;
  static const std::vector<Identity> muts{
      {"mutant_eq3_d_sign",
       "eq3 with d tr(w0 ^ w1) subtracted",
       {q_first, chern_simons("w1") + " - " + chern_simons("w0") + " - d(tr(w0 ^ w1))"}},
      {"mutant_eq3_cubic",
       "eq3 with 2/3 instead of 1/3 in CS(w1)",
       {q_first, "tr(F(w1) ^ w1 - 2/3*w1 ^ w1 ^ w1) - " + chern_simons("w0") + " + d(tr(w0 ^ w1))"}},
      {"mutant_eq6_sixth", "eq6 with 1/6 instead of 1/12", {"2*tr(F(1/2*w1 + 1/2*w0) ^ a + 1/6*a ^ a ^ a)", q_first}},
      {"mutant_eq6_factor", "eq6 with leading factor 1 instead of 2", {"tr(F(1/2*w1 + 1/2*w0) ^ a + 1/12*a ^ a ^ a)", q_first}},
      {"mutant_eq8_shift",
       "eq8 with (t - 1/4) instead of (t - 1/2)",
       {"2*tr(F(wt) ^ a - (t - 1/4)*D(wt; a) ^ a + (1/3 - t + t*t)*a ^ a ^ a)", q_first},
       true},
      {"mutant_eq8_quadratic",
       "eq8 with 2t^2 instead of t^2",
       {"2*tr(F(wt) ^ a - (t - 1/2)*D(wt; a) ^ a + (1/3 - t + 2*t*t)*a ^ a ^ a)", q_first},
       true},
  };
  return muts;
}

inline std::vector<dsl::Expr> parse_chain(const Identity& id, const dsl::Context& ctx = dsl::symbolic_context()) {
  std::vector<dsl::Expr> out;
  for (const auto& s : id.chain) out.push_back(dsl::parse(s, ctx));
  return out;
}

struct SymbolicOutcome {
  bool pass = true;
  std::string certificate;  // first failing link's normal form, DSL text
  std::string failing_t;    // the t value of that link, if any
};

/// Proves the chain in the free algebra, at every sweep value if t occurs.
inline SymbolicOutcome prove(const Identity& id) {
  const auto chain = parse_chain(id);
  const std::vector<Rational> once{Rational(0)};
  for (const Rational& t : id.uses_t ? t_sweep() : once) {
    sym::Env env;
    if (id.uses_t) env.t = t;
    const sym::Verdict v = sym::verify_chain(chain, env);
    if (!v.pass) return {false, v.certificate(), id.uses_t ? format_rational(t) : ""};
  }
  return {};
}

/// Random bindings for the symbolic generators: w0, w1 connections,
/// a = w1 - w0, chi a gauge parameter, xi a vector field. wt depends on t
/// and is bound by bind_t.
inline EvalEnv random_bindings(const LieAlgebraSpec& spec, int cap, InstanceRng& rng) {
  EvalEnv env;
  env.algebra = &spec;
  const GForm w0 = rng.form(spec, 1, cap), w1 = rng.form(spec, 1, cap);
  env.bindings["w0"] = {w0};
  env.bindings["w1"] = {w1};
  env.bindings["a"] = {w1 - w0};
  env.bindings["chi"] = {zero_form(rng.lie(spec, cap))};
  env.bindings["xi"] = {rng.vector_field(cap)};
  return env;
}

inline void bind_t(EvalEnv& env, const Rational& t) {
  env.t = t;
  const GForm& w0 = env.bindings.at("w0").matrix();
  const GForm& a = env.bindings.at("a").matrix();
  env.bindings["wt"] = {w0 + t * a};
}

struct InstanceOutcome {
  bool pass = true;
  int order = Jet::exact;  // lowest valid order at which equality was asserted
  std::string offending;
  std::string failing_t;
};

/// Evaluates the chain on one concrete instance, at every value in ts if t occurs.
inline InstanceOutcome evaluate_chain(const Identity& id, const std::vector<dsl::Expr>& chain, EvalEnv env,
                                      const std::vector<Rational>& ts = t_sweep()) {
  InstanceOutcome out;
  const std::vector<Rational> once{Rational(0)};
  for (const Rational& t : id.uses_t ? ts : once) {
    if (id.uses_t) bind_t(env, t);
    std::vector<Value> values;
    for (const auto& e : chain) values.push_back(evaluate(e, env));
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const Comparison c = compare(values[i], values[i + 1], env.size());
      out.order = std::min(out.order, c.order);
      if (!c.equal && out.pass) {
        out.pass = false;
        out.offending = c.offending;
        out.failing_t = id.uses_t ? format_rational(t) : "";
      }
    }
  }
  return out;
}

}  // namespace csbf
