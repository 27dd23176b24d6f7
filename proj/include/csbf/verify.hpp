#pragma once

// Identity suites. A suite is a list of checks, each run by one backend:
//
//   symbolic  the chain is proved in the free graded algebra;
//   instance  the chern/gauge functions are compared on seeded random inputs.
//
// Suite "all" adds the mutation checks, whose verdict is PASS when the
// corrupted identity is rejected.

#include <csbf/chern.hpp>
#include <csbf/identities.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csbf {

struct CheckRecord {
  std::string id;
  std::string backend;  // "symbolic" or "instance"
  bool pass = false;
  std::optional<int> valid_order;
  std::string certificate;  // symbolic normal form or offending instance term, on failure
  std::string value;        // short human-readable result
  bool mutant = false;  // a deliberately broken identity; passing means it was rejected
  int trials = 0;
  double wall_ms = 0;
};

struct ValueRecord {
  std::string name;
  std::string value;
  int valid_order = 0;
};

struct Report {
  std::string suite;
  std::string algebra;
  int cap = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckRecord> checks;
  std::vector<ValueRecord> values;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
  }
  int passed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; }));
  }
};

struct VerifyOptions {
  std::string suite = "all";  // symbolic | instance | all
  std::uint64_t seed = 1;
  int trials = 20;
  int cap = 4;
  std::string algebra = "sl2";
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// FNV-1a, so per-check seeds do not depend on the standard library's hash.
inline std::uint64_t check_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Accumulates equality assertions over many trials.
class Tally {
 public:
  template <class C>
  void equal(const Form<C>& a, const Form<C>& b, const std::string& where = "") {
    const int order = std::min(a.valid_order(), b.valid_order());
    note(order);
    if (!pass_ || equal_at(a, b, order)) return;
    fail(where, (a - b).offending_term(order).value_or(""));
  }

  template <class C>
  void zero(const Form<C>& a, const std::string& where = "") {
    note(a.valid_order());
    if (!pass_ || a.is_zero_at(a.valid_order())) return;
    fail(where, a.offending_term(a.valid_order()).value_or(""));
  }

  void fail(const std::string& where, const std::string& term) {
    pass_ = false;
    certificate_ = where.empty() ? term : where + ": " + term;
  }

  void note(int order) { order_ = std::min(order_, order); }
  bool pass() const { return pass_; }
  int order() const { return order_; }
  const std::string& certificate() const { return certificate_; }

 private:
  bool pass_ = true;
  int order_ = Jet::exact;
  std::string certificate_;
};

inline std::string at_t(const Rational& t) { return "t = " + format_rational(t); }

struct InstanceCheck {
  std::string id;
  std::function<void(const LieAlgebraSpec&, int cap, int trials, InstanceRng&, Tally&, std::string& value)> run;
  int min_trials = 0;
};

inline const std::vector<InstanceCheck>& instance_checks() {
  using S = const LieAlgebraSpec&;
  static const std::vector<InstanceCheck> checks{
      {"eq2_dual",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           tally.equal(transgression(w1, w0), transgression_alt(w1, w0));
         }
       }},
      {"eq2_antisym",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           tally.zero(transgression(w1, w0) + transgression(w0, w1));
         }
       }},
      {"eq3_splitting",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           tally.equal(transgression(w1, w0), splitting_check(w1, w0));
         }
       }},
      {"eq5_two_connection",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const auto r = identity7_check(w0, w1, VariableChoice(Rational(1, 2)));
           tally.equal(r[0], r[1]);
           tally.equal(r[1], identity5_rhs(w0, w1));
           tally.equal(r[2], identity5_rhs(w0, w1));
         }
       }},
      {"eq6_average",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         const VariableChoice half(Rational(1, 2));
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const GForm a = difference(w1, w0);
           const Connection w_bar(scale_add(Rational(1, 2), w1.form(), Rational(1, 2), w0.form()));
           tally.equal(q_average(w_bar, a), transgression(w1, w0));
         }
       }},
      {"eq7_general",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           for (const Rational& t : t_sweep()) {
             const auto r = identity7_check(w0, w1, VariableChoice(t));
             tally.equal(r[0], r[1], at_t(t));
             tally.equal(r[1], r[2], at_t(t));
           }
         }
       }},
      {"eq8_general",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const GForm a = difference(w1, w0);
           const ScalarForm q = transgression(w1, w0);
           for (const Rational& t : t_sweep()) {
             const VariableChoice c(t);
             tally.equal(q_general(interpolate(w0, a, c), a, c), q, at_t(t));
           }
         }
       }},
      {"affine_identity",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const GForm a = difference(w1, w0);
           for (const Rational& t : t_sweep()) {
             const GForm wt = interpolate(w0, a, VariableChoice(t)).form();
             tally.equal(t * w1.form() + Rational(t - 1) * w0.form(),
                         Rational(2 * t - 1) * wt + Rational(2 * t * (1 - t)) * a, at_t(t));
           }
         }
       }},
      {"curvature_interpolation",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const GForm a = difference(w1, w0);
           const GForm o0 = curvature(w0), o1 = curvature(w1), aa = wedge(a, a);
           for (const Rational& t : t_sweep()) {
             tally.equal(curvature(interpolate(w0, a, VariableChoice(t))),
                         t * o1 + Rational(1 - t) * o0 - Rational(t * (1 - t)) * aa, at_t(t));
           }
         }
       }},
      {"inverse_change",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const GForm a = difference(w1, w0);
           for (const Rational& t : t_sweep()) {
             const VariableChoice c(t);
             const Connection wt = interpolate(w0, a, c);
             tally.equal(recover_w0(wt, a, c).form(), w0.form(), at_t(t));
             tally.equal(recover_w1(wt, a, c).form(), w1.form(), at_t(t));
           }
         }
       }},
      {"eq9_residuals",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string& value) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = flat_connection(rng.group_element(g, cap));
           const Connection w1 = flat_connection(rng.group_element(g, cap));
           const GForm a = difference(w1, w0);
           for (const Rational& t : t_sweep()) {
             const VariableChoice c(t);
             const Connection wt = interpolate(w0, a, c);
             const EOMResiduals r = eom_residuals(wt, a, c);
             tally.zero(r.curvature, at_t(t) + ", curvature residual");
             tally.zero(r.covariant, at_t(t) + ", covariant residual");
             if (t == Rational(1, 2)) {
               // BF form: Omega_bar = -1/4 a^2 and D_bar a = 0.
               tally.equal(curvature(wt), Rational(-1, 4) * wedge(a, a), "BF curvature");
               tally.zero(covariant_d(wt, a), "BF covariant");
             }
           }
         }
         value = "pure-gauge pairs solve the equations of motion at every t";
       }},
      {"eq9_nonflat_detects",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string& value) {
         int detected = 0;
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const GForm a = difference(w1, w0);
           const VariableChoice c(t_sweep()[static_cast<std::size_t>(i) % t_sweep().size()]);
           const EOMResiduals r = eom_residuals(interpolate(w0, a, c), a, c);
           tally.note(r.valid_order());
           if (!r.vanish()) ++detected;
         }
         value = std::to_string(detected) + "/" + std::to_string(n) + " generic inputs have nonzero residuals";
         if (detected == 0) tally.fail("", "no generic input produced a nonzero residual");
       }},
      {"superpotential_gauge",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const LieMatrix chi = rng.lie(g, cap);
           const GForm a = difference(w1, w0);
           const ScalarForm u = superpotential_gauge(a, chi);
           for (const Rational& t : t_sweep()) {
             // alpha as seen from the (wt, a) presentation, through the inverse change of variables.
             const VariableChoice c(t);
             const Connection wt = interpolate(w0, a, c);
             const GForm a_t = difference(recover_w1(wt, a, c), recover_w0(wt, a, c));
             tally.equal(superpotential_gauge(a_t, chi), u, at_t(t));
           }
         }
       }},
      {"superpotential_diffeo",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w0 = rng.connection(g, cap), w1 = rng.connection(g, cap);
           const VectorField xi = rng.vector_field(cap);
           const GForm a = difference(w1, w0);
           const VariableChoice half(Rational(1, 2));
           const ScalarForm ref = superpotential_diffeo(a, interpolate(w0, a, half), half, xi);
           for (const Rational& t : {Rational(0), Rational(1)}) {
             const VariableChoice c(t);
             tally.equal(superpotential_diffeo(a, interpolate(w0, a, c), c, xi), ref, at_t(t));
           }
         }
       }},
      {"structural_d_squared",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const GForm x = rng.form(g, i % 4, cap);
           tally.zero(exterior_d(exterior_d(x)));
         }
       },
       100},
      {"structural_leibniz",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const int p = rng.uniform(0, 2), q = rng.uniform(0, 2 - p);
           const GForm x = rng.form(g, p, cap), y = rng.form(g, q, cap);
           tally.equal(exterior_d(wedge(x, y)),
                       wedge(exterior_d(x), y) + Rational(p % 2 ? -1 : 1) * wedge(x, exterior_d(y)));
         }
       },
       100},
      {"structural_bianchi",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const Connection w = rng.connection(g, cap);
           tally.zero(covariant_d(w, curvature(w)));
         }
       },
       100},
      {"structural_trace_cyclic",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const int p = rng.uniform(0, 3), q = rng.uniform(0, 3 - p);
           const GForm x = rng.form(g, p, cap), y = rng.form(g, q, cap);
           tally.equal(trace(wedge(x, y)), Rational((p * q) % 2 ? -1 : 1) * trace(wedge(y, x)));
         }
       },
       100},
      {"structural_jacobi",
       [](S g, int cap, int n, InstanceRng& rng, Tally& tally, std::string&) {
         for (int i = 0; i < n; ++i) {
           const LieMatrix x = rng.lie(g, cap), y = rng.lie(g, cap), z = rng.lie(g, cap);
           const LieMatrix j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
           tally.zero(zero_form(j));
         }
       },
       100},
  };
  return checks;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

inline CheckRecord symbolic_record(const Identity& id, bool mutant) {
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.id = id.id;
  rec.backend = "symbolic";
  const SymbolicOutcome o = prove(id);
  rec.certificate = o.pass ? "" : (o.failing_t.empty() ? "" : "t = " + o.failing_t + ": ") + o.certificate;
  rec.pass = mutant ? !o.pass : o.pass;
  rec.mutant = mutant;
  rec.value = o.pass ? "normal form empty" : "nonzero normal form";
  if (id.uses_t) rec.value += " at " + std::to_string(t_sweep().size()) + " values of t";
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

inline CheckRecord instance_record(const InstanceCheck& check, const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.id = check.id;
  rec.backend = "instance";
  InstanceRng rng(check_seed(opt.seed, check.id));
  Tally tally;
  rec.trials = std::max(opt.trials, check.min_trials);
  check.run(algebra_by_name(opt.algebra), opt.cap, rec.trials, rng, tally, rec.value);
  rec.pass = tally.pass();
  rec.valid_order = tally.order();
  rec.certificate = tally.certificate();
  if (rec.value.empty()) rec.value = rec.pass ? "equal at valid order" : "not equal";
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

/// A mutant passes this check when at least one random instance rejects it.
inline CheckRecord mutant_instance_record(const Identity& id, const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.id = id.id;
  rec.backend = "instance";
  rec.mutant = true;
  InstanceRng rng(check_seed(opt.seed, id.id));
  const auto chain = parse_chain(id);
  const LieAlgebraSpec& g = algebra_by_name(opt.algebra);
  int order = Jet::exact, rejected = 0;
  for (int i = 0; i < opt.trials; ++i) {
    const InstanceOutcome o = evaluate_chain(id, chain, random_bindings(g, opt.cap, rng));
    order = std::min(order, o.order);
    ++rec.trials;
    if (!o.pass) {
      ++rejected;
      if (rec.certificate.empty()) rec.certificate = (o.failing_t.empty() ? "" : "t = " + o.failing_t + ": ") + o.offending;
    }
  }
  rec.valid_order = order;
  rec.pass = rejected > 0;
  rec.value = std::to_string(rejected) + "/" + std::to_string(rec.trials) + " instances reject the mutant";
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

}  // namespace detail

inline void validate(const VerifyOptions& opt) {
  if (opt.suite != "symbolic" && opt.suite != "instance" && opt.suite != "all") {
    throw UsageError("unknown suite '" + opt.suite + "' (expected symbolic, instance or all)");
  }
  if (opt.algebra != "sl2" && opt.algebra != "sl3") throw UsageError("unknown algebra '" + opt.algebra + "'");
  if (opt.trials < 1) throw UsageError("trials must be positive");
  if (opt.suite != "symbolic" && opt.cap < 3) throw UsageError("cap too small for splitting check (needs ≥ 3)");
}

inline Report run_verify(const VerifyOptions& opt) {
  validate(opt);
  Report r{opt.suite, opt.algebra, opt.cap, opt.seed, opt.trials, {}, {}};
  const bool symbolic = opt.suite != "instance", instance = opt.suite != "symbolic";
  if (symbolic) {
    for (const auto& id : identity_manifest()) r.checks.push_back(detail::symbolic_record(id, false));
  }
  if (instance) {
    for (const auto& c : detail::instance_checks()) r.checks.push_back(detail::instance_record(c, opt));
  }
  if (opt.suite == "all") {
    for (const auto& id : mutation_manifest()) {
      r.checks.push_back(detail::symbolic_record(id, true));
      r.checks.push_back(detail::mutant_instance_record(id, opt));
    }
  }
  std::stable_sort(r.checks.begin(), r.checks.end(), [](const CheckRecord& x, const CheckRecord& y) {
    return std::tie(x.id, x.backend) < std::tie(y.id, y.backend);
  });
  return r;
}

}  // namespace csbf
