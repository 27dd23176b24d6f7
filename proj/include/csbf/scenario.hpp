#pragma once

// Scenario files: a key-value header, a "---" line, then one statement per
// line. See docs/scenarios.md for the full format; a small example:
//
//   algebra: sl2
//   cap: 4
//   ---
//   connection w0 = 0
//   connection w1 = E*dx + F_*dy + H*dz
//   lie chi = H
//   show Q
//   check eq2_dual
//   check q_cubic: Q == tr(2/3*a ^ a ^ a)
//
// Once w0 and w1 (or one of them and a) are known, the scenario also binds
// a, the missing connection, wt = w0 + t a, Q = Q(w1, w0), Uchi = tr(a chi)
// and Uxi = tr[a (2 wt(xi) + (1 - 2t) a(xi))] when chi and xi are declared.

#include <csbf/verify.hpp>

#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace csbf {

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, dsl::Position where)
      : std::runtime_error(what + " at " + dsl::format_position(where)) {}
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  const auto b = s.find_first_not_of(" \t\r");
  if (lead) *lead = b == std::string::npos ? s.size() : b;
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

/// Does e mention t, directly or through a t-dependent name?
inline bool depends_on_t(const dsl::Expr& e, const std::set<std::string>& t_names) {
  if (e->kind == dsl::Kind::Param) return true;
  if (e->kind == dsl::Kind::Symbol && t_names.count(e->name)) return true;
  for (const auto& a : e->args)
    if (depends_on_t(a, t_names)) return true;
  return false;
}

}  // namespace detail

class Scenario {
 public:
  /// Runs the scenario text; `origin` is only used in messages.
  static Report run(const std::string& src, const std::string& origin = "<scenario>") {
    Scenario s(origin);
    s.execute(src);
    return s.report_;
  }

  static Report run_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return run(buf.str(), path);
  }

 private:
  explicit Scenario(std::string origin) : origin_(std::move(origin)) {}

  struct Line {
    std::string text;  // comment stripped, trimmed
    dsl::Position pos;  // position of text's first character
  };

  void execute(const std::string& src) {
    std::istringstream in(src);
    std::string raw;
    std::vector<Line> lines;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      std::size_t lead = 0;
      std::string text = detail::trim(raw, &lead);
      if (!text.empty()) lines.push_back({text, {n, static_cast<int>(lead) + 1}});
    }
    std::size_t i = 0;
    for (; i < lines.size() && lines[i].text != "---"; ++i) header(lines[i]);
    if (i == lines.size()) throw ScenarioError("missing '---' line after the header in " + origin_);
    begin_body();
    for (++i; i < lines.size(); ++i) statement(lines[i]);
  }

  // ------------------------------------------------------------ header

  void header(const Line& l) {
    const auto colon = l.text.find(':');
    if (colon == std::string::npos) throw ScenarioError("expected 'key: value'", l.pos);
    const std::string key = detail::trim(l.text.substr(0, colon));
    const std::string value = detail::trim(l.text.substr(colon + 1));
    if (key == "algebra") {
      if (value != "sl2" && value != "sl3") throw ScenarioError("unknown algebra '" + value + "'", l.pos);
      report_.algebra = value;
    } else if (key == "cap") {
      try {
        std::size_t used = 0;
        cap_ = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ScenarioError("cap must be an integer", l.pos);
      }
      if (cap_ < 1) throw ScenarioError("cap must be at least 1", l.pos);
    } else if (key == "t") {
      ts_.clear();
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        Rational t;
        try {
          t = parse_rational(detail::trim(item));
        } catch (const std::exception&) {
          throw ScenarioError("bad t value '" + detail::trim(item) + "'", l.pos);
        }
        if (t < 0 || t > 1) throw ScenarioError("t values must lie in [0, 1], got " + format_rational(t), l.pos);
        ts_.push_back(t);
      }
      if (ts_.empty()) throw ScenarioError("empty t list", l.pos);
    } else {
      throw ScenarioError("unknown header key '" + key + "'", l.pos);
    }
  }

  void begin_body() {
    if (report_.algebra.empty()) report_.algebra = "sl2";
    report_.suite = "scenario";
    report_.cap = cap_;
    env_.algebra = &algebra_by_name(report_.algebra);
    ctx_.concrete = true;
    ctx_.basis_names = env_.algebra->basis_names;
  }

  // ------------------------------------------------------------ statements

  /// Splits "KEYWORD rest" and reports where rest starts.
  static std::pair<std::string, Line> split_keyword(const Line& l) {
    const auto sp = l.text.find_first_of(" \t");
    if (sp == std::string::npos) return {l.text, {"", {l.pos.line, l.pos.column + static_cast<int>(l.text.size())}}};
    std::size_t lead = 0;
    std::string rest = detail::trim(l.text.substr(sp), &lead);
    return {l.text.substr(0, sp), {rest, {l.pos.line, l.pos.column + static_cast<int>(sp + lead)}}};
  }

  static Line sub(const Line& l, std::size_t from, std::size_t to = std::string::npos) {
    const std::string piece = l.text.substr(from, to == std::string::npos ? std::string::npos : to - from);
    std::size_t lead = 0;
    std::string text = detail::trim(piece, &lead);
    return {text, {l.pos.line, l.pos.column + static_cast<int>(from + lead)}};
  }

  void statement(const Line& l) {
    const auto [keyword, rest] = split_keyword(l);
    if (keyword == "connection" || keyword == "form" || keyword == "lie" || keyword == "group" ||
        keyword == "vector") {
      declaration(keyword, rest);
    } else if (keyword == "show") {
      show(rest);
    } else if (keyword == "check") {
      check(rest);
    } else {
      throw ScenarioError("unknown statement '" + keyword + "'", l.pos);
    }
  }

  void declaration(const std::string& kind, const Line& rest) {
    const auto eq = rest.text.find('=');
    if (eq == std::string::npos) throw ScenarioError("expected 'NAME = value'", rest.pos);
    const Line name_part = sub(rest, 0, eq);
    const Line value = sub(rest, eq + 1);
    const std::string& name = name_part.text;
    if (!detail::is_identifier(name) || dsl::is_reserved(name) || ctx_.is_basis(name)) {
      throw ScenarioError("'" + name + "' cannot be used as a name", name_part.pos);
    }
    if (ctx_.forms.count(name) || ctx_.vectors.count(name)) {
      throw ScenarioError("'" + name + "' is already declared", name_part.pos);
    }
    if (value.text.empty()) throw ScenarioError("missing value", value.pos);

    if (kind == "vector") {
      bind_vector(name, value);
    } else if (kind == "connection" && value.text.rfind("flat(", 0) == 0 && value.text.back() == ')') {
      const Line g = sub(value, 5, value.text.size() - 1);
      auto it = groups_.find(g.text);
      if (it == groups_.end()) throw ScenarioError("unknown group element '" + g.text + "'", g.pos);
      bind(name, Value{flat_connection(it->second).form()});
    } else {
      Value v = evaluate_at(value);
      if (v.zero_literal) {
        const int degree = kind == "connection" || kind == "form" ? 1 : 0;
        v = Value{GForm(degree, env_.size(), cap_)};
      }
      if (v.is_scalar()) v = Value{promote(v.scalar(), env_.size())};
      v = Value{v.matrix().truncated(cap_)};
      if (kind == "connection" && v.degree() != 1) {
        throw ScenarioError("a connection must be a 1-form, got degree " + std::to_string(v.degree()), value.pos);
      }
      if ((kind == "lie" || kind == "group") && v.degree() != 0) {
        throw ScenarioError("'" + kind + "' values must be 0-forms, got degree " + std::to_string(v.degree()),
                            value.pos);
      }
      if (kind == "group") {
        try {
          groups_.emplace(name, GroupJet(v.matrix().component(0)));
        } catch (const std::domain_error& e) {
          throw ScenarioError(std::string(e.what()), value.pos);
        }
      }
      bind(name, std::move(v));
    }
    derive();
  }

  void bind_vector(const std::string& name, const Line& value) {
    if (value.text.front() != '(' || value.text.back() != ')') {
      throw ScenarioError("expected a vector '(f; g; h)'", value.pos);
    }
    std::vector<Jet> comps;
    std::size_t from = 1;
    for (int k = 0; k < 3; ++k) {
      const auto semi = k < 2 ? value.text.find(';', from) : value.text.size() - 1;
      if (semi == std::string::npos) throw ScenarioError("a vector needs three components", value.pos);
      const Line piece = sub(value, from, semi);
      const Value v = evaluate_at(piece);
      if (!v.is_scalar() || v.degree() != 0) throw ScenarioError("vector components must be scalar functions", piece.pos);
      comps.push_back(v.scalar().component(0).truncated(cap_));
      from = semi + 1;
    }
    ctx_.vectors.insert(name);
    env_.bindings[name] = Value{VectorField(comps[0], comps[1], comps[2])};
    derive();
  }

  void bind(const std::string& name, Value v) {
    ctx_.forms[name] = v.degree();
    env_.bindings[name] = std::move(v);
  }

  bool has(const std::string& name) const { return env_.bindings.count(name) > 0; }

  const GForm& matrix(const std::string& name) const { return env_.bindings.at(name).matrix(); }

  /// Adds every derived name that has become computable.
  void derive() {
    if (has("w0") && has("w1") && !has("a")) bind("a", Value{matrix("w1") - matrix("w0")});
    if (has("w0") && has("a") && !has("w1")) bind("w1", Value{matrix("w0") + matrix("a")});
    if (has("w1") && has("a") && !has("w0")) bind("w0", Value{matrix("w1") - matrix("a")});
    if (has("w0") && has("w1") && !has("Q")) {
      bind("Q", Value{transgression(Connection(matrix("w1")), Connection(matrix("w0")))});
    }
    if (has("a") && has("chi") && !has("Uchi") && matrix("chi").degree() == 0) {
      bind("Uchi", Value{superpotential_gauge(matrix("a"), matrix("chi").component(0))});
    }
    if (has("w0") && has("a") && !ctx_.forms.count("wt")) {
      ctx_.forms["wt"] = 1;
      t_names_.insert("wt");
    }
    if (has("a") && ctx_.forms.count("wt") && ctx_.vectors.count("xi") && !ctx_.forms.count("Uxi")) {
      ctx_.forms["Uxi"] = 1;
      t_names_.insert("Uxi");
    }
  }

  /// Binds the t-dependent names for one value of t.
  void bind_t_names(const Rational& t) {
    env_.t = t;
    if (!t_names_.count("wt")) return;
    const VariableChoice c(t);
    const Connection wt = interpolate(Connection(matrix("w0")), matrix("a"), c);
    env_.bindings["wt"] = Value{wt.form()};
    if (t_names_.count("Uxi")) {
      env_.bindings["Uxi"] = Value{superpotential_diffeo(matrix("a"), wt, c, env_.bindings.at("xi").vector())};
    }
  }

  dsl::Expr parse_at(const Line& l) const { return dsl::parse(l.text, ctx_, l.pos); }

  Value evaluate_at(const Line& l) {
    const dsl::Expr e = parse_at(l);
    if (detail::depends_on_t(e, t_names_)) throw ScenarioError("declarations cannot depend on t", l.pos);
    try {
      return evaluate(e, env_);
    } catch (const EvalError& err) {
      throw ScenarioError(err.what(), l.pos);
    }
  }

  const std::vector<Rational>& t_values() const { return ts_.empty() ? t_sweep() : ts_; }

  void show(const Line& rest) {
    if (rest.text.empty()) throw ScenarioError("show needs an expression", rest.pos);
    const dsl::Expr e = parse_at(rest);
    const std::string label = dsl::to_text(e);
    auto record = [&](const std::string& name) {
      try {
        const Value v = evaluate(e, env_);
        report_.values.push_back({name, v.to_string(), v.valid_order()});
      } catch (const EvalError& err) {
        throw ScenarioError(err.what(), rest.pos);
      }
    };
    if (!detail::depends_on_t(e, t_names_)) {
      record(label);
      return;
    }
    for (const Rational& t : t_values()) {
      bind_t_names(t);
      record(label + " [t = " + format_rational(t) + "]");
    }
  }

  void check(const Line& rest) {
    const auto start = std::chrono::steady_clock::now();
    const auto colon = rest.text.find(':');
    CheckRecord rec;
    rec.backend = "instance";
    rec.trials = 1;
    if (colon == std::string::npos) {
      rec.id = rest.text;
      builtin(rest, rec);
    } else {
      const Line label = sub(rest, 0, colon);
      if (!detail::is_identifier(label.text)) throw ScenarioError("check labels are identifiers", label.pos);
      rec.id = label.text;
      user_check(sub(rest, colon + 1), rec);
    }
    rec.wall_ms = detail::elapsed_ms(start);
    report_.checks.push_back(std::move(rec));
  }

  void user_check(const Line& body, CheckRecord& rec) {
    std::vector<dsl::Expr> chain;
    std::size_t from = 0;
    while (true) {
      const auto eq = body.text.find("==", from);
      chain.push_back(parse_at(sub(body, from, eq)));
      if (eq == std::string::npos) break;
      from = eq + 2;
    }
    if (chain.size() < 2) throw ScenarioError("a check needs 'lhs == rhs'", body.pos);
    bool uses_t = false;
    for (const auto& e : chain) uses_t = uses_t || detail::depends_on_t(e, t_names_);
    run_chain(Identity{rec.id, "", {}, uses_t}, chain, body.pos, rec);
  }

  void run_chain(const Identity& id, const std::vector<dsl::Expr>& chain, dsl::Position where, CheckRecord& rec) {
    InstanceOutcome o;
    try {
      o = id.uses_t ? chain_over_t(chain) : evaluate_chain(id, chain, env_);
    } catch (const EvalError& err) {
      throw ScenarioError(err.what(), where);
    }
    rec.pass = o.pass;
    rec.valid_order = o.order;
    rec.value = o.pass ? "equal at valid order" : "not equal";
    if (id.uses_t) {
      const std::size_t n = t_values().size();
      rec.value += " for " + std::to_string(n) + (n == 1 ? " value of t" : " values of t");
    }
    if (!o.pass) rec.certificate = (o.failing_t.empty() ? "" : "t = " + o.failing_t + ": ") + o.offending;
  }

  InstanceOutcome chain_over_t(const std::vector<dsl::Expr>& chain) {
    InstanceOutcome out;
    for (const Rational& t : t_values()) {
      bind_t_names(t);
      std::vector<Value> values;
      for (const auto& e : chain) values.push_back(evaluate(e, env_));
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const Comparison c = compare(values[i], values[i + 1], env_.size());
        out.order = std::min(out.order, c.order);
        if (!c.equal && out.pass) {
          out.pass = false;
          out.offending = c.offending;
          out.failing_t = format_rational(t);
        }
      }
    }
    return out;
  }

  void require(const Line& l, std::initializer_list<const char*> names) const {
    for (const char* n : names)
      if (!has(n)) throw ScenarioError("check '" + l.text + "' needs '" + n + "' to be declared", l.pos);
  }

  void builtin(const Line& l, CheckRecord& rec) {
    for (const auto& id : identity_manifest()) {
      if (id.id != l.text) continue;
      require(l, {"w0", "w1", "a"});
      dsl::Context ctx = dsl::symbolic_context();
      run_chain(id, parse_chain(id, ctx), l.pos, rec);
      return;
    }
    if (l.text == "eq9_residuals") {
      require(l, {"w0", "a"});
      detail::Tally tally;
      for (const Rational& t : t_values()) {
        const VariableChoice c(t);
        const EOMResiduals r = eom_residuals(interpolate(Connection(matrix("w0")), matrix("a"), c), matrix("a"), c);
        tally.zero(r.curvature, detail::at_t(t) + ", curvature residual");
        tally.zero(r.covariant, detail::at_t(t) + ", covariant residual");
      }
      finish(tally, rec, "residuals vanish");
      return;
    }
    if (l.text == "superpotential_diffeo") {
      require(l, {"w0", "a", "xi"});
      detail::Tally tally;
      const GForm& a = matrix("a");
      const VectorField& xi = env_.bindings.at("xi").vector();
      std::optional<ScalarForm> first;
      for (const Rational& t : t_values()) {
        const VariableChoice c(t);
        const ScalarForm u = superpotential_diffeo(a, interpolate(Connection(matrix("w0")), a, c), c, xi);
        if (first) tally.equal(u, *first, detail::at_t(t));
        else first = u;
      }
      finish(tally, rec, "U(xi) is the same for every t");
      return;
    }
    if (l.text == "curvature_interpolation") {
      require(l, {"w0", "w1", "a"});
      detail::Tally tally;
      const Connection w0(matrix("w0")), w1(matrix("w1"));
      const GForm& a = matrix("a");
      for (const Rational& t : t_values()) {
        tally.equal(curvature(interpolate(w0, a, VariableChoice(t))),
                    t * curvature(w1) + Rational(1 - t) * curvature(w0) - Rational(t * (1 - t)) * wedge(a, a),
                    detail::at_t(t));
      }
      finish(tally, rec, "equal at valid order");
      return;
    }
    throw ScenarioError("unknown check '" + l.text + "'", l.pos);
  }

  static void finish(const detail::Tally& tally, CheckRecord& rec, const std::string& ok) {
    rec.pass = tally.pass();
    rec.valid_order = tally.order();
    rec.certificate = tally.certificate();
    rec.value = rec.pass ? ok : "not equal";
  }

  std::string origin_;
  int cap_ = 4;
  std::vector<Rational> ts_;
  dsl::Context ctx_;
  EvalEnv env_;
  std::map<std::string, GroupJet> groups_;
  std::set<std::string> t_names_;
  Report report_;
};

}  // namespace csbf
