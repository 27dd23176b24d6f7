#pragma once

// Concrete evaluation of DSL expressions to jet-valued forms.
//
// A value is a scalar form, a matrix-valued form, or a vector field. Scalars
// meet matrices through s -> s * I, so "1 + x*E" is the group-like element
// one would expect.

#include <csbf/dsl.hpp>
#include <csbf/gauge.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace csbf {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Value {
  std::variant<ScalarForm, GForm, VectorField> v;
  bool zero_literal = false;

  bool is_scalar() const { return std::holds_alternative<ScalarForm>(v); }
  bool is_matrix() const { return std::holds_alternative<GForm>(v); }
  bool is_vector() const { return std::holds_alternative<VectorField>(v); }
  const ScalarForm& scalar() const { return std::get<ScalarForm>(v); }
  const GForm& matrix() const { return std::get<GForm>(v); }
  const VectorField& vector() const { return std::get<VectorField>(v); }

  int degree() const {
    if (is_scalar()) return scalar().degree();
    if (is_matrix()) return matrix().degree();
    return -1;
  }
  int valid_order() const {
    if (is_scalar()) return scalar().valid_order();
    if (is_matrix()) return matrix().valid_order();
    return vector().cap();
  }
  std::string to_string() const {
    if (is_scalar()) return scalar().to_string();
    if (is_matrix()) return matrix().to_string();
    const auto& f = vector();
    return "(" + f[0].to_string() + "; " + f[1].to_string() + "; " + f[2].to_string() + ")";
  }
};

struct EvalEnv {
  const LieAlgebraSpec* algebra = &sl2();
  std::map<std::string, Value> bindings;
  std::optional<Rational> t;

  int size() const { return algebra->matrix_size; }
};

namespace detail {

inline GForm as_matrix(const Value& x, int size) {
  if (x.is_matrix()) return x.matrix();
  if (x.is_scalar()) return promote(x.scalar(), size);
  throw EvalError("a vector field cannot be used as a form");
}

inline Value negate(const Value& x) {
  if (x.is_scalar()) return {-x.scalar()};
  return {-x.matrix()};
}

inline Value sum(const Value& a, const Value& b, bool subtract, int size) {
  if (a.is_vector() || b.is_vector()) throw EvalError("vector fields cannot be added to forms");
  if (a.zero_literal) return subtract ? negate(b) : b;
  if (b.zero_literal) return a;
  if (a.degree() != b.degree()) {
    throw EvalError("degree mismatch: " + std::to_string(a.degree()) + " vs " + std::to_string(b.degree()));
  }
  if (a.is_scalar() && b.is_scalar()) return {subtract ? a.scalar() - b.scalar() : a.scalar() + b.scalar()};
  const GForm x = as_matrix(a, size), y = as_matrix(b, size);
  return {subtract ? x - y : x + y};
}

inline Value product(const Value& a, const Value& b, int size) {
  if (a.is_vector() || b.is_vector()) throw EvalError("vector fields only appear inside ic(..)");
  if (a.is_scalar() && b.is_scalar()) return {wedge(a.scalar(), b.scalar())};
  if (a.is_scalar()) return {wedge(a.scalar(), b.matrix())};
  if (b.is_scalar()) return {wedge(a.matrix(), b.scalar())};
  if (a.matrix().size() != size || b.matrix().size() != size) throw EvalError("matrix size mismatch");
  return {wedge(a.matrix(), b.matrix())};
}

inline Value eval_impl(const dsl::Expr& e, const EvalEnv& env);

inline Connection connection_of(const dsl::Expr& e, const EvalEnv& env) {
  const Value w = eval_impl(e, env);
  if (w.degree() != 1) throw EvalError("expected a connection (1-form)");
  return Connection(as_matrix(w, env.size()));
}

inline Value eval_impl(const dsl::Expr& e, const EvalEnv& env) {
  using dsl::Kind;
  auto arg = [&](int i) { return eval_impl(e->args[static_cast<std::size_t>(i)], env); };
  switch (e->kind) {
    case Kind::Symbol: {
      auto it = env.bindings.find(e->name);
      if (it == env.bindings.end()) throw EvalError("unbound symbol '" + e->name + "'");
      return it->second;
    }
    case Kind::Number: {
      Value v{ScalarForm::single(0, Jet(e->value))};
      v.zero_literal = e->value == 0;
      return v;
    }
    case Kind::Param:
      if (!env.t) throw EvalError("parameter t has no value");
      return {ScalarForm::single(0, Jet(*env.t))};
    case Kind::Coord: {
      Monomial m;
      m.exp[static_cast<int>(e->axis)] = e->power;
      return {ScalarForm::single(0, Jet::monomial(m, 1))};
    }
    case Kind::Covector: return {ScalarForm::single(e->covector, Jet(1))};
    case Kind::Basis: {
      const auto i = env.algebra->basis_index(e->name);
      if (!i) throw EvalError("unknown basis element '" + e->name + "' for " + env.algebra->name);
      return {zero_form(basis_element(*env.algebra, *i))};
    }
    case Kind::Neg: {
      const Value x = arg(0);
      if (x.is_vector()) throw EvalError("vector fields only appear inside ic(..)");
      return negate(x);
    }
    case Kind::Add: return sum(arg(0), arg(1), false, env.size());
    case Kind::Sub: return sum(arg(0), arg(1), true, env.size());
    case Kind::Mul:
    case Kind::Wedge: return product(arg(0), arg(1), env.size());
    case Kind::Bracket: {
      const Value a = arg(0), b = arg(1);
      if (a.is_scalar() && b.is_scalar()) return {ScalarForm(a.degree() + b.degree(), 1, Jet::exact)};
      return {gbracket(as_matrix(a, env.size()), as_matrix(b, env.size()))};
    }
    case Kind::Ext: {
      const Value x = arg(0);
      if (x.is_scalar()) return {exterior_d(x.scalar())};
      return {exterior_d(as_matrix(x, env.size()))};
    }
    case Kind::Cov: return {covariant_d(connection_of(e->args[0], env), as_matrix(arg(1), env.size()))};
    case Kind::Curv: return {curvature(connection_of(e->args[0], env))};
    case Kind::Trace: {
      const Value x = arg(0);
      if (!x.is_matrix()) throw EvalError("trace of a scalar");
      return {trace(x.matrix())};
    }
    case Kind::Contract: {
      auto it = env.bindings.find(e->name);
      if (it == env.bindings.end() || !it->second.is_vector()) {
        throw EvalError("'" + e->name + "' is not a vector field");
      }
      const Value x = arg(0);
      if (x.is_scalar()) return {contract(it->second.vector(), x.scalar())};
      return {contract(it->second.vector(), as_matrix(x, env.size()))};
    }
  }
  return {};
}

}  // namespace detail

/// Evaluates e under env. OrderError and size errors surface as EvalError.
inline Value evaluate(const dsl::Expr& e, const EvalEnv& env) {
  try {
    return detail::eval_impl(e, env);
  } catch (const EvalError&) {
    throw;
  } catch (const std::exception& err) {
    throw EvalError(std::string(err.what()) + " in `" + dsl::to_text(e) + "`");
  }
}

/// Outcome of comparing two concrete values at their common valid order.
struct Comparison {
  bool equal = false;
  int order = 0;
  std::string offending;  // highest-degree nonzero term of the difference
};

inline Comparison compare(const Value& lhs, const Value& rhs, int size) {
  if (lhs.is_vector() || rhs.is_vector()) throw EvalError("cannot compare vector fields");
  const Value diff = detail::sum(lhs, rhs, true, size);
  const int order = std::min(lhs.zero_literal ? Jet::exact : lhs.valid_order(),
                             rhs.zero_literal ? Jet::exact : rhs.valid_order());
  Comparison c;
  c.order = order;
  if (diff.is_scalar()) {
    c.equal = diff.scalar().is_zero_at(order);
    if (!c.equal) c.offending = diff.scalar().offending_term(order).value_or("");
  } else {
    c.equal = diff.matrix().is_zero_at(order);
    if (!c.equal) c.offending = diff.matrix().offending_term(order).value_or("");
  }
  return c;
}

}  // namespace csbf
