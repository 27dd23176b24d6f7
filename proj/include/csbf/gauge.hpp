#pragma once

// Connections, curvature, covariant derivatives and local gauge transformations.

#include <csbf/forms.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace csbf {

/// A Lie-algebra-valued 1-form playing the role of a gauge connection.
class Connection {
 public:
  Connection() : form_(1, 2, Jet::exact) {}
  explicit Connection(GForm form) : form_(std::move(form)) {
    if (form_.degree() != 1) {
      throw std::invalid_argument("a connection must be a 1-form, got degree " + std::to_string(form_.degree()));
    }
  }

  const GForm& form() const { return form_; }
  int size() const { return form_.size(); }
  int valid_order() const { return form_.valid_order(); }

  friend bool operator==(const Connection& a, const Connection& b) { return a.form_ == b.form_; }

 private:
  GForm form_;
};

/// Omega = d(omega) + omega ^ omega.
inline GForm curvature(const Connection& w) {
  const GForm& f = w.form();
  return exterior_d(f) + wedge(f, f);
}

/// D_w a = da + [w, a].
inline GForm covariant_d(const Connection& w, const GForm& a) { return exterior_d(a) + gbracket(w.form(), a); }

/// Local gauge group element g together with its inverse.
class GroupJet {
 public:
  /// Inverts m as M0 (I + M0^{-1} N) with M0 the constant part and N nilpotent modulo the cap.
  explicit GroupJet(LieMatrix m) : matrix_(std::move(m)) {
    const auto m0_inv = invert(matrix_.constant_part());
    if (!m0_inv) throw std::domain_error("not a unit: constant part of the group element is singular");
    const int n = matrix_.size();
    const int cap = matrix_.cap();
    const LieMatrix m0_inv_j = LieMatrix::constant(*m0_inv, cap);
    const LieMatrix nil = m0_inv_j * (matrix_ - LieMatrix::constant(matrix_.constant_part(), cap));
    LieMatrix sum = LieMatrix::identity(n, cap);
    LieMatrix power = sum;
    for (int k = 1; !nil.is_zero(); ++k) {
      power = -(power * nil);
      if (power.is_zero()) break;
      if (cap == Jet::exact && k > 64) throw std::domain_error("group element inverse needs a finite cap");
      sum += power;
    }
    inverse_ = sum * m0_inv_j;
  }

  static GroupJet identity(int size, int cap = Jet::exact) { return GroupJet(LieMatrix::identity(size, cap)); }

  const LieMatrix& matrix() const { return matrix_; }
  const LieMatrix& inverse() const { return inverse_; }
  int size() const { return matrix_.size(); }
  int cap() const { return matrix_.cap(); }

 private:
  LieMatrix matrix_;
  LieMatrix inverse_;
};

/// g^{-1} X g for a form X.
inline GForm conjugate(const GroupJet& g, const GForm& x) {
  return wedge(wedge(zero_form(g.inverse()), x), zero_form(g.matrix()));
}

/// g^{-1} w g + g^{-1} dg.
inline Connection gauge_transform(const GroupJet& g, const Connection& w) {
  const GForm dg = exterior_d(zero_form(g.matrix()));
  return Connection(conjugate(g, w.form()) + wedge(zero_form(g.inverse()), dg));
}

/// The pure-gauge connection g^{-1} dg; its curvature vanishes identically.
inline Connection flat_connection(const GroupJet& g) {
  return Connection(wedge(zero_form(g.inverse()), exterior_d(zero_form(g.matrix()))));
}

}  // namespace csbf
