#pragma once

// Transgression and Chern-Simons 3-forms, the interpolated (omega_t, alpha)
// presentation, equation-of-motion residuals and superpotentials.
//
// Every presentation of Q below is coded as its own expression. None of them
// is derived from another, so comparing them is a real check.

#include <csbf/gauge.hpp>

#include <array>
#include <stdexcept>
#include <string>

namespace csbf {

/// Interpolation parameter t in [0, 1] selecting the dynamical variables
/// (omega_t, alpha). t = 1/2 is the average connection (BF form).
class VariableChoice {
 public:
  VariableChoice() = default;
  explicit VariableChoice(Rational t) : t_(std::move(t)) {
    if (t_ < 0 || t_ > 1) throw std::invalid_argument("t must lie in [0, 1], got " + format_rational(t_));
  }
  const Rational& t() const { return t_; }

 private:
  Rational t_ = 0;
};

struct EOMResiduals {
  GForm curvature;   // Omega_t + t(1-t) alpha^2
  GForm covariant;   // D_t alpha - (2t-1) alpha^2

  int valid_order() const { return std::min(curvature.valid_order(), covariant.valid_order()); }
  bool vanish() const { return curvature.is_zero_at(valid_order()) && covariant.is_zero_at(valid_order()); }
};

/// alpha = w1 - w0.
inline GForm difference(const Connection& w1, const Connection& w0) { return w1.form() - w0.form(); }

/// omega_t = w0 + t alpha.
inline Connection interpolate(const Connection& w0, const GForm& a, const VariableChoice& c) {
  return Connection(w0.form() + c.t() * a);
}

/// w0 = w_t - t alpha.
inline Connection recover_w0(const Connection& wt, const GForm& a, const VariableChoice& c) {
  return Connection(wt.form() - c.t() * a);
}

/// w1 = w_t + (1 - t) alpha.
inline Connection recover_w1(const Connection& wt, const GForm& a, const VariableChoice& c) {
  return Connection(wt.form() + Rational(1 - c.t()) * a);
}

/// Q(w1, w0) = tr(2 Omega0 ^ alpha + D0 alpha ^ alpha + 2/3 alpha^3).
inline ScalarForm transgression(const Connection& w1, const Connection& w0) {
  const GForm a = difference(w1, w0);
  const GForm aa = wedge(a, a);
  const GForm body = Rational(2) * wedge(curvature(w0), a) + wedge(covariant_d(w0, a), a) +
                     Rational(2, 3) * wedge(aa, a);
  return trace(body);
}

/// Q(w1, w0) = tr(2 Omega1 ^ alpha - D1 alpha ^ alpha + 2/3 alpha^3).
inline ScalarForm transgression_alt(const Connection& w1, const Connection& w0) {
  const GForm a = difference(w1, w0);
  const GForm aa = wedge(a, a);
  const GForm body = Rational(2) * wedge(curvature(w1), a) - wedge(covariant_d(w1, a), a) +
                     Rational(2, 3) * wedge(aa, a);
  return trace(body);
}

/// CS(w) = tr(Omega ^ w - 1/3 w^3).
inline ScalarForm chern_simons(const Connection& w) {
  const GForm& f = w.form();
  return trace(wedge(curvature(w), f) - Rational(1, 3) * wedge(wedge(f, f), f));
}

/// CS(w1) - CS(w0) + d tr(w0 ^ w1). Inputs need valid order >= 2.
inline ScalarForm splitting_check(const Connection& w1, const Connection& w0) {
  if (std::min(w1.valid_order(), w0.valid_order()) < 2) {
    throw OrderError("splitting check needs connections of valid order >= 2");
  }
  return chern_simons(w1) - chern_simons(w0) + exterior_d(trace(wedge(w0.form(), w1.form())));
}

/// 2 tr(Omega_bar ^ alpha + 1/12 alpha^3) in terms of the average connection.
inline ScalarForm q_average(const Connection& w_bar, const GForm& a) {
  const GForm body = wedge(curvature(w_bar), a) + Rational(1, 12) * wedge(wedge(a, a), a);
  return Rational(2) * trace(body);
}

/// 2 tr(Omega_t ^ alpha - (t - 1/2) D_t alpha ^ alpha + (1/3 - t + t^2) alpha^3).
inline ScalarForm q_general(const Connection& wt, const GForm& a, const VariableChoice& c) {
  const Rational& t = c.t();
  const GForm body = wedge(curvature(wt), a) - Rational(t - Rational(1, 2)) * wedge(covariant_d(wt, a), a) +
                     Rational(Rational(1, 3) - t + t * t) * wedge(wedge(a, a), a);
  return Rational(2) * trace(body);
}

/// The three expressions that must coincide for any pair:
///   2 Omega1 - D1 alpha,  2 Omega0 + D0 alpha,  2 Omega_t - 2t(1-t) alpha^2 - (2t-1) D_t alpha.
inline std::array<GForm, 3> identity7_check(const Connection& w0, const Connection& w1, const VariableChoice& c) {
  const GForm a = difference(w1, w0);
  const Connection wt = interpolate(w0, a, c);
  const Rational& t = c.t();
  const GForm aa = wedge(a, a);
  return {Rational(2) * curvature(w1) - covariant_d(w1, a), Rational(2) * curvature(w0) + covariant_d(w0, a),
          Rational(2) * curvature(wt) - Rational(2 * t * (1 - t)) * aa - Rational(2 * t - 1) * covariant_d(wt, a)};
}

/// Omega0 + Omega1 - alpha^2.
inline GForm identity5_rhs(const Connection& w0, const Connection& w1) {
  const GForm a = difference(w1, w0);
  return curvature(w0) + curvature(w1) - wedge(a, a);
}

/// Equations of motion in the (omega_t, alpha) variables:
///   Omega_t = -t(1-t) alpha^2,  D_t alpha = (2t-1) alpha^2.
inline EOMResiduals eom_residuals(const Connection& wt, const GForm& a, const VariableChoice& c) {
  const Rational& t = c.t();
  const GForm aa = wedge(a, a);
  return {curvature(wt) + Rational(t * (1 - t)) * aa, covariant_d(wt, a) - Rational(2 * t - 1) * aa};
}

/// U(chi) = tr(alpha chi) for an infinitesimal gauge parameter chi.
inline ScalarForm superpotential_gauge(const GForm& a, const LieMatrix& chi) {
  if (a.size() != chi.size()) throw std::invalid_argument("matrix size mismatch in superpotential");
  return trace(wedge(a, zero_form(chi)));
}

/// U(xi) = tr[alpha (2 omega_t(xi) + (1 - 2t) alpha(xi))].
inline ScalarForm superpotential_diffeo(const GForm& a, const Connection& wt, const VariableChoice& c,
                                        const VectorField& xi) {
  if (a.degree() != 1) throw std::invalid_argument("superpotential needs a 1-form alpha");
  if (a.size() != wt.size()) throw std::invalid_argument("matrix size mismatch in superpotential");
  const GForm inner = Rational(2) * contract(xi, wt.form()) + Rational(1 - 2 * c.t()) * contract(xi, a);
  return trace(wedge(a, inner));
}

}  // namespace csbf
