#pragma once

// Differential forms on the chart with jet (scalar) or LieMatrix coefficients.
//
// A component is addressed by a bitmask over the ordered covectors
// dx < dy < dz: bit 0 = dx, bit 1 = dy, bit 2 = dz. The form's degree is the
// popcount of every stored mask, so degrees above 3 exist only as zero forms.

#include <csbf/liealg.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace csbf {

using Covector = unsigned;  // bitmask, see above

inline constexpr Covector dx = 1;
inline constexpr Covector dy = 2;
inline constexpr Covector dz = 4;

inline int covector_degree(Covector c) { return std::popcount(c); }

inline std::string covector_name(Covector c) {
  std::string out;
  for (int k = 0; k < 3; ++k) {
    if (!(c & (1u << k))) continue;
    if (!out.empty()) out += '^';
    out += "d";
    out += "xyz"[k];
  }
  return out;
}

/// Sign of dx^a ^ dx^b rewritten on the ordered basis; 0 if they share a covector.
inline int wedge_sign(Covector a, Covector b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int i = 0; i < 3; ++i) {
    if (a & (1u << i)) swaps += std::popcount(b & ((1u << i) - 1));
  }
  return swaps % 2 ? -1 : 1;
}

/// Raised when a derivative is requested of something with no trustworthy order left.
struct OrderError : std::domain_error {
  using std::domain_error::domain_error;
};

inline int lowered(int order) { return order == Jet::exact ? order : order - 1; }

namespace detail {

inline Jet zero_coeff(const Jet*, int, int cap) { return Jet::zero(cap); }
inline LieMatrix zero_coeff(const LieMatrix*, int size, int cap) { return LieMatrix(size, cap); }

inline int coeff_size(const Jet&) { return 1; }
inline int coeff_size(const LieMatrix& m) { return m.size(); }

inline Jet truncate_coeff(const Jet& j, int cap) { return j.truncated(cap); }
inline LieMatrix truncate_coeff(const LieMatrix& m, int cap) { return m.truncated(cap); }

inline Jet partial_coeff(const Jet& j, Axis a) { return partial(j, a); }
inline LieMatrix partial_coeff(const LieMatrix& m, Axis a) {
  std::vector<Jet> e;
  e.reserve(m.entries().size());
  for (const auto& j : m.entries()) e.push_back(partial(j, a));
  return LieMatrix(m.size(), std::move(e));
}

inline Jet times(const Jet& a, const Jet& b) { return a * b; }
inline LieMatrix times(const LieMatrix& a, const LieMatrix& b) { return a * b; }
inline LieMatrix times(const Jet& a, const LieMatrix& b) { return a * b; }
inline LieMatrix times(const LieMatrix& a, const Jet& b) { return b * a; }

inline std::string coeff_text(const Jet& j, bool bare) {
  const std::string s = j.to_string();
  if (bare || j.terms().size() <= 1) return s;
  return "(" + s + ")";
}
inline std::string coeff_text(const LieMatrix& m, bool) { return m.to_string(); }

}  // namespace detail

template <class C>
class Form {
 public:
  using coeff_type = C;

  Form() = default;

  /// Zero form.
  Form(int degree, int size, int valid_order) : degree_(degree), size_(size), valid_order_(valid_order) {
    if (degree < 0 || degree > 6) throw std::invalid_argument("form degree out of range");
    if (valid_order < 0) throw std::invalid_argument("valid order must be non-negative");
  }

  /// coeff * (basis covector c); valid order defaults to the coefficient's cap.
  static Form single(Covector c, const C& coeff, std::optional<int> valid_order = std::nullopt) {
    const int order = valid_order.value_or(coeff_cap(coeff));
    Form f(covector_degree(c), detail::coeff_size(coeff), order);
    f.accumulate(c, coeff);
    return f;
  }

  int degree() const { return degree_; }
  int size() const { return size_; }
  int valid_order() const { return valid_order_; }
  const std::map<Covector, C>& components() const { return components_; }

  C component(Covector c) const {
    auto it = components_.find(c);
    if (it != components_.end()) return it->second;
    return detail::zero_coeff(static_cast<const C*>(nullptr), size_, valid_order_);
  }

  /// Adds coeff to the component at c (the form's degree must match).
  void accumulate(Covector c, const C& coeff) {
    if (covector_degree(c) != degree_) throw std::invalid_argument("covector degree does not match form degree");
    if (detail::coeff_size(coeff) != size_) throw std::invalid_argument("coefficient size mismatch");
    auto it = components_.find(c);
    C value = it == components_.end() ? detail::truncate_coeff(coeff, valid_order_)
                                      : detail::truncate_coeff(it->second + coeff, valid_order_);
    if (value.is_zero()) {
      if (it != components_.end()) components_.erase(it);
      return;
    }
    if (it == components_.end()) {
      components_.emplace(c, std::move(value));
    } else {
      it->second = std::move(value);
    }
  }

  Form truncated(int order) const {
    Form f(degree_, size_, std::min(order, valid_order_));
    for (const auto& [c, v] : components_) f.accumulate(c, v);
    return f;
  }

  bool is_zero() const { return components_.empty(); }

  Form operator-() const {
    Form f = *this;
    for (auto& [c, v] : f.components_) v = -v;
    return f;
  }

  friend Form operator+(const Form& a, const Form& b) { return combine(a, b, false); }
  friend Form operator-(const Form& a, const Form& b) { return combine(a, b, true); }

  friend Form operator*(const Rational& s, const Form& a) {
    Form f(a.degree_, a.size_, a.valid_order_);
    if (s == 0) return f;
    for (const auto& [c, v] : a.components_) f.components_.emplace(c, s * v);
    return f;
  }

  /// Equality at the lower of the two valid orders.
  friend bool operator==(const Form& a, const Form& b) {
    return equal_at(a, b, std::min(a.valid_order_, b.valid_order_));
  }

  friend bool equal_at(const Form& a, const Form& b, int order) {
    if (a.degree_ != b.degree_ || a.size_ != b.size_) return false;
    for (Covector c = 0; c < 8; ++c) {
      if (covector_degree(c) != a.degree_) continue;
      if (!equal_to_order(a.component(c), b.component(c), order)) return false;
    }
    return true;
  }

  bool is_zero_at(int order) const { return equal_at(*this, Form(degree_, size_, valid_order_), order); }

  /// e.g. "4 dx^dy^dz", "(1 + x) dx + 2 dz".
  std::string to_string() const {
    if (components_.empty()) return "0";
    std::string out;
    for (const auto& [c, v] : components_) {
      if (!out.empty()) out += " + ";
      if (c == 0) {
        out += detail::coeff_text(v, components_.size() == 1);
      } else {
        out += detail::coeff_text(v, false) + " " + covector_name(c);
      }
    }
    return out;
  }

  /// The nonzero term of highest monomial degree at or below order, as text.
  std::optional<std::string> offending_term(int order) const;

 private:
  static int coeff_cap(const C& c) { return c.cap(); }

  static Form combine(const Form& a, const Form& b, bool subtract) {
    if (a.degree_ != b.degree_) {
      throw std::invalid_argument("cannot add forms of degree " + std::to_string(a.degree_) + " and " +
                                  std::to_string(b.degree_));
    }
    if (a.size_ != b.size_) throw std::invalid_argument("matrix size mismatch in form sum");
    Form f(a.degree_, a.size_, std::min(a.valid_order_, b.valid_order_));
    for (const auto& [c, v] : a.components_) f.accumulate(c, v);
    for (const auto& [c, v] : b.components_) f.accumulate(c, subtract ? -v : v);
    return f;
  }

  int degree_ = 0;
  int size_ = 1;
  int valid_order_ = Jet::exact;
  std::map<Covector, C> components_;
};

using GForm = Form<LieMatrix>;
using ScalarForm = Form<Jet>;

namespace detail {

inline void collect_terms(const Jet& j, const std::string& where, int order, int& best_deg, std::string& best) {
  for (const auto& [m, c] : j.terms()) {
    if (m.degree() > order) break;
    if (m.degree() >= best_deg) {
      best_deg = m.degree();
      best = where + ": " + format_rational(c) + (m.degree() ? "*" + format_monomial(m) : "");
    }
  }
}

inline void collect_terms(const LieMatrix& x, const std::string& where, int order, int& best_deg,
                          std::string& best) {
  for (int i = 0; i < x.size(); ++i)
    for (int k = 0; k < x.size(); ++k) {
      collect_terms(x(i, k), where + "[" + std::to_string(i) + "," + std::to_string(k) + "]", order, best_deg,
                    best);
    }
}

}  // namespace detail

template <class C>
std::optional<std::string> Form<C>::offending_term(int order) const {
  int best_deg = -1;
  std::string best;
  for (const auto& [c, v] : components_) {
    detail::collect_terms(v, c == 0 ? std::string("1") : covector_name(c), order, best_deg, best);
  }
  if (best_deg < 0) return std::nullopt;
  return best;
}

namespace detail {

template <class A, class B>
auto wedge_impl(const Form<A>& a, const Form<B>& b) {
  using R = decltype(times(std::declval<A>(), std::declval<B>()));
  int size = a.size();
  if constexpr (std::is_same_v<A, Jet>) size = b.size();
  if constexpr (std::is_same_v<A, LieMatrix> && std::is_same_v<B, LieMatrix>) {
    if (a.size() != b.size()) {
      throw std::invalid_argument("matrix size mismatch in wedge: " + std::to_string(a.size()) + " vs " +
                                  std::to_string(b.size()));
    }
  }
  Form<R> out(std::min(a.degree() + b.degree(), 6), size, std::min(a.valid_order(), b.valid_order()));
  if (a.degree() + b.degree() > 3) return out;
  for (const auto& [ca, va] : a.components()) {
    for (const auto& [cb, vb] : b.components()) {
      const int s = wedge_sign(ca, cb);
      if (s == 0) continue;
      R prod = times(va, vb);
      out.accumulate(ca | cb, s > 0 ? prod : -prod);
    }
  }
  return out;
}

}  // namespace detail

/// Exterior product; coefficients multiply as matrices (or as scalars).
inline GForm wedge(const GForm& a, const GForm& b) { return detail::wedge_impl(a, b); }
inline ScalarForm wedge(const ScalarForm& a, const ScalarForm& b) { return detail::wedge_impl(a, b); }
inline GForm wedge(const ScalarForm& a, const GForm& b) { return detail::wedge_impl(a, b); }
inline GForm wedge(const GForm& a, const ScalarForm& b) { return detail::wedge_impl(a, b); }

/// Graded bracket [A, B] = A^B - (-1)^{pq} B^A.
inline GForm gbracket(const GForm& a, const GForm& b) {
  const GForm ab = wedge(a, b);
  const GForm ba = wedge(b, a);
  return (a.degree() * b.degree()) % 2 ? ab + ba : ab - ba;
}

template <class C>
Form<C> exterior_d(const Form<C>& a) {
  if (a.valid_order() == 0) throw OrderError("exterior derivative of a form with valid order 0");
  const int order = lowered(a.valid_order());
  Form<C> out(std::min(a.degree() + 1, 6), a.size(), order);
  for (const auto& [c, v] : a.components()) {
    for (int k = 0; k < 3; ++k) {
      const Covector bit = 1u << k;
      if (c & bit) continue;
      const C dv = detail::partial_coeff(v, static_cast<Axis>(k));
      if (dv.is_zero()) continue;
      const bool odd = std::popcount(c & (bit - 1)) % 2;
      out.accumulate(c | bit, odd ? -dv : dv);
    }
  }
  return out;
}

inline ScalarForm trace(const GForm& a) {
  ScalarForm out(a.degree(), 1, a.valid_order());
  for (const auto& [c, v] : a.components()) out.accumulate(c, trace(v));
  return out;
}

/// f * identity in every component.
inline GForm promote(const ScalarForm& a, int size) {
  GForm out(a.degree(), size, a.valid_order());
  for (const auto& [c, v] : a.components()) out.accumulate(c, LieMatrix::scalar(size, v));
  return out;
}

/// Degree-0 form with the given matrix value.
inline GForm zero_form(const LieMatrix& m, std::optional<int> valid_order = std::nullopt) {
  return GForm::single(0, m, valid_order);
}

/// c1*A + c2*B.
template <class C>
Form<C> scale_add(const Rational& c1, const Form<C>& a, const Rational& c2, const Form<C>& b) {
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("scale_add: degree mismatch (" + std::to_string(a.degree()) + " vs " +
                                std::to_string(b.degree()) + ")");
  }
  return c1 * a + c2 * b;
}

/// Vector field with jet components (xi^x, xi^y, xi^z).
class VectorField {
 public:
  VectorField() = default;
  VectorField(Jet vx, Jet vy, Jet vz) : comps_{std::move(vx), std::move(vy), std::move(vz)} {
    const int cap = std::min({comps_[0].cap(), comps_[1].cap(), comps_[2].cap()});
    for (auto& c : comps_) c = c.truncated(cap);
  }

  /// The coordinate field d/dx, d/dy or d/dz.
  static VectorField coordinate(Axis a, int cap = Jet::exact) {
    VectorField v{Jet::zero(cap), Jet::zero(cap), Jet::zero(cap)};
    v.comps_[static_cast<int>(a)] = Jet(1, cap);
    return v;
  }

  const Jet& operator[](Axis a) const { return comps_[static_cast<int>(a)]; }
  const Jet& operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }
  int cap() const { return comps_[0].cap(); }

 private:
  std::array<Jet, 3> comps_{};
};

/// Interior product: i_xi(dx^dy) = xi^x dy - xi^y dx.
template <class C>
Form<C> contract(const VectorField& xi, const Form<C>& a) {
  if (a.degree() == 0) throw std::invalid_argument("cannot contract a vector field with a 0-form");
  Form<C> out(a.degree() - 1, a.size(), std::min(a.valid_order(), xi.cap()));
  for (const auto& [c, v] : a.components()) {
    int slot = 0;
    for (int k = 0; k < 3; ++k) {
      const Covector bit = 1u << k;
      if (!(c & bit)) continue;
      if (!xi[k].is_zero()) {
        C term = xi[k] * v;
        out.accumulate(c & ~bit, slot % 2 ? -term : term);
      }
      ++slot;
    }
  }
  return out;
}

}  // namespace csbf
