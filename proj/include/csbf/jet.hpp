#pragma once

// Truncated polynomials in the chart coordinates (x, y, z) over Q.
//
// A Jet keeps every term of total degree <= cap and nothing above it, so the
// set of Jets with a fixed cap is the quotient ring Q[x,y,z] / (deg > cap).
// Binary operations land in the lower of the two caps. Differentiation lowers
// the cap by one because the top-degree part of a derivative would need terms
// that were already discarded.

#include <csbf/rational.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csbf {

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> all_axes{Axis::x, Axis::y, Axis::z};

inline char axis_name(Axis a) { return "xyz"[static_cast<int>(a)]; }

struct Monomial {
  std::array<int, 3> exp{0, 0, 0};

  int degree() const { return exp[0] + exp[1] + exp[2]; }
  int operator[](Axis a) const { return exp[static_cast<int>(a)]; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return {{a.exp[0] + b.exp[0], a.exp[1] + b.exp[1], a.exp[2] + b.exp[2]}};
  }
};

/// Graded order: total degree first, then x-exponent descending, then
/// y-exponent descending. 1 < x < y < z < x**2 < x*y < ...
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    if (a.exp[0] != b.exp[0]) return a.exp[0] > b.exp[0];
    return a.exp[1] > b.exp[1];
  }
};

/// Number of monomials of total degree <= cap.
inline std::size_t monomial_count(int cap) {
  const auto d = static_cast<std::size_t>(cap) + 1;
  return d * (d + 1) * (d + 2) / 6;
}

/// Position of m in MonomialOrder.
inline std::size_t monomial_index(const Monomial& m) {
  const auto d = static_cast<std::size_t>(m.degree());
  const auto r = d - static_cast<std::size_t>(m.exp[0]);
  const auto below = d * (d + 1) * (d + 2) / 6;
  return below + r * (r + 1) / 2 + (r - static_cast<std::size_t>(m.exp[1]));
}

namespace detail {

inline const std::vector<Monomial>& monomial_table(int cap) {
  static thread_local std::vector<Monomial> table;
  const auto need = monomial_count(cap);
  if (table.size() < need) {
    table.clear();
    for (int d = 0; table.size() < need; ++d) {
      for (int i = d; i >= 0; --i) {
        for (int j = d - i; j >= 0; --j) table.push_back({{i, j, d - i - j}});
      }
    }
  }
  return table;
}

}  // namespace detail

inline std::string format_monomial(const Monomial& m) {
  std::string out;
  for (Axis a : all_axes) {
    const int e = m[a];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += axis_name(a);
    if (e > 1) out += "**" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

class Jet {
 public:
  /// Cap of values that are exact polynomials (literals); never truncates.
  static constexpr int exact = std::numeric_limits<int>::max();

  using Term = std::pair<Monomial, Rational>;

  Jet() = default;
  /// The constant c.
  explicit Jet(const Rational& c, int cap = exact) : cap_(check_cap(cap)) {
    if (c != 0) terms_.emplace_back(Monomial{}, c);
  }

  static Jet zero(int cap) { return Jet(0, cap); }
  static Jet constant(const Rational& c, int cap = exact) { return Jet(c, cap); }

  static Jet monomial(const Monomial& m, const Rational& c, int cap = exact) {
    Jet j = zero(cap);
    if (c != 0 && m.degree() <= cap) j.terms_.emplace_back(m, c);
    return j;
  }

  static Jet variable(Axis a, int cap = exact) {
    Monomial m;
    m.exp[static_cast<int>(a)] = 1;
    return monomial(m, 1, cap);
  }

  static Jet from_terms(const std::map<Monomial, Rational, MonomialOrder>& terms, int cap) {
    Jet j = zero(cap);
    for (const auto& [m, c] : terms) {
      if (c != 0 && m.degree() <= cap) j.terms_.emplace_back(m, c);
    }
    return j;
  }

  /// The value left after differentiating a cap-0 jet: nothing about it is known.
  static Jet degenerate() {
    Jet j = zero(0);
    j.degenerate_ = true;
    return j;
  }

  int cap() const { return cap_; }
  bool is_degenerate() const { return degenerate_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Highest total degree of a stored term, -1 for the zero jet.
  int max_degree() const { return terms_.empty() ? -1 : terms_.back().first.degree(); }

  Rational coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return MonomialOrder{}(t.first, key); });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
  }

  Rational constant_term() const { return coefficient(Monomial{}); }

  Jet truncated(int cap) const {
    Jet j = zero(std::min(cap, cap_));
    j.degenerate_ = degenerate_;
    for (const auto& t : terms_) {
      if (t.first.degree() > j.cap_) break;
      j.terms_.push_back(t);
    }
    return j;
  }

  Jet operator-() const {
    Jet j = *this;
    for (auto& t : j.terms_) t.second = -t.second;
    return j;
  }

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, false); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, true); }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }

  friend Jet operator*(const Rational& c, const Jet& a) {
    if (c == 0) {
      Jet j = zero(a.cap_);
      j.degenerate_ = a.degenerate_;
      return j;
    }
    Jet j = a;
    for (auto& t : j.terms_) t.second *= c;
    return j;
  }

  friend Jet operator*(const Jet& a, const Jet& b) { return sum_of_products({{&a, &b}}, exact); }

  using Factors = std::pair<const Jet*, const Jet*>;

  /// Sum of a_k * b_k over the given pairs, truncated at the lowest cap
  /// involved (including the cap argument), accumulated in one buffer.
  static Jet sum_of_products(const std::vector<Factors>& pairs, int cap) {
    long long reach = -1;
    bool degenerate = false;
    for (const auto& [a, b] : pairs) {
      cap = std::min({cap, a->cap_, b->cap_});
      degenerate = degenerate || a->degenerate_ || b->degenerate_;
      if (!a->is_zero() && !b->is_zero()) {
        reach = std::max(reach, static_cast<long long>(a->max_degree()) + b->max_degree());
      }
    }
    Jet out = zero(cap);
    out.degenerate_ = degenerate;
    if (reach < 0) return out;
    const int top = static_cast<int>(std::min<long long>(cap, reach));
    std::vector<Rational> dense(monomial_count(top));
    std::vector<char> touched(dense.size(), 0);
    Rational prod;
    for (const auto& [a, b] : pairs) {
      for (const auto& [ma, ca] : a->terms_) {
        const int da = ma.degree();
        if (da > top) break;
        for (const auto& [mb, cb] : b->terms_) {
          if (da + mb.degree() > top) break;
          const auto idx = monomial_index(ma * mb);
          mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
          dense[idx] += prod;
          touched[idx] = 1;
        }
      }
    }
    const auto& table = detail::monomial_table(top);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (touched[i] && dense[i] != 0) out.terms_.emplace_back(table[i], std::move(dense[i]));
    }
    return out;
  }

  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  /// Equality up to the lower of the two caps. A degenerate jet carries no
  /// trustworthy coefficients and is equal to nothing.
  friend bool operator==(const Jet& a, const Jet& b) {
    return equal_to_order(a, b, std::min(a.cap_, b.cap_));
  }

  friend bool equal_to_order(const Jet& a, const Jet& b, int order) {
    if (a.degenerate_ || b.degenerate_) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    auto live = [order](auto it, auto end) { return it != end && it->first.degree() <= order; };
    while (live(ia, a.terms_.end()) || live(ib, b.terms_.end())) {
      if (!live(ia, a.terms_.end()) || !live(ib, b.terms_.end())) return false;
      if (!(ia->first == ib->first) || ia->second != ib->second) return false;
      ++ia;
      ++ib;
    }
    return true;
  }

  /// DSL-compatible text, e.g. "1 - x + 3/2*x*y**2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (first) {
        if (neg) out += '-';
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      const bool unit_monomial = m.degree() == 0;
      if (mag != 1 || unit_monomial) {
        out += format_rational(mag);
        if (!unit_monomial) out += '*';
      }
      if (!unit_monomial) out += format_monomial(m);
    }
    return out;
  }

 private:
  static int check_cap(int cap) {
    if (cap < 0) throw std::invalid_argument("jet cap must be non-negative");
    return cap;
  }

  static Jet combine(const Jet& a, const Jet& b, bool subtract) {
    Jet out = zero(std::min(a.cap_, b.cap_));
    out.degenerate_ = a.degenerate_ || b.degenerate_;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    const auto ea = a.terms_.end();
    const auto eb = b.terms_.end();
    const int cap = out.cap_;
    MonomialOrder less;
    while (ia != ea || ib != eb) {
      if (ib == eb || (ia != ea && less(ia->first, ib->first))) {
        if (ia->first.degree() > cap) break;
        out.terms_.push_back(*ia++);
      } else if (ia == ea || less(ib->first, ia->first)) {
        if (ib->first.degree() > cap) break;
        out.terms_.emplace_back(ib->first, subtract ? Rational(-ib->second) : ib->second);
        ++ib;
      } else {
        if (ia->first.degree() > cap) break;
        Rational c = subtract ? Rational(ia->second - ib->second) : Rational(ia->second + ib->second);
        if (c != 0) out.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  friend Jet partial(const Jet& a, Axis axis);

  int cap_ = exact;
  bool degenerate_ = false;
  std::vector<Term> terms_;
};

/// Formal partial derivative. The result is trustworthy one order lower.
inline Jet partial(const Jet& a, Axis axis) {
  if (a.cap_ == 0 || a.degenerate_) return Jet::degenerate();
  Jet out = Jet::zero(a.cap_ == Jet::exact ? Jet::exact : a.cap_ - 1);
  const int k = static_cast<int>(axis);
  for (const auto& [m, c] : a.terms_) {
    if (m.exp[k] == 0) continue;
    Monomial dm = m;
    dm.exp[k] -= 1;
    if (dm.degree() > out.cap_) continue;
    out.terms_.emplace_back(dm, c * m.exp[k]);
  }
  // Lowering one exponent can reorder terms within a degree.
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Jet::Term& s, const Jet::Term& t) { return MonomialOrder{}(s.first, t.first); });
  return out;
}

/// Multiplicative inverse in the truncated ring; needs a nonzero constant term.
inline Jet inverse(const Jet& a) {
  const Rational c0 = a.constant_term();
  if (c0 == 0) throw std::domain_error("not a unit");
  const Rational inv0 = 1 / c0;
  // a = c0 (1 + n) with n nilpotent modulo the cap.
  const Jet n = inv0 * (a - Jet(c0, a.cap()));
  if (a.cap() == Jet::exact && !n.is_zero()) {
    throw std::domain_error("inverse of a non-constant jet needs a finite cap");
  }
  Jet sum(1, a.cap());
  Jet power(1, a.cap());
  for (int k = 1; !n.is_zero() && k <= a.cap(); ++k) {
    power = -(power * n);
    if (power.is_zero()) break;
    sum += power;
  }
  return inv0 * sum;
}

inline Rational eval(const Jet& a, const std::array<Rational, 3>& point) {
  Rational total = 0;
  for (const auto& [m, c] : a.terms()) {
    Rational v = c;
    for (int k = 0; k < 3; ++k) {
      for (int e = 0; e < m.exp[k]; ++e) v *= point[k];
    }
    total += v;
  }
  return total;
}

inline int min_cap(int a, int b) { return std::min(a, b); }

}  // namespace csbf
