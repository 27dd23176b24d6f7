#pragma once

// Exact rational scalars. Everything in the library is computed over Q.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace csbf {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

/// Lowest-terms "p/q" (or "p" when q = 1).
inline std::string format_rational(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace csbf
