#pragma once

// Seeded generators for randomized instances.
//
// Coefficients are rationals p/q with p in [-3, 3] and q in {1, 2, 3}; each
// admissible monomial is present with probability 1/2. Only the raw 64-bit
// output of mt19937_64 is used (it is fully specified by the standard), so a
// seed reproduces the same instances on every platform.

#include <csbf/gauge.hpp>

#include <cstdint>
#include <random>

namespace csbf {

class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return next() & 1u; }

  Rational coefficient() {
    Rational r(uniform(-3, 3), uniform(1, 3));
    r.canonicalize();
    return r;
  }

  Rational nonzero_coefficient() {
    Rational r;
    do {
      r = coefficient();
    } while (r == 0);
    return r;
  }

  /// Random jet at the given cap; min_degree = 1 gives zero constant term.
  Jet jet(int cap, int min_degree = 0) {
    std::map<Monomial, Rational, MonomialOrder> terms;
    for (int d = min_degree; d <= cap; ++d)
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) {
          if (!coin()) continue;
          terms[Monomial{{i, j, d - i - j}}] = coefficient();
        }
    return Jet::from_terms(terms, cap);
  }

  /// Jet with a nonzero constant term.
  Jet unit_jet(int cap) { return Jet(nonzero_coefficient(), cap) + jet(cap, 1); }

  LieMatrix lie(const LieAlgebraSpec& spec, int cap, int min_degree = 0) {
    std::vector<Jet> coeffs;
    for (int a = 0; a < spec.dim(); ++a) coeffs.push_back(jet(cap, min_degree));
    return from_coefficients(spec, coeffs);
  }

  GForm form(const LieAlgebraSpec& spec, int degree, int cap) {
    GForm f(degree, spec.matrix_size, cap);
    for (Covector c = 0; c < 8; ++c) {
      if (covector_degree(c) == degree) f.accumulate(c, lie(spec, cap));
    }
    return f;
  }

  ScalarForm scalar_form(int degree, int cap) {
    ScalarForm f(degree, 1, cap);
    for (Covector c = 0; c < 8; ++c) {
      if (covector_degree(c) == degree) f.accumulate(c, jet(cap));
    }
    return f;
  }

  Connection connection(const LieAlgebraSpec& spec, int cap) { return Connection(form(spec, 1, cap)); }

  /// I + N with N Lie-algebra valued and vanishing at the origin.
  GroupJet group_element(const LieAlgebraSpec& spec, int cap) {
    return GroupJet(LieMatrix::identity(spec.matrix_size, cap) + lie(spec, cap, 1));
  }

  VectorField vector_field(int cap) { return VectorField(jet(cap), jet(cap), jet(cap)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace csbf
