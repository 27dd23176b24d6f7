#pragma once

// Matrix Lie algebras over the jet ring.

#include <csbf/jet.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace csbf {

/// Constant square matrix over Q, row-major.
struct RationalMatrix {
  int size = 0;
  std::vector<Rational> a;

  RationalMatrix() = default;
  explicit RationalMatrix(int n) : size(n), a(static_cast<std::size_t>(n * n)) {}
  RationalMatrix(int n, std::initializer_list<Rational> values) : size(n), a(values) {
    if (a.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("wrong number of matrix entries");
  }

  static RationalMatrix identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i * size + j)]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * size + j)]; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    RationalMatrix r(x.size);
    for (int i = 0; i < x.size; ++i)
      for (int k = 0; k < x.size; ++k) {
        if (x(i, k) == 0) continue;
        for (int j = 0; j < x.size; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend RationalMatrix operator-(const RationalMatrix& x, const RationalMatrix& y) {
    RationalMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
  }
  friend RationalMatrix operator+(const RationalMatrix& x, const RationalMatrix& y) {
    RationalMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
  }
  friend RationalMatrix operator*(const Rational& c, const RationalMatrix& x) {
    RationalMatrix r = x;
    for (auto& v : r.a) v *= c;
    return r;
  }

  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v == 0; });
  }
};

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<RationalMatrix> invert(const RationalMatrix& m) {
  const int n = m.size;
  RationalMatrix work = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && work(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational scale = 1 / work(col, col);
    for (int j = 0; j < n; ++j) {
      work(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || work(i, col) == 0) continue;
      const Rational f = work(i, col);
      for (int j = 0; j < n; ++j) {
        work(i, j) -= f * work(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Rank of a list of vectors (rows) over Q.
inline int rank_of(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto r = static_cast<std::size_t>(rank);
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++rank;
  }
  return rank;
}

/// Square matrix of jets; an element of (Lie algebra) (x) (jet ring).
class LieMatrix {
 public:
  LieMatrix() = default;

  /// Zero matrix.
  LieMatrix(int size, int cap) : size_(size), cap_(cap), entries_(static_cast<std::size_t>(size * size), Jet::zero(cap)) {
    if (size <= 0) throw std::invalid_argument("matrix size must be positive");
  }

  /// Entries are truncated to their common (minimum) cap.
  LieMatrix(int size, std::vector<Jet> entries) : size_(size), entries_(std::move(entries)) {
    if (size <= 0 || entries_.size() != static_cast<std::size_t>(size * size)) {
      throw std::invalid_argument("LieMatrix needs size*size entries");
    }
    cap_ = Jet::exact;
    for (const auto& e : entries_) cap_ = std::min(cap_, e.cap());
    for (auto& e : entries_) {
      if (e.cap() != cap_) e = e.truncated(cap_);
    }
  }

  static LieMatrix constant(const RationalMatrix& m, int cap = Jet::exact) {
    std::vector<Jet> e;
    e.reserve(m.a.size());
    for (const auto& v : m.a) e.emplace_back(v, cap);
    return LieMatrix(m.size, std::move(e));
  }

  static LieMatrix identity(int size, int cap = Jet::exact) { return constant(RationalMatrix::identity(size), cap); }

  /// f times the identity.
  static LieMatrix scalar(int size, const Jet& f) {
    LieMatrix m(size, f.cap());
    for (int i = 0; i < size; ++i) m.at(i, i) = f;
    return m;
  }

  int size() const { return size_; }
  int cap() const { return cap_; }
  const Jet& operator()(int i, int j) const { return entries_[index(i, j)]; }
  const std::vector<Jet>& entries() const { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Jet& j) { return j.is_zero(); });
  }

  LieMatrix truncated(int cap) const {
    LieMatrix m = *this;
    for (auto& e : m.entries_) e = e.truncated(cap);
    m.cap_ = std::min(cap_, cap);
    return m;
  }

  /// Constant (degree-0) part of every entry.
  RationalMatrix constant_part() const {
    RationalMatrix m(size_);
    for (std::size_t i = 0; i < entries_.size(); ++i) m.a[i] = entries_[i].constant_term();
    return m;
  }

  LieMatrix operator-() const {
    LieMatrix m = *this;
    for (auto& e : m.entries_) e = -e;
    return m;
  }

  friend LieMatrix operator+(const LieMatrix& x, const LieMatrix& y) { return zip(x, y, false); }
  friend LieMatrix operator-(const LieMatrix& x, const LieMatrix& y) { return zip(x, y, true); }
  LieMatrix& operator+=(const LieMatrix& o) { return *this = *this + o; }
  LieMatrix& operator-=(const LieMatrix& o) { return *this = *this - o; }

  friend LieMatrix operator*(const Rational& c, const LieMatrix& x) {
    LieMatrix m = x;
    for (auto& e : m.entries_) e = c * e;
    return m;
  }

  friend LieMatrix operator*(const Jet& f, const LieMatrix& x) {
    LieMatrix m = x;
    m.cap_ = std::min(x.cap_, f.cap());
    for (auto& e : m.entries_) e = f * e;
    return m;
  }

  friend LieMatrix operator*(const LieMatrix& x, const LieMatrix& y) {
    require_same_size(x, y);
    const int n = x.size_;
    LieMatrix r(n, std::min(x.cap_, y.cap_));
    std::vector<Jet::Factors> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        pairs.clear();
        for (int k = 0; k < n; ++k) {
          if (!x(i, k).is_zero() && !y(k, j).is_zero()) pairs.emplace_back(&x(i, k), &y(k, j));
        }
        r.at(i, j) = Jet::sum_of_products(pairs, r.cap_);
      }
    return r;
  }

  /// Equality of all entries up to the lower cap.
  friend bool operator==(const LieMatrix& x, const LieMatrix& y) {
    return equal_to_order(x, y, std::min(x.cap_, y.cap_));
  }

  friend bool equal_to_order(const LieMatrix& x, const LieMatrix& y, int order) {
    if (x.size_ != y.size_) return false;
    for (std::size_t i = 0; i < x.entries_.size(); ++i) {
      if (!equal_to_order(x.entries_[i], y.entries_[i], order)) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string out = "[";
    for (int i = 0; i < size_; ++i) {
      out += i ? ", [" : "[";
      for (int j = 0; j < size_; ++j) {
        if (j) out += ", ";
        out += (*this)(i, j).to_string();
      }
      out += "]";
    }
    return out + "]";
  }

  Jet& at(int i, int j) { return entries_[index(i, j)]; }

  static void require_same_size(const LieMatrix& x, const LieMatrix& y) {
    if (x.size_ != y.size_) {
      throw std::invalid_argument("matrix size mismatch: " + std::to_string(x.size_) + " vs " +
                                  std::to_string(y.size_));
    }
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * size_ + j); }

  static LieMatrix zip(const LieMatrix& x, const LieMatrix& y, bool subtract) {
    require_same_size(x, y);
    LieMatrix r(x.size_, std::min(x.cap_, y.cap_));
    for (std::size_t i = 0; i < r.entries_.size(); ++i) {
      r.entries_[i] = subtract ? x.entries_[i] - y.entries_[i] : x.entries_[i] + y.entries_[i];
    }
    return r;
  }

  int size_ = 1;
  int cap_ = Jet::exact;
  std::vector<Jet> entries_{Jet()};
};

/// XY - YX.
inline LieMatrix bracket(const LieMatrix& x, const LieMatrix& y) { return x * y - y * x; }

inline Jet trace(const LieMatrix& x) {
  Jet t = Jet::zero(x.cap());
  for (int i = 0; i < x.size(); ++i) t += x(i, i);
  return t;
}

/// tr(XY) in the defining representation, computed from the diagonal only.
inline Jet trace_form(const LieMatrix& x, const LieMatrix& y) {
  LieMatrix::require_same_size(x, y);
  Jet t = Jet::zero(std::min(x.cap(), y.cap()));
  for (int i = 0; i < x.size(); ++i)
    for (int k = 0; k < x.size(); ++k) {
      if (x(i, k).is_zero() || y(k, i).is_zero()) continue;
      t += x(i, k) * y(k, i);
    }
  return t;
}

struct LieAlgebraSpec {
  std::string name;
  int matrix_size = 0;
  std::vector<RationalMatrix> basis;
  std::vector<std::string> basis_names;

  int dim() const { return static_cast<int>(basis.size()); }

  std::optional<int> basis_index(std::string_view label) const {
    for (std::size_t i = 0; i < basis_names.size(); ++i) {
      if (basis_names[i] == label) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  /// Coordinates of m in the basis, or nullopt if m is outside the span.
  std::optional<std::vector<Rational>> decompose(const RationalMatrix& m) const {
    // Solve sum c_a B_a = m by elimination on the augmented system.
    const std::size_t d = basis.size();
    const std::size_t rows = m.a.size();
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(d + 1));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < d; ++c) aug[r][c] = basis[c].a[r];
      aug[r][d] = m.a[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < d && rank < rows; ++c) {
      std::size_t p = rank;
      while (p < rows && aug[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(aug[p], aug[rank]);
      const Rational s = 1 / aug[rank][c];
      for (auto& v : aug[rank]) v *= s;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank || aug[r][c] == 0) continue;
        const Rational f = aug[r][c];
        for (std::size_t j = 0; j <= d; ++j) aug[r][j] -= f * aug[rank][j];
      }
      pivot_col.push_back(c);
      ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r) {
      if (aug[r][d] != 0) return std::nullopt;
    }
    std::vector<Rational> coeffs(d);
    for (std::size_t r = 0; r < rank; ++r) coeffs[pivot_col[r]] = aug[r][d];
    return coeffs;
  }

  /// Checks linear independence, closure under the bracket and Jacobi on the basis.
  /// Returns an empty string when everything holds, otherwise the first failure.
  std::string validate() const {
    std::vector<std::vector<Rational>> rows;
    for (const auto& b : basis) {
      if (b.size != matrix_size) return "basis element has the wrong size";
      rows.push_back(b.a);
    }
    if (rank_of(rows) != dim()) return "basis is linearly dependent";
    auto br = [](const RationalMatrix& x, const RationalMatrix& y) { return x * y - y * x; };
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) {
        if (!decompose(br(basis[i], basis[j]))) {
          return "bracket of " + basis_names[i] + " and " + basis_names[j] + " leaves the span";
        }
        for (int k = 0; k < dim(); ++k) {
          const auto& x = basis[i];
          const auto& y = basis[j];
          const auto& z = basis[k];
          if (!(br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))).is_zero()) {
            return "Jacobi fails on " + basis_names[i] + ", " + basis_names[j] + ", " + basis_names[k];
          }
        }
      }
    return {};
  }
};

/// sl(2) in the fundamental representation: E, F_ (F is taken by curvature), H.
inline const LieAlgebraSpec& sl2() {
  static const LieAlgebraSpec spec{
      "sl2",
      2,
      {RationalMatrix(2, {0, 1, 0, 0}), RationalMatrix(2, {0, 0, 1, 0}), RationalMatrix(2, {1, 0, 0, -1})},
      {"E", "F_", "H"}};
  return spec;
}

/// sl(3) in the fundamental representation: elementary off-diagonal matrices
/// plus two traceless diagonals.
inline const LieAlgebraSpec& sl3() {
  static const LieAlgebraSpec spec = [] {
    LieAlgebraSpec s;
    s.name = "sl3";
    s.matrix_size = 3;
    auto unit = [](int i, int j) {
      RationalMatrix m(3);
      m(i, j) = 1;
      return m;
    };
    const std::pair<int, int> raising[] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto [i, j] : raising) {
      s.basis.push_back(unit(i, j));
      s.basis_names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
    for (auto [i, j] : raising) {
      s.basis.push_back(unit(j, i));
      s.basis_names.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1));
    }
    s.basis.push_back(RationalMatrix(3, {1, 0, 0, 0, -1, 0, 0, 0, 0}));
    s.basis_names.push_back("H1");
    s.basis.push_back(RationalMatrix(3, {0, 0, 0, 0, 1, 0, 0, 0, -1}));
    s.basis_names.push_back("H2");
    return s;
  }();
  return spec;
}

inline const LieAlgebraSpec& algebra_by_name(std::string_view name) {
  if (name == "sl2") return sl2();
  if (name == "sl3") return sl3();
  throw std::invalid_argument("unknown algebra '" + std::string(name) + "' (expected sl2 or sl3)");
}

/// sum_a coeffs[a] * basis[a].
inline LieMatrix from_coefficients(const LieAlgebraSpec& spec, const std::vector<Jet>& coeffs) {
  if (static_cast<int>(coeffs.size()) != spec.dim()) {
    throw std::invalid_argument("expected " + std::to_string(spec.dim()) + " coefficients for " + spec.name +
                                ", got " + std::to_string(coeffs.size()));
  }
  int cap = Jet::exact;
  for (const auto& c : coeffs) cap = std::min(cap, c.cap());
  const int n = spec.matrix_size;
  std::vector<Jet> entries(static_cast<std::size_t>(n * n), Jet::zero(cap));
  for (int a = 0; a < spec.dim(); ++a) {
    if (coeffs[a].is_zero()) continue;
    const auto& b = spec.basis[a];
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (b.a[i] != 0) entries[i] += b.a[i] * coeffs[a];
    }
  }
  return LieMatrix(n, std::move(entries));
}

inline LieMatrix basis_element(const LieAlgebraSpec& spec, int index, int cap = Jet::exact) {
  return LieMatrix::constant(spec.basis.at(index), cap);
}

}  // namespace csbf
