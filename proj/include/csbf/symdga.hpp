#pragma once

// Instance-free identity prover.
//
// Expressions over the generators w0, w1, wt, a, chi are expanded into the
// free graded algebra on the letters below. w1 and wt are rewritten as
// w0 + a and w0 + t a before anything else happens, so every identity that
// relates the presentations becomes a statement about (w0, a). Traced
// polynomials are kept in graded-cyclic normal form: each word is replaced by
// its least rotation, picking up tr(AB) = (-1)^{|A||B|} tr(BA) along the way.
//
// A traced identity holds iff the normal form of lhs - rhs is empty.

#include <csbf/dsl.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csbf::sym {

/// Letters in canonical order: primitives first, then d-images, then
/// contractions with the vector field xi.
enum class Letter : unsigned char {
  a,
  chi,
  w0,
  w1,
  wt,
  da,
  dchi,
  dw0,
  dw1,
  dwt,
  ia,
  iw0,
  ida,
  idchi,
  idw0,
};

inline int letter_degree(Letter l) {
  switch (l) {
    case Letter::chi:
    case Letter::ia:
    case Letter::iw0:
    case Letter::idchi: return 0;
    case Letter::a:
    case Letter::w0:
    case Letter::w1:
    case Letter::wt:
    case Letter::dchi:
    case Letter::ida:
    case Letter::idw0: return 1;
    case Letter::da:
    case Letter::dw0:
    case Letter::dw1:
    case Letter::dwt: return 2;
  }
  return 0;
}

inline std::string letter_text(Letter l) {
  switch (l) {
    case Letter::a: return "a";
    case Letter::chi: return "chi";
    case Letter::w0: return "w0";
    case Letter::w1: return "w1";
    case Letter::wt: return "wt";
    case Letter::da: return "d(a)";
    case Letter::dchi: return "d(chi)";
    case Letter::dw0: return "d(w0)";
    case Letter::dw1: return "d(w1)";
    case Letter::dwt: return "d(wt)";
    case Letter::ia: return "ic(xi; a)";
    case Letter::iw0: return "ic(xi; w0)";
    case Letter::ida: return "ic(xi; d(a))";
    case Letter::idchi: return "ic(xi; d(chi))";
    case Letter::idw0: return "ic(xi; d(w0))";
  }
  return "?";
}

using Word = std::vector<Letter>;

inline int word_degree(const Word& w) {
  int d = 0;
  for (Letter l : w) d += letter_degree(l);
  return d;
}

class SymbolicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graded-cyclic canonical form of tr(w): the least rotation and the sign
/// collected on the way there. A word that rotates onto minus itself has
/// trace zero, signalled by sign 0.
inline std::pair<Word, int> cyclic_normalize(const Word& w) {
  if (w.empty()) throw SymbolicError("trace of a scalar (empty word)");
  const int total = word_degree(w);
  Word best = w;
  int best_sign = 1;
  Word cur = w;
  int sign = 1;
  bool self_annihilating = false;
  for (std::size_t r = 1; r < w.size(); ++r) {
    // tr(l R) = (-1)^{|l||R|} tr(R l)
    const int dl = letter_degree(cur.front());
    if ((dl * (total - dl)) % 2) sign = -sign;
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur == w && sign == -1) self_annihilating = true;
    if (cur < best) {
      best = cur;
      best_sign = sign;
    }
  }
  if (self_annihilating) return {best, 0};
  return {best, best_sign};
}

/// Rational combination of words, either inside one trace (traced) or as an
/// element of the free algebra. A zero literal adapts to whatever it is
/// combined with.
class WordPoly {
 public:
  WordPoly() = default;
  WordPoly(int degree, bool traced) : degree_(degree), traced_(traced) {}

  static WordPoly scalar(const Rational& c) {
    WordPoly p(0, false);
    p.add(Word{}, c);
    return p;
  }
  static WordPoly letter(Letter l) {
    WordPoly p(letter_degree(l), false);
    p.add(Word{l}, 1);
    return p;
  }
  static WordPoly zero_literal() {
    WordPoly p(0, false);
    p.zero_literal_ = true;
    return p;
  }

  int degree() const { return degree_; }
  bool traced() const { return traced_; }
  bool is_zero_literal() const { return zero_literal_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Rational>& terms() const { return terms_; }

  /// Degree-0 untraced polynomial made of the empty word only.
  std::optional<Rational> as_scalar() const {
    if (traced_ || degree_ != 0) return std::nullopt;
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
  }

  /// Adds c * w, canonicalizing w first if this polynomial is traced.
  void add(const Word& w, const Rational& c) {
    if (c == 0) return;
    if (!traced_) {
      bump(w, c);
      return;
    }
    auto [canon, sign] = cyclic_normalize(w);
    if (sign != 0) bump(canon, sign * c);
  }

  WordPoly scaled(const Rational& c) const {
    WordPoly p(degree_, traced_);
    if (c == 0) return p;
    for (const auto& [w, v] : terms_) p.terms_.emplace(w, c * v);
    return p;
  }

  /// Re-inserts every word, so a normal form maps to itself.
  WordPoly normalized() const {
    WordPoly p(degree_, traced_);
    for (const auto& [w, v] : terms_) p.add(w, v);
    return p;
  }

  std::string to_string() const;

 private:
  void bump(const Word& w, const Rational& c) {
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int degree_ = 0;
  bool traced_ = false;
  bool zero_literal_ = false;
  std::map<Word, Rational> terms_;
};

inline std::string word_text(const Word& w) {
  std::string s;
  for (Letter l : w) s += (s.empty() ? "" : " ^ ") + letter_text(l);
  return s;
}

/// DSL text of the polynomial, e.g. "-1/6*tr(a ^ a ^ a)".
inline std::string WordPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    const Rational mag = abs(c);
    std::string body = w.empty() ? "1" : traced_ ? "tr(" + word_text(w) + ")" : word_text(w);
    if (w.size() > 1 && !traced_ && mag != 1) body = "(" + body + ")";
    std::string term = mag == 1 ? body : w.empty() ? format_rational(mag) : format_rational(mag) + "*" + body;
    if (out.empty()) {
      out = c < 0 ? "-" + term : term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------- algebra

namespace detail {

inline void require_compatible(const WordPoly& a, const WordPoly& b, const char* what) {
  if (a.is_zero_literal() || b.is_zero_literal()) return;
  if (a.degree() != b.degree()) {
    throw SymbolicError(std::string("degree mismatch in ") + what + ": " + std::to_string(a.degree()) + " vs " +
                        std::to_string(b.degree()));
  }
  if (a.traced() != b.traced()) throw SymbolicError(std::string("cannot ") + what + " traced and untraced terms");
}

inline WordPoly combine(const WordPoly& a, const WordPoly& b, const Rational& sb) {
  require_compatible(a, b, "sum");
  const WordPoly& shape = a.is_zero_literal() ? b : a;
  WordPoly out(shape.degree(), shape.traced());
  for (const auto& [w, c] : a.terms()) out.add(w, c);
  for (const auto& [w, c] : b.terms()) out.add(w, sb * c);
  return out;
}

}  // namespace detail

inline WordPoly operator+(const WordPoly& a, const WordPoly& b) { return detail::combine(a, b, 1); }
inline WordPoly operator-(const WordPoly& a, const WordPoly& b) { return detail::combine(a, b, -1); }

/// Concatenation product. A traced factor may only be scaled by a number.
inline WordPoly product(const WordPoly& a, const WordPoly& b) {
  if (a.traced() || b.traced()) {
    if (auto s = a.as_scalar()) return b.scaled(*s);
    if (auto s = b.as_scalar()) return a.scaled(*s);
    throw SymbolicError("products of traces are not supported");
  }
  WordPoly out(a.degree() + b.degree(), false);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  return out;
}

/// Graded commutator [A, B] = AB - (-1)^{|A||B|} BA.
inline WordPoly graded_bracket(const WordPoly& a, const WordPoly& b) {
  const WordPoly ab = product(a, b), ba = product(b, a);
  return (a.degree() * b.degree()) % 2 ? ab + ba : ab - ba;
}

inline WordPoly trace(const WordPoly& p) {
  if (p.traced()) throw SymbolicError("nested trace");
  WordPoly out(p.degree(), true);
  for (const auto& [w, c] : p.terms()) out.add(w, c);
  return out;
}

namespace detail {

inline std::optional<Letter> d_letter(Letter l) {
  switch (l) {
    case Letter::a: return Letter::da;
    case Letter::chi: return Letter::dchi;
    case Letter::w0: return Letter::dw0;
    case Letter::w1: return Letter::dw1;
    case Letter::wt: return Letter::dwt;
    case Letter::da:
    case Letter::dchi:
    case Letter::dw0:
    case Letter::dw1:
    case Letter::dwt: return std::nullopt;
    default: throw SymbolicError("d of a contraction (" + letter_text(l) + ") is not supported");
  }
}

inline std::optional<Letter> i_letter(Letter l) {
  switch (l) {
    case Letter::a: return Letter::ia;
    case Letter::w0: return Letter::iw0;
    case Letter::da: return Letter::ida;
    case Letter::dchi: return Letter::idchi;
    case Letter::dw0: return Letter::idw0;
    case Letter::w1:
    case Letter::wt:
    case Letter::dw1:
    case Letter::dwt: throw SymbolicError("contraction of " + letter_text(l) + " before substitution");
    default: return std::nullopt;  // degree-0 letters
  }
}

/// Applies a letter-level map as a graded derivation of the given degree
/// (+1 for d, -1 for contraction).
template <class F>
WordPoly derivation(const WordPoly& p, int shift, F&& on_letter) {
  if (p.degree() + shift < 0) throw SymbolicError("cannot contract a 0-form");
  WordPoly out(p.degree() + shift, p.traced());
  for (const auto& [w, c] : p.terms()) {
    int passed = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (auto image = on_letter(w[i])) {
        Word nw = w;
        nw[i] = *image;
        out.add(nw, passed % 2 ? -c : c);
      }
      passed += letter_degree(w[i]);
    }
  }
  return out;
}

}  // namespace detail

/// Exterior derivative by the graded Leibniz rule; d of a d-image is zero.
inline WordPoly apply_d(const WordPoly& p) { return detail::derivation(p, 1, detail::d_letter); }

/// Interior product with xi, an antiderivation of degree -1.
inline WordPoly apply_contract(const WordPoly& p) { return detail::derivation(p, -1, detail::i_letter); }

// ---------------------------------------------------------------- expansion

struct Env {
  std::optional<Rational> t;
};

namespace detail {

inline WordPoly expand_impl(const dsl::Expr& e, const Env& env);

inline WordPoly connection_arg(const dsl::Expr& e, const Env& env) {
  WordPoly w = expand_impl(e, env);
  if (w.traced() || w.degree() != 1) throw SymbolicError("expected a connection (untraced 1-form)");
  return w;
}

inline WordPoly expand_impl(const dsl::Expr& e, const Env& env) {
  using dsl::Kind;
  auto arg = [&](int i) { return expand_impl(e->args[static_cast<std::size_t>(i)], env); };
  const auto t_value = [&]() -> Rational {
    if (!env.t) throw SymbolicError("parameter t has no value");
    return *env.t;
  };
  switch (e->kind) {
    case Kind::Symbol:
      if (e->name == "a") return WordPoly::letter(Letter::a);
      if (e->name == "chi") return WordPoly::letter(Letter::chi);
      if (e->name == "w0") return WordPoly::letter(Letter::w0);
      if (e->name == "w1") return WordPoly::letter(Letter::w0) + WordPoly::letter(Letter::a);
      if (e->name == "wt") return WordPoly::letter(Letter::w0) + WordPoly::letter(Letter::a).scaled(t_value());
      throw SymbolicError("symbol '" + e->name + "' has no symbolic meaning");
    case Kind::Number: return e->value == 0 ? WordPoly::zero_literal() : WordPoly::scalar(e->value);
    case Kind::Param: return WordPoly::scalar(t_value());
    case Kind::Coord:
    case Kind::Covector:
    case Kind::Basis:
      throw SymbolicError("concrete token '" + dsl::to_text(e) + "' is not allowed in a symbolic expression");
    case Kind::Neg: return arg(0).scaled(-1);
    case Kind::Add: return arg(0) + arg(1);
    case Kind::Sub: return arg(0) - arg(1);
    case Kind::Mul:
    case Kind::Wedge: return product(arg(0), arg(1));
    case Kind::Bracket: return graded_bracket(arg(0), arg(1));
    case Kind::Ext: return apply_d(arg(0));
    case Kind::Cov: {
      // D(w; b) = db + w b - (-1)^{|b|} b w
      const WordPoly w = connection_arg(e->args[0], env);
      const WordPoly b = arg(1);
      return apply_d(b) + graded_bracket(w, b);
    }
    case Kind::Curv: {
      const WordPoly w = connection_arg(e->args[0], env);
      return apply_d(w) + product(w, w);
    }
    case Kind::Trace: return trace(arg(0));
    case Kind::Contract: return apply_contract(arg(0));
  }
  return {};
}

}  // namespace detail

/// Fully expanded normal form of e. Errors name the offending subterm.
inline WordPoly expand(const dsl::Expr& e, const Env& env = {}) {
  try {
    return detail::expand_impl(e, env);
  } catch (const SymbolicError& err) {
    const std::string what = err.what();
    if (what.find(" in `") != std::string::npos) throw;
    throw SymbolicError(what + " in `" + dsl::to_text(e) + "`");
  }
}

struct Verdict {
  bool pass = false;
  WordPoly difference;  // lhs - rhs, empty on PASS
  std::string certificate() const { return difference.to_string(); }
};

/// PASS iff expand(lhs) - expand(rhs) normalizes to the empty polynomial.
inline Verdict verify_identity(const dsl::Expr& lhs, const dsl::Expr& rhs, const Env& env = {}) {
  const WordPoly diff = expand(lhs, env) - expand(rhs, env);
  return {diff.is_zero(), diff};
}

/// Checks a chain e0 == e1 == ... pairwise; reports the first failing link.
inline Verdict verify_chain(const std::vector<dsl::Expr>& chain, const Env& env = {}) {
  if (chain.size() < 2) throw SymbolicError("an identity needs at least two sides");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    Verdict v = verify_identity(chain[i], chain[i + 1], env);
    if (!v.pass) return v;
  }
  return {true, WordPoly()};
}

}  // namespace csbf::sym
