#pragma once

// Expression language for identities, scenarios and connection data.
//
// The grammar is published in docs/grammar.md. In short:
//
//   expr    = term { ("+" | "-") term }
//   term    = "-" term | wedge
//   wedge   = product { "^" product }
//   product = atom { "*" atom }
//
// so scalar multiplication binds tighter than the wedge, which binds tighter
// than unary minus, which binds tighter than addition. Every derivative-like
// operator is a call with mandatory parentheses: d(.), F(.), tr(.), D(w; a),
// ic(xi; a).

#include <csbf/forms.hpp>

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace csbf::dsl {

struct Position {
  int line = 1;
  int column = 1;
};

inline std::string format_position(Position p) { return std::to_string(p.line) + ":" + std::to_string(p.column); }

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, Position where)
      : std::runtime_error(what + " at " + format_position(where)), where_(where) {}
  Position where() const { return where_; }

 private:
  Position where_;
};

enum class Kind {
  Symbol,    // w0, a, chi, user-declared names
  Number,    // non-negative rational literal
  Param,     // t
  Coord,     // x, y**2
  Covector,  // dx, dy, dz
  Basis,     // Lie algebra basis name
  Neg,
  Add,
  Sub,
  Mul,
  Wedge,
  Bracket,   // [A, B]
  Ext,       // d(A)
  Cov,       // D(w; A)
  Curv,      // F(w)
  Trace,     // tr(A)
  Contract,  // ic(xi; A)
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;     // Symbol, Basis, Contract (vector name)
  Rational value;       // Number
  Axis axis = Axis::x;  // Coord
  int power = 1;        // Coord
  Covector covector = 0;
  std::vector<Expr> args;
  Position pos;
};

// ---------------------------------------------------------------- builders

inline Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

inline Expr symbol(std::string name, Position p = {}) { return make({Kind::Symbol, std::move(name), 0, Axis::x, 1, 0, {}, p}); }
inline Expr number(Rational v, Position p = {}) {
  v.canonicalize();
  if (v < 0) throw std::invalid_argument("number literals are non-negative; use unary minus");
  return make({Kind::Number, "", std::move(v), Axis::x, 1, 0, {}, p});
}
inline Expr param(Position p = {}) { return make({Kind::Param, "t", 0, Axis::x, 1, 0, {}, p}); }
inline Expr coord(Axis a, int power = 1, Position p = {}) {
  if (power < 1) throw std::invalid_argument("coordinate powers start at 1");
  return make({Kind::Coord, "", 0, a, power, 0, {}, p});
}
inline Expr covector(Covector c, Position p = {}) { return make({Kind::Covector, "", 0, Axis::x, 1, c, {}, p}); }
inline Expr basis(std::string name, Position p = {}) { return make({Kind::Basis, std::move(name), 0, Axis::x, 1, 0, {}, p}); }
inline Expr unary(Kind k, Expr a, Position p = {}) { return make({k, "", 0, Axis::x, 1, 0, {std::move(a)}, p}); }
inline Expr binary(Kind k, Expr a, Expr b, Position p = {}) {
  return make({k, "", 0, Axis::x, 1, 0, {std::move(a), std::move(b)}, p});
}
inline Expr contraction(std::string xi, Expr a, Position p = {}) {
  return make({Kind::Contract, std::move(xi), 0, Axis::x, 1, 0, {std::move(a)}, p});
}

/// Structural equality; source positions are ignored.
inline bool same(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->name != b->name || a->value != b->value || a->axis != b->axis ||
      a->power != b->power || a->covector != b->covector || a->args.size() != b->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!same(a->args[i], b->args[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------- printing

namespace detail {

inline int level(const Expr& e) {
  switch (e->kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Neg: return 2;
    case Kind::Wedge: return 3;
    case Kind::Mul: return 4;
    default: return 5;
  }
}

inline std::string print(const Expr& e);

inline std::string wrap(const Expr& e, bool parens) { return parens ? "(" + print(e) + ")" : print(e); }

inline std::string print_binary(const Expr& e, const char* op) {
  const int l = level(e);
  return wrap(e->args[0], level(e->args[0]) < l) + op + wrap(e->args[1], level(e->args[1]) <= l);
}

inline std::string print(const Expr& e) {
  switch (e->kind) {
    case Kind::Symbol:
    case Kind::Basis: return e->name;
    case Kind::Number: return format_rational(e->value);
    case Kind::Param: return "t";
    case Kind::Coord: {
      std::string s(1, axis_name(e->axis));
      return e->power == 1 ? s : s + "**" + std::to_string(e->power);
    }
    case Kind::Covector: return covector_name(e->covector);
    case Kind::Neg: return "-" + wrap(e->args[0], level(e->args[0]) < 2);
    case Kind::Add: return print_binary(e, " + ");
    case Kind::Sub: return print_binary(e, " - ");
    case Kind::Mul: return print_binary(e, "*");
    case Kind::Wedge: return print_binary(e, " ^ ");
    case Kind::Bracket: return "[" + print(e->args[0]) + ", " + print(e->args[1]) + "]";
    case Kind::Ext: return "d(" + print(e->args[0]) + ")";
    case Kind::Cov: return "D(" + print(e->args[0]) + "; " + print(e->args[1]) + ")";
    case Kind::Curv: return "F(" + print(e->args[0]) + ")";
    case Kind::Trace: return "tr(" + print(e->args[0]) + ")";
    case Kind::Contract: return "ic(" + e->name + "; " + print(e->args[0]) + ")";
  }
  return "?";
}

}  // namespace detail

/// Canonical text; parse(to_text(e)) is structurally equal to e.
inline std::string to_text(const Expr& e) { return detail::print(e); }

// ---------------------------------------------------------------- context

/// What names mean while parsing: form symbols with their degrees, vector
/// field names, and (for concrete input) the Lie basis names.
struct Context {
  std::map<std::string, int> forms;
  std::set<std::string> vectors;
  std::vector<std::string> basis_names;
  bool concrete = false;  // allow x, y, z, dx, dy, dz and basis names

  bool is_basis(const std::string& s) const {
    for (const auto& b : basis_names)
      if (b == s) return true;
    return false;
  }
};

/// w0, w1, wt, a (1-forms), chi (0-form) and the vector field xi.
inline Context symbolic_context() {
  Context c;
  c.forms = {{"w0", 1}, {"w1", 1}, {"wt", 1}, {"a", 1}, {"chi", 0}};
  c.vectors = {"xi"};
  return c;
}

inline bool is_reserved(const std::string& s) {
  static const std::set<std::string> words{"d", "D", "F", "tr", "ic", "t", "x", "y", "z", "dx", "dy", "dz"};
  return words.count(s) > 0;
}

// ---------------------------------------------------------------- degrees

/// Form degree of a well-formed expression under ctx; throws ParseError on
/// mismatches (reporting both inferred degrees).
inline int degree_of(const Expr& e, const Context& ctx) {
  auto deg = [&](int i) { return degree_of(e->args[static_cast<std::size_t>(i)], ctx); };
  switch (e->kind) {
    case Kind::Symbol: {
      auto it = ctx.forms.find(e->name);
      if (it == ctx.forms.end()) {
        if (ctx.vectors.count(e->name)) throw ParseError("vector field '" + e->name + "' used outside ic(..)", e->pos);
        throw ParseError("unknown symbol '" + e->name + "'", e->pos);
      }
      return it->second;
    }
    case Kind::Number:
    case Kind::Param:
    case Kind::Coord:
    case Kind::Basis: return 0;
    case Kind::Covector: return 1;
    case Kind::Neg:
    case Kind::Trace: return deg(0);
    case Kind::Add:
    case Kind::Sub: {
      const int l = deg(0), r = deg(1);
      const bool zero_l = e->args[0]->kind == Kind::Number && e->args[0]->value == 0;
      const bool zero_r = e->args[1]->kind == Kind::Number && e->args[1]->value == 0;
      if (l != r && !zero_l && !zero_r) {
        throw ParseError("degree mismatch: left side has degree " + std::to_string(l) + ", right side has degree " +
                             std::to_string(r),
                         e->pos);
      }
      return zero_l ? r : l;
    }
    case Kind::Mul: {
      const int l = deg(0), r = deg(1);
      if (l != 0 && r != 0) {
        throw ParseError("'*' needs a degree-0 factor, got degrees " + std::to_string(l) + " and " + std::to_string(r),
                         e->pos);
      }
      return l + r;
    }
    case Kind::Wedge:
    case Kind::Bracket: return deg(0) + deg(1);
    case Kind::Ext: return deg(0) + 1;
    case Kind::Curv:
    case Kind::Cov: {
      const int w = deg(0);
      if (w != 1) throw ParseError("a connection must have degree 1, got degree " + std::to_string(w), e->args[0]->pos);
      return e->kind == Kind::Curv ? 2 : deg(1) + 1;
    }
    case Kind::Contract: {
      if (!ctx.vectors.count(e->name)) throw ParseError("unknown vector field '" + e->name + "'", e->pos);
      const int a = deg(0);
      if (a == 0) throw ParseError("cannot contract a vector field with a 0-form", e->pos);
      return a - 1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------- lexing

namespace detail {

enum class Tok { Number, Ident, Pow, Star, Caret, Plus, Minus, LParen, RParen, LBrack, RBrack, Comma, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  Position pos;
};

inline std::string describe(Tok k) {
  switch (k) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Pow: return "'**'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> lex(std::string_view src, Position start) {
  std::vector<Token> out;
  Position p = start;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const Position at = p;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), at});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), at});
      advance(j - i);
      continue;
    }
    if (c == '*' && i + 1 < src.size() && src[i + 1] == '*') {
      out.push_back({Tok::Pow, "**", at});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
    out.push_back({k, std::string(1, c), at});
    advance(1);
  }
  out.push_back({Tok::End, "", p});
  return out;
}

/// Delimiter balance is checked before parsing so that a missing closer is
/// reported as such rather than as whatever token happens to follow.
inline void check_balance(const std::vector<Token>& toks) {
  std::vector<const Token*> open;
  for (const auto& t : toks) {
    if (t.kind == Tok::LParen || t.kind == Tok::LBrack) {
      open.push_back(&t);
    } else if (t.kind == Tok::RParen || t.kind == Tok::RBrack) {
      const Tok want = t.kind == Tok::RParen ? Tok::LParen : Tok::LBrack;
      if (open.empty() || open.back()->kind != want) {
        throw ParseError(t.kind == Tok::RParen ? "unbalanced parenthesis" : "unbalanced bracket", t.pos);
      }
      open.pop_back();
    } else if (t.kind == Tok::End && !open.empty()) {
      throw ParseError(open.back()->kind == Tok::LParen ? "unbalanced parenthesis" : "unbalanced bracket", t.pos);
    }
  }
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Context& ctx) : toks_(std::move(toks)), ctx_(ctx) {}

  Expr parse_all() {
    Expr e = expr();
    expect(Tok::End, {Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star, Tok::End});
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void unexpected(std::initializer_list<Tok> expected) const {
    const Token& t = peek();
    std::string msg = t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'";
    std::string set;
    for (Tok k : expected) set += (set.empty() ? "" : ", ") + describe(k);
    throw ParseError(msg + " (expected " + set + ")", t.pos);
  }

  const Token& expect(Tok k, std::initializer_list<Tok> expected) {
    if (!at(k)) unexpected(expected);
    return take();
  }

  Expr expr() {
    Expr e = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Token& op = take();
      e = binary(op.kind == Tok::Plus ? Kind::Add : Kind::Sub, e, term(), op.pos);
    }
    return e;
  }

  Expr term() {
    if (at(Tok::Minus)) {
      const Position p = take().pos;
      return unary(Kind::Neg, term(), p);
    }
    return wedge();
  }

  Expr wedge() {
    Expr e = product();
    while (at(Tok::Caret)) {
      const Position p = take().pos;
      e = binary(Kind::Wedge, e, product(), p);
    }
    return e;
  }

  Expr product() {
    Expr e = atom();
    while (at(Tok::Star)) {
      const Position p = take().pos;
      e = binary(Kind::Mul, e, atom(), p);
    }
    return e;
  }

  Expr call_arg() {
    expect(Tok::LParen, {Tok::LParen});
    Expr e = expr();
    expect(Tok::RParen, {Tok::RParen, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
    return e;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        const auto slash = t.text.find('/');
        if (slash != std::string::npos && t.text.find_first_not_of('0', slash + 1) == std::string::npos) {
          throw ParseError("zero denominator in '" + t.text + "'", t.pos);
        }
        return number(parse_rational(t.text), t.pos);
      }
      case Tok::LParen: {
        take();
        Expr e = expr();
        expect(Tok::RParen, {Tok::RParen, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
        return e;
      }
      case Tok::LBrack: {
        take();
        Expr a = expr();
        expect(Tok::Comma, {Tok::Comma, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
        Expr b = expr();
        expect(Tok::RBrack, {Tok::RBrack, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
        return binary(Kind::Bracket, a, b, t.pos);
      }
      case Tok::Ident: return identifier();
      default: unexpected({Tok::Number, Tok::Ident, Tok::LParen, Tok::LBrack, Tok::Minus});
    }
  }

  Expr identifier() {
    const Token t = take();
    const std::string& s = t.text;
    if (s == "d" || s == "F" || s == "tr") {
      if (!at(Tok::LParen)) unexpected({Tok::LParen});
      const Kind k = s == "d" ? Kind::Ext : s == "F" ? Kind::Curv : Kind::Trace;
      return unary(k, call_arg(), t.pos);
    }
    if (s == "D") {
      expect(Tok::LParen, {Tok::LParen});
      Expr w = expr();
      expect(Tok::Semi, {Tok::Semi, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
      Expr a = expr();
      expect(Tok::RParen, {Tok::RParen, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
      return binary(Kind::Cov, w, a, t.pos);
    }
    if (s == "ic") {
      expect(Tok::LParen, {Tok::LParen});
      const Token& xi = expect(Tok::Ident, {Tok::Ident});
      if (!ctx_.vectors.count(xi.text)) throw ParseError("unknown vector field '" + xi.text + "'", xi.pos);
      expect(Tok::Semi, {Tok::Semi});
      Expr a = expr();
      expect(Tok::RParen, {Tok::RParen, Tok::Plus, Tok::Minus, Tok::Caret, Tok::Star});
      return contraction(xi.text, a, t.pos);
    }
    if (s == "t") return param(t.pos);
    if (ctx_.concrete) {
      if (s == "x" || s == "y" || s == "z") {
        const Axis a = s == "x" ? Axis::x : s == "y" ? Axis::y : Axis::z;
        int power = 1;
        if (at(Tok::Pow)) {
          take();
          const Token& n = expect(Tok::Number, {Tok::Number});
          power = n.text.find('/') == std::string::npos && n.text.size() <= 4 ? std::stoi(n.text) : 0;
          if (power < 1) throw ParseError("exponent must be a positive integer", n.pos);
        }
        return coord(a, power, t.pos);
      }
      if (s == "dx") return covector(dx, t.pos);
      if (s == "dy") return covector(dy, t.pos);
      if (s == "dz") return covector(dz, t.pos);
      if (ctx_.is_basis(s)) return basis(s, t.pos);
    }
    if (ctx_.forms.count(s)) return symbol(s, t.pos);
    throw ParseError("unknown symbol '" + s + "'", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const Context& ctx_;
};

}  // namespace detail

/// Parses and degree-checks src. `start` is the position of src's first
/// character, so that diagnostics point into the enclosing file.
inline Expr parse(std::string_view src, const Context& ctx, Position start = {}) {
  auto toks = detail::lex(src, start);
  detail::check_balance(toks);
  Expr e = detail::Parser(std::move(toks), ctx).parse_all();
  degree_of(e, ctx);
  return e;
}

}  // namespace csbf::dsl
