#include "ppnfifo/presburger/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "ppnfifo/errors.hpp"

namespace ppnfifo::presburger {

namespace {

// ---------------------------------------------------------------------------
// Tokens

struct Token {
  enum Kind { Number, Ident, Symbol, End } kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view s) {
  static const char* const two_char[] = {"->", "<=", ">=", "==", "!=", "&&", "||"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Token::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    bool matched = false;
    for (const char* op : two_char) {
      if (s.substr(i, 2) == op) {
        out.push_back({Token::Symbol, op, start});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("{}[](),:<>=+-*").find(c) == std::string_view::npos) {
      throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i));
    }
    out.push_back({Token::Symbol, std::string(1, c), start});
    ++i;
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Name-level affine forms, resolved to columns once the space is known.

struct Lin {
  std::map<std::string, Integer> terms;
  Integer constant = 0;

  bool is_constant() const { return terms.empty(); }

  Lin& operator+=(const Lin& o) {
    for (const auto& [n, c] : o.terms) {
      auto& t = terms[n];
      t += c;
      if (t == 0) terms.erase(n);
    }
    constant += o.constant;
    return *this;
  }
  Lin& operator*=(const Integer& k) {
    if (k == 0) {
      terms.clear();
      constant = 0;
      return *this;
    }
    for (auto& [n, c] : terms) c *= k;
    constant *= k;
    return *this;
  }
  Lin operator-() const {
    Lin r = *this;
    r *= Integer(-1);
    return r;
  }
  friend Lin operator-(Lin a, const Lin& b) { return a += -b; }
};

struct Atom {
  Lin lin;  // lin >= 0 or lin == 0
  ConstraintKind kind;
};

using Dnf = std::vector<std::vector<Atom>>;

constexpr std::size_t kMaxParsedDisjuncts = 256;

Dnf conjoin(const Dnf& a, const Dnf& b) {
  if (a.size() * b.size() > kMaxParsedDisjuncts) throw ComplexityCap("formula expands to too many disjuncts");
  Dnf r;
  for (const auto& x : a) {
    for (const auto& y : b) {
      auto c = x;
      c.insert(c.end(), y.begin(), y.end());
      r.push_back(std::move(c));
    }
  }
  return r;
}

Dnf truth() { return Dnf{{}}; }

struct ParsedTuple {
  std::vector<Lin> entries;
};

struct Parsed {
  std::vector<ParsedTuple> tuples;
  std::vector<std::string> existentials;
  Dnf body = truth();
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

  Parsed parse_braced() {
    Parsed p;
    expect("{");
    p.tuples.push_back(parse_tuple());
    while (accept("->")) p.tuples.push_back(parse_tuple());
    if (accept(":")) parse_body(p);
    expect("}");
    expect_end();
    return p;
  }

  Lin parse_lone_expr() {
    Lin e = parse_expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  bool is(std::string_view s) const { return peek().kind != Token::End && peek().text == s; }
  bool accept(std::string_view s) {
    if (!is(s)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw ParseError(what + " at offset " + std::to_string(t.offset) + " in \"" + std::string(text_) + "\"" +
                     (t.kind == Token::End ? " (end of input)" : " near '" + t.text + "'"));
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_end() {
    if (peek().kind != Token::End) fail("trailing input");
  }
  std::string expect_ident() {
    if (peek().kind != Token::Ident) fail("expected an identifier");
    return tokens_[pos_++].text;
  }

  ParsedTuple parse_tuple() {
    ParsedTuple t;
    expect("[");
    if (accept("]")) return t;
    do {
      t.entries.push_back(parse_expr());
    } while (accept(","));
    expect("]");
    return t;
  }

  void parse_body(Parsed& p) {
    if (accept("exists")) {
      const bool paren = accept("(");
      do {
        p.existentials.push_back(expect_ident());
      } while (accept(","));
      expect(":");
      p.body = parse_or();
      if (paren) expect(")");
      if (accept("and") || accept("&&")) p.body = conjoin(p.body, parse_or());
      return;
    }
    p.body = parse_or();
  }

  Dnf parse_or() {
    Dnf d = parse_and();
    while (accept("or") || accept("||")) {
      Dnf more = parse_and();
      d.insert(d.end(), more.begin(), more.end());
      if (d.size() > kMaxParsedDisjuncts) throw ComplexityCap("formula has too many disjuncts");
    }
    return d;
  }

  Dnf parse_and() {
    Dnf d = parse_atom();
    while (accept("and") || accept("&&")) d = conjoin(d, parse_atom());
    return d;
  }

  Dnf parse_atom() {
    if (accept("true")) return truth();
    if (accept("false")) return {};
    if (is("(")) {
      const std::size_t saved = pos_;
      try {
        ++pos_;
        Dnf d = parse_or();
        expect(")");
        return d;
      } catch (const ParseError&) {
        pos_ = saved;
      }
    }
    return parse_chain();
  }

  static bool is_comparison(const Token& t) {
    static const char* const ops[] = {"<=", "<", ">=", ">", "=", "==", "!="};
    if (t.kind != Token::Symbol) return false;
    return std::any_of(std::begin(ops), std::end(ops), [&](const char* o) { return t.text == o; });
  }

  Dnf parse_chain() {
    Lin lhs = parse_expr();
    if (!is_comparison(peek())) fail("expected a comparison");
    Dnf d = truth();
    while (is_comparison(peek())) {
      const std::string op = tokens_[pos_++].text;
      Lin rhs = parse_expr();
      Dnf step;
      if (op == "<=") {
        step = {{{rhs - lhs, ConstraintKind::Inequality}}};
      } else if (op == ">=") {
        step = {{{lhs - rhs, ConstraintKind::Inequality}}};
      } else if (op == "<") {
        Lin e = rhs - lhs;
        e.constant -= 1;
        step = {{{e, ConstraintKind::Inequality}}};
      } else if (op == ">") {
        Lin e = lhs - rhs;
        e.constant -= 1;
        step = {{{e, ConstraintKind::Inequality}}};
      } else if (op == "=" || op == "==") {
        step = {{{lhs - rhs, ConstraintKind::Equality}}};
      } else {
        Lin below = rhs - lhs;
        below.constant -= 1;
        Lin above = lhs - rhs;
        above.constant -= 1;
        step = {{{below, ConstraintKind::Inequality}}, {{above, ConstraintKind::Inequality}}};
      }
      d = conjoin(d, step);
      lhs = std::move(rhs);
    }
    return d;
  }

  Lin parse_expr() {
    Lin e;
    bool negate = false;
    if (accept("-")) {
      negate = true;
    } else {
      accept("+");
    }
    Lin first = parse_term();
    e += negate ? -first : first;
    for (;;) {
      if (accept("+")) {
        e += parse_term();
      } else if (accept("-")) {
        e += -parse_term();
      } else {
        return e;
      }
    }
  }

  Lin parse_term() {
    Lin t = parse_factor();
    while (accept("*")) t = multiply(t, parse_factor());
    return t;
  }

  Lin multiply(const Lin& a, const Lin& b) {
    if (a.is_constant()) {
      Lin r = b;
      r *= a.constant;
      return r;
    }
    if (b.is_constant()) {
      Lin r = a;
      r *= b.constant;
      return r;
    }
    fail("non-affine product");
  }

  Lin parse_factor() {
    const Token& t = peek();
    if (t.kind == Token::Number) {
      ++pos_;
      Lin n;
      n.constant = Integer(t.text);
      // Juxtaposition: "2t", "3(t + 1)".
      if (peek().kind == Token::Ident && !is_keyword(peek().text)) return multiply(n, parse_factor());
      if (is("(")) return multiply(n, parse_factor());
      return n;
    }
    if (t.kind == Token::Ident && !is_keyword(t.text)) {
      ++pos_;
      Lin v;
      v.terms[t.text] = 1;
      return v;
    }
    if (accept("(")) {
      Lin e = parse_expr();
      expect(")");
      return e;
    }
    if (accept("-")) return -parse_factor();
    fail("expected an expression");
  }

  static bool is_keyword(std::string_view s) {
    return s == "and" || s == "or" || s == "exists" || s == "true" || s == "false";
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Resolution

std::optional<std::string> plain_name(const Lin& e) {
  if (e.constant != 0 || e.terms.size() != 1) return std::nullopt;
  const auto& [name, c] = *e.terms.begin();
  if (c != 1) return std::nullopt;
  return name;
}

std::vector<std::string> param_names(const ParsedTuple& t) {
  std::vector<std::string> out;
  for (const auto& e : t.entries) {
    auto n = plain_name(e);
    if (!n) throw ParseError("parameter tuple entries must be plain names");
    if (std::find(out.begin(), out.end(), *n) != out.end()) throw ParseError("parameter " + *n + " listed twice");
    out.push_back(*n);
  }
  return out;
}

struct Layout {
  std::vector<std::string> dims;
  std::vector<std::string> params;
  std::vector<std::string> existentials;
  std::vector<Atom> ties;  // equalities from expression / repeated tuple entries
};

Layout lay_out(const std::vector<const ParsedTuple*>& tuples, std::vector<std::string> params,
               const std::vector<std::string>& context_params, const std::vector<std::string>& existentials) {
  for (const auto& p : context_params) {
    if (std::find(params.begin(), params.end(), p) == params.end()) params.push_back(p);
  }
  Layout l;
  l.params = params;
  std::vector<std::string> taken = params;
  taken.insert(taken.end(), existentials.begin(), existentials.end());
  std::size_t index = 0;
  for (const auto* t : tuples) {
    for (const auto& e : t->entries) {
      auto n = plain_name(e);
      if (n && std::find(taken.begin(), taken.end(), *n) == taken.end()) {
        l.dims.push_back(*n);
        taken.push_back(*n);
      } else {
        std::string name = fresh_name(n ? *n : "c" + std::to_string(index), taken);
        Lin tie = e;
        tie.terms[name] -= 1;
        l.ties.push_back({std::move(tie), ConstraintKind::Equality});
        l.dims.push_back(name);
        taken.push_back(name);
      }
      ++index;
    }
  }
  for (const auto& x : existentials) {
    if (std::find(l.dims.begin(), l.dims.end(), x) != l.dims.end() ||
        std::find(params.begin(), params.end(), x) != params.end()) {
      throw ParseError("existential " + x + " shadows a dimension or parameter");
    }
  }
  l.existentials = existentials;
  return l;
}

AffineExpr resolve(const Lin& e, const Space& space) {
  AffineExpr r(space.n_columns());
  for (const auto& [name, c] : e.terms) {
    auto col = space.column_of(name);
    if (!col) throw UnknownDimension("unknown identifier " + name);
    r.coeff(*col) += c;
  }
  r.constant_term() = e.constant;
  return r;
}

IntegerSet build(const Layout& l, const Dnf& body) {
  Space space(l.dims, l.params, l.existentials);
  IntegerSet s(space);
  for (const auto& conj : body) {
    Conjunction c(space.n_columns());
    for (const auto& a : l.ties) c.add({resolve(a.lin, space), a.kind});
    for (const auto& a : conj) c.add({resolve(a.lin, space), a.kind});
    s.add_disjunct(std::move(c));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Printing

std::string term(const Integer& c, const std::string& name) {
  if (c == 1) return name;
  return c.str() + name;
}

std::string sum(const std::vector<std::string>& terms, const Integer& constant) {
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : " + ") + t;
  if (constant != 0 || out.empty()) {
    if (out.empty()) return constant.str();
    out += constant > 0 ? " + " + constant.str() : " - " + Integer(-constant).str();
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string format_body(const IntegerSet& s) {
  const Space& space = s.space();
  std::string prefix;
  if (!space.existentials().empty()) prefix = "exists " + join(space.existentials()) + " : ";
  const auto& ds = s.disjuncts();
  if (ds.empty()) return " : false";
  if (ds.size() == 1 && ds.front().constraints().empty()) {
    return prefix.empty() ? "" : " : " + prefix + "true";
  }
  std::string out;
  for (const auto& d : ds) {
    std::string conj;
    for (const auto& c : d.constraints()) conj += (conj.empty() ? "" : " and ") + format_constraint(c, space);
    if (conj.empty()) conj = "true";
    if (ds.size() > 1) conj = "(" + conj + ")";
    out += (out.empty() ? "" : " or ") + conj;
  }
  return " : " + prefix + out;
}

}  // namespace

IntegerSet parse_set(std::string_view text, const std::vector<std::string>& context_params) {
  Parsed p = Parser(text).parse_braced();
  std::vector<std::string> params;
  const ParsedTuple* dims = nullptr;
  if (p.tuples.size() == 1) {
    dims = &p.tuples[0];
  } else if (p.tuples.size() == 2) {
    params = param_names(p.tuples[0]);
    dims = &p.tuples[1];
  } else {
    throw ParseError("a set has at most a parameter tuple and a dimension tuple: \"" + std::string(text) + "\"");
  }
  Layout l = lay_out({dims}, params, context_params, p.existentials);
  return build(l, p.body);
}

IntegerRelation parse_relation(std::string_view text, const std::vector<std::string>& context_params) {
  Parsed p = Parser(text).parse_braced();
  std::vector<std::string> params;
  std::size_t first = 0;
  if (p.tuples.size() == 3) {
    params = param_names(p.tuples[0]);
    first = 1;
  } else if (p.tuples.size() != 2) {
    throw ParseError("a relation needs an input and an output tuple: \"" + std::string(text) + "\"");
  }
  const ParsedTuple& in = p.tuples[first];
  const ParsedTuple& out = p.tuples[first + 1];
  Layout l = lay_out({&in, &out}, params, context_params, p.existentials);
  return IntegerRelation::from_set(build(l, p.body), in.entries.size());
}

AffineExpr parse_affine(std::string_view text, const Space& space) {
  return resolve(Parser(text).parse_lone_expr(), space);
}

std::string format_affine(const AffineExpr& e, const Space& space) {
  std::string out;
  for (std::size_t col = 0; col < e.size(); ++col) {
    const Integer& c = e.coeff(col);
    if (c == 0) continue;
    const std::string& name = space.column_name(col);
    if (out.empty()) {
      out = c == -1 ? "-" + name : term(c, name);
    } else {
      out += c > 0 ? " + " + term(c, name) : " - " + term(Integer(-c), name);
    }
  }
  const Integer& k = e.constant_term();
  if (out.empty()) return k.str();
  if (k > 0) out += " + " + k.str();
  if (k < 0) out += " - " + Integer(-k).str();
  return out;
}

std::string format_constraint(const Constraint& c, const Space& space) {
  // Positive terms on the left, negative ones moved to the right.
  std::vector<std::string> pos;
  std::vector<std::string> neg;
  bool pos_has_dim = false;
  bool neg_has_dim = false;
  for (std::size_t col = 0; col < c.expr.size(); ++col) {
    const Integer& k = c.expr.coeff(col);
    if (k == 0) continue;
    const std::string& name = space.column_name(col);
    if (k > 0) {
      pos.push_back(term(k, name));
      pos_has_dim = pos_has_dim || !space.is_param_column(col);
    } else {
      neg.push_back(term(Integer(-k), name));
      neg_has_dim = neg_has_dim || !space.is_param_column(col);
    }
  }
  const Integer& k = c.expr.constant_term();
  const char* op = c.is_equality() ? " = " : " >= ";
  // P - Q + k >= 0 reads best as "Q <= P + k" when only Q mentions dimensions.
  if (pos.empty() || (!pos_has_dim && neg_has_dim)) {
    const char* flipped = c.is_equality() ? " = " : " <= ";
    return sum(neg, 0) + flipped + sum(pos, k);
  }
  return sum(pos, 0) + op + sum(neg, Integer(-k));
}

std::string format_set(const IntegerSet& s) {
  const Space& space = s.space();
  std::string out = "{ ";
  if (!space.params().empty()) out += "[" + join(space.params()) + "] -> ";
  out += "[" + join(space.dims()) + "]";
  return out + format_body(s) + " }";
}

std::string format_relation(const IntegerRelation& r) {
  std::string out = "{ ";
  if (!r.params().empty()) out += "[" + join(r.params()) + "] -> ";
  out += "[" + join(r.in_dims()) + "] -> [" + join(r.out_dims()) + "]";
  return out + format_body(r.wrapped()) + " }";
}

}  // namespace ppnfifo::presburger
