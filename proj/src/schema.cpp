#include "ltlsps/schema.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ltlsps {

std::size_t eval_arith(const ArithExpr& e, std::size_t n_value,
                       std::optional<std::size_t> bound_value) {
  switch (e.base) {
    case IndexBase::Ground: return e.offset;
    case IndexBase::Param: return n_value + e.offset;
    case IndexBase::Bound:
      if (!bound_value)
        throw std::invalid_argument("no binding for index variable '" + e.var +
                                    "'");
      return *bound_value + e.offset;
  }
  return e.offset;
}

std::string render_index(const ArithExpr& e) {
  switch (e.base) {
    case IndexBase::Ground: return std::to_string(e.offset);
    case IndexBase::Param:
      return e.offset == 0 ? "n" : "n+" + std::to_string(e.offset);
    case IndexBase::Bound:
      return e.offset == 0 ? e.var : e.var + "+" + std::to_string(e.offset);
  }
  return {};
}

namespace {
Sch mk(SchemaOp op) {
  auto n = std::make_shared<SchemaNode>();
  n->op = op;
  return n;
}
}  // namespace

Sch sch_top() { return mk(SchemaOp::Top); }

Sch sch_atom(std::string prop, ArithExpr index) {
  auto n = std::make_shared<SchemaNode>();
  n->op = SchemaOp::Atom;
  n->prop = std::move(prop);
  n->index = std::move(index);
  return n;
}

Sch sch_not(Sch s) {
  auto n = std::make_shared<SchemaNode>();
  n->op = SchemaOp::Not;
  n->left = std::move(s);
  return n;
}

namespace {
Sch binary(SchemaOp op, Sch a, Sch b) {
  auto n = std::make_shared<SchemaNode>();
  n->op = op;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}
Sch iteration(SchemaOp op, std::string var, Sch body) {
  auto n = std::make_shared<SchemaNode>();
  n->op = op;
  n->var = std::move(var);
  n->left = std::move(body);
  return n;
}
}  // namespace

Sch sch_and(Sch a, Sch b) { return binary(SchemaOp::And, std::move(a), std::move(b)); }
Sch sch_or(Sch a, Sch b) { return binary(SchemaOp::Or, std::move(a), std::move(b)); }
Sch sch_implies(Sch a, Sch b) {
  return binary(SchemaOp::Implies, std::move(a), std::move(b));
}
Sch sch_iff(Sch a, Sch b) { return binary(SchemaOp::Iff, std::move(a), std::move(b)); }
Sch sch_bigand(std::string var, Sch body) {
  return iteration(SchemaOp::BigAnd, std::move(var), std::move(body));
}
Sch sch_bigor(std::string var, Sch body) {
  return iteration(SchemaOp::BigOr, std::move(var), std::move(body));
}
Sch sch_bigand_incl(std::string var, Sch body) {
  return iteration(SchemaOp::BigAndIncl, std::move(var), std::move(body));
}

Sch sch_iter(bool conj, std::string var, ArithExpr lower, IterEnd upper,
             Sch body) {
  auto n = std::make_shared<SchemaNode>();
  n->op = SchemaOp::GeneralIter;
  n->conj = conj;
  n->var = std::move(var);
  n->lower = std::move(lower);
  n->upper = std::move(upper);
  n->left = std::move(body);
  return n;
}

Sch sch_conj(const std::vector<Sch>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty conjunction");
  Sch out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = sch_and(out, parts[i]);
  return out;
}

bool schema_equal(const Sch& a, const Sch& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op) return false;
  switch (a->op) {
    case SchemaOp::Atom:
      return a->prop == b->prop && a->index == b->index;
    case SchemaOp::GeneralIter:
      if (!(a->conj == b->conj && a->var == b->var && a->lower == b->lower &&
            a->upper.expr == b->upper.expr &&
            a->upper.exclusive == b->upper.exclusive))
        return false;
      break;
    case SchemaOp::BigAnd:
    case SchemaOp::BigOr:
    case SchemaOp::BigAndIncl:
      if (a->var != b->var) return false;
      break;
    default: break;
  }
  return schema_equal(a->left, b->left) && schema_equal(a->right, b->right);
}

std::size_t schema_node_count(const Sch& s) {
  if (!s) return 0;
  return 1 + schema_node_count(s->left) + schema_node_count(s->right);
}

namespace {
void collect_schema_props(const Sch& s, std::set<std::string>& out) {
  if (!s) return;
  if (s->op == SchemaOp::Atom) out.insert(s->prop);
  collect_schema_props(s->left, out);
  collect_schema_props(s->right, out);
}
}  // namespace

std::set<std::string> schema_props(const Sch& s) {
  std::set<std::string> out;
  collect_schema_props(s, out);
  return out;
}

// ---------------------------------------------------------------------------
// Concrete syntax
// ---------------------------------------------------------------------------

namespace {

struct STok {
  enum Kind {
    Ident,
    Int,
    True,
    False,
    BigAndKw,
    BigOrKw,
    BigAndInclKw,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Plus,
    Minus,
    Dot,
    DotDot,
    Equals,
    End,
  } kind;
  std::string text;
  std::size_t value = 0;
  int line;
  int col;
};

class SchemaLexer {
public:
  explicit SchemaLexer(std::string_view text) : text_(text) { advance(); }

  const STok& peek() const { return tok_; }
  STok take() {
    STok t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_.line = line_;
    tok_.col = col_;
    tok_.value = 0;
    if (pos_ >= text_.size()) {
      tok_.kind = STok::End;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      tok_.text = std::string(text_.substr(start, pos_ - start));
      if (tok_.text == "true") tok_.kind = STok::True;
      else if (tok_.text == "false") tok_.kind = STok::False;
      else if (tok_.text == "bigand") tok_.kind = STok::BigAndKw;
      else if (tok_.text == "bigor") tok_.kind = STok::BigOrKw;
      else if (tok_.text == "bigand_incl") tok_.kind = STok::BigAndInclKw;
      else tok_.kind = STok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++col_;
      }
      tok_.kind = STok::Int;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      tok_.value = std::stoull(tok_.text);
      return;
    }
    auto single = [&](STok::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '!': single(STok::Bang); return;
      case '&': single(STok::Amp); return;
      case '|': single(STok::Pipe); return;
      case '(': single(STok::LParen); return;
      case ')': single(STok::RParen); return;
      case '[': single(STok::LBracket); return;
      case ']': single(STok::RBracket); return;
      case '+': single(STok::Plus); return;
      case '=': single(STok::Equals); return;
      case '.':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '.') {
          tok_.kind = STok::DotDot;
          tok_.text = "..";
          pos_ += 2;
          col_ += 2;
          return;
        }
        single(STok::Dot);
        return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          tok_.kind = STok::Arrow;
          tok_.text = "->";
          pos_ += 2;
          col_ += 2;
          return;
        }
        single(STok::Minus);
        return;
      case '<':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' &&
            text_[pos_ + 2] == '>') {
          tok_.kind = STok::DArrow;
          tok_.text = "<->";
          pos_ += 3;
          col_ += 3;
          return;
        }
        break;
      default: break;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line_,
                     col_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  STok tok_{};
};

class SchemaParser {
public:
  explicit SchemaParser(std::string_view text) : lex_(text) {}

  Sch parse() {
    Sch s = iff();
    if (lex_.peek().kind != STok::End) unexpected("operator or end of input");
    return s;
  }

private:
  [[noreturn]] void unexpected(const std::string& expected) {
    const STok& t = lex_.peek();
    std::string got = t.kind == STok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + got, t.line, t.col, expected);
  }

  void expect(STok::Kind k, const char* what) {
    if (lex_.peek().kind != k) unexpected(what);
    lex_.take();
  }

  Sch iff() {
    Sch s = impl();
    while (lex_.peek().kind == STok::DArrow) {
      lex_.take();
      s = sch_iff(std::move(s), impl());
    }
    return s;
  }

  Sch impl() {
    Sch s = disj();
    if (lex_.peek().kind == STok::Arrow) {
      lex_.take();
      s = sch_implies(std::move(s), impl());
    }
    return s;
  }

  Sch disj() {
    Sch s = conj();
    while (lex_.peek().kind == STok::Pipe) {
      lex_.take();
      s = sch_or(std::move(s), conj());
    }
    return s;
  }

  Sch conj() {
    Sch s = unary();
    while (lex_.peek().kind == STok::Amp) {
      lex_.take();
      s = sch_and(std::move(s), unary());
    }
    return s;
  }

  Sch unary() {
    if (lex_.peek().kind == STok::Bang) {
      lex_.take();
      return sch_not(unary());
    }
    return primary();
  }

  Sch primary() {
    STok t = lex_.peek();
    switch (t.kind) {
      case STok::True:
        lex_.take();
        return sch_top();
      case STok::False:
        lex_.take();
        return sch_not(sch_top());
      case STok::Ident: {
        if (t.text == "n")
          throw ParseError("'n' is the parameter, not a proposition", t.line,
                           t.col);
        lex_.take();
        expect(STok::LBracket, "'[' (propositions are indexed, e.g. p[i])");
        ArithExpr e = index_expr();
        expect(STok::RBracket, "']'");
        return sch_atom(t.text, e);
      }
      case STok::LParen: {
        lex_.take();
        Sch s = iff();
        expect(STok::RParen, "')'");
        return s;
      }
      case STok::BigAndKw: return iteration_tail(/*conj=*/true, /*incl=*/false);
      case STok::BigOrKw: return iteration_tail(/*conj=*/false, /*incl=*/false);
      case STok::BigAndInclKw:
        return iteration_tail(/*conj=*/true, /*incl=*/true);
      default:
        unexpected("a schema ('true', 'false', 'p[e]', '!', 'bigand', "
                   "'bigor', 'bigand_incl' or '(')");
    }
  }

  Sch iteration_tail(bool conj, bool incl) {
    lex_.take();  // keyword
    STok v = lex_.peek();
    if (v.kind != STok::Ident) unexpected("an iteration variable");
    if (v.text == "n")
      throw ParseError("the bound variable must differ from the parameter 'n'",
                       v.line, v.col);
    lex_.take();

    // Extended form with explicit bounds: bigand i = e .. u . ( s )
    if (lex_.peek().kind == STok::Equals) {
      if (incl)
        unexpected("'.' (bigand_incl has fixed bounds 0 .. n)");
      lex_.take();
      ArithExpr lower = index_expr();
      expect(STok::DotDot, "'..'");
      IterEnd upper = upper_bound();
      expect(STok::Dot, "'.'");
      expect(STok::LParen, "'('");
      bound_.push_back(v.text);
      Sch body = iff();
      bound_.pop_back();
      expect(STok::RParen, "')'");
      return sch_iter(conj, v.text, lower, upper, std::move(body));
    }

    expect(STok::Dot, "'.'");
    expect(STok::LParen, "'('");
    bound_.push_back(v.text);
    Sch body = iff();
    bound_.pop_back();
    expect(STok::RParen, "')'");
    if (incl) return sch_bigand_incl(v.text, std::move(body));
    return conj ? sch_bigand(v.text, std::move(body))
                : sch_bigor(v.text, std::move(body));
  }

  ArithExpr base_term() {
    STok t = lex_.peek();
    if (t.kind == STok::Int) {
      lex_.take();
      if (lex_.peek().kind == STok::Ident)
        throw ParseError("index '" + t.text + lex_.peek().text +
                             "' is beyond the sequential/regular fragment; "
                             "indices must have the form k, n+k or i+k",
                         t.line, t.col);
      return ArithExpr::ground(t.value);
    }
    if (t.kind == STok::Ident) {
      lex_.take();
      if (t.text == "n") return ArithExpr::param();
      if (std::find(bound_.begin(), bound_.end(), t.text) != bound_.end())
        return ArithExpr::bound(t.text);
      throw ParseError("unbound index variable '" + t.text + "'", t.line,
                       t.col);
    }
    unexpected("an index (number, 'n' or a bound variable)");
  }

  ArithExpr index_expr() {
    STok first = lex_.peek();
    ArithExpr e = base_term();
    while (lex_.peek().kind == STok::Plus) {
      lex_.take();
      STok t = lex_.peek();
      if (t.kind == STok::Int) {
        lex_.take();
        e.offset += t.value;
      } else if (t.kind == STok::Ident) {
        throw ParseError("index '" + first.text + "+" + t.text +
                             "' is beyond the sequential/regular fragment; "
                             "indices must have the form k, n+k or i+k",
                         t.line, t.col);
      } else {
        unexpected("a number after '+'");
      }
    }
    return e;
  }

  IterEnd upper_bound() {
    ArithExpr e = index_expr();
    if (lex_.peek().kind == STok::Minus) {
      STok m = lex_.take();
      STok t = lex_.peek();
      if (t.kind != STok::Int || t.value != 1)
        throw ParseError("only '-1' is allowed in an upper bound", m.line,
                         m.col);
      lex_.take();
      if (e.offset == 0) return {e, /*exclusive=*/true};
      --e.offset;
      return {e, false};
    }
    return {e, false};
  }

  SchemaLexer lex_;
  std::vector<std::string> bound_;
};

int sch_level(const Sch& s) {
  switch (s->op) {
    case SchemaOp::Top:
    case SchemaOp::Atom:
    case SchemaOp::BigAnd:
    case SchemaOp::BigOr:
    case SchemaOp::BigAndIncl:
    case SchemaOp::GeneralIter: return 7;
    case SchemaOp::Not: return s->left->op == SchemaOp::Top ? 7 : 6;
    case SchemaOp::And: return 4;
    case SchemaOp::Or: return 3;
    case SchemaOp::Implies: return 2;
    case SchemaOp::Iff: return 1;
  }
  return 0;
}

void render_sch(const Sch& s, int ctx, std::string& out) {
  int lv = sch_level(s);
  bool paren = lv < ctx;
  if (paren) out += '(';
  switch (s->op) {
    case SchemaOp::Top: out += "true"; break;
    case SchemaOp::Atom:
      out += s->prop;
      out += '[';
      out += render_index(s->index);
      out += ']';
      break;
    case SchemaOp::Not:
      if (s->left->op == SchemaOp::Top) {
        out += "false";
      } else {
        out += '!';
        render_sch(s->left, 6, out);
      }
      break;
    case SchemaOp::And:
      render_sch(s->left, 4, out);
      out += " & ";
      render_sch(s->right, 5, out);
      break;
    case SchemaOp::Or:
      render_sch(s->left, 3, out);
      out += " | ";
      render_sch(s->right, 4, out);
      break;
    case SchemaOp::Implies:
      render_sch(s->left, 3, out);
      out += " -> ";
      render_sch(s->right, 2, out);
      break;
    case SchemaOp::Iff:
      render_sch(s->left, 1, out);
      out += " <-> ";
      render_sch(s->right, 2, out);
      break;
    case SchemaOp::BigAnd:
    case SchemaOp::BigOr:
    case SchemaOp::BigAndIncl:
      out += s->op == SchemaOp::BigAnd
                 ? "bigand "
                 : (s->op == SchemaOp::BigOr ? "bigor " : "bigand_incl ");
      out += s->var;
      out += " . (";
      render_sch(s->left, 0, out);
      out += ')';
      break;
    case SchemaOp::GeneralIter: {
      out += s->conj ? "bigand " : "bigor ";
      out += s->var;
      out += " = ";
      out += render_index(s->lower);
      out += " .. ";
      if (s->upper.exclusive) {
        out += render_index(s->upper.expr);
        out += "-1";
      } else {
        out += render_index(s->upper.expr);
      }
      out += " . (";
      render_sch(s->left, 0, out);
      out += ')';
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

Sch parse_schema(std::string_view text) { return SchemaParser(text).parse(); }

std::string render_schema(const Sch& s) {
  std::string out;
  render_sch(s, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Propositional formulas
// ---------------------------------------------------------------------------

namespace {
Prop pmk(PropOp op, Prop a = nullptr, Prop b = nullptr) {
  auto n = std::make_shared<PropNode>();
  n->op = op;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}
}  // namespace

Prop prop_top() { return pmk(PropOp::Top); }
Prop prop_atom(std::string name, std::size_t index) {
  auto n = std::make_shared<PropNode>();
  n->op = PropOp::Atom;
  n->prop = std::move(name);
  n->index = index;
  return n;
}
Prop prop_not(Prop a) { return pmk(PropOp::Not, std::move(a)); }
Prop prop_and(Prop a, Prop b) {
  return pmk(PropOp::And, std::move(a), std::move(b));
}
Prop prop_or(Prop a, Prop b) {
  return pmk(PropOp::Or, std::move(a), std::move(b));
}
Prop prop_implies(Prop a, Prop b) {
  return pmk(PropOp::Implies, std::move(a), std::move(b));
}
Prop prop_iff(Prop a, Prop b) {
  return pmk(PropOp::Iff, std::move(a), std::move(b));
}

bool prop_equal(const Prop& a, const Prop& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->prop != b->prop || a->index != b->index)
    return false;
  return prop_equal(a->left, b->left) && prop_equal(a->right, b->right);
}

namespace {
void flatten(const Prop& f, PropOp op, std::vector<Prop>& out) {
  if (f->op == op) {
    flatten(f->left, op, out);
    flatten(f->right, op, out);
  } else {
    out.push_back(f);
  }
}
}  // namespace

bool prop_equal_flat(const Prop& a, const Prop& b) {
  if (!a || !b) return a == b;
  if (a->op != b->op) return false;
  if (a->op == PropOp::And || a->op == PropOp::Or) {
    std::vector<Prop> xs, ys;
    flatten(a, a->op, xs);
    flatten(b, a->op, ys);
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!prop_equal_flat(xs[i], ys[i])) return false;
    return true;
  }
  if (a->prop != b->prop || a->index != b->index) return false;
  if (!!a->left != !!b->left || !!a->right != !!b->right) return false;
  if (a->left && !prop_equal_flat(a->left, b->left)) return false;
  if (a->right && !prop_equal_flat(a->right, b->right)) return false;
  return true;
}

namespace {
int prop_level(const Prop& f) {
  switch (f->op) {
    case PropOp::Top:
    case PropOp::Atom: return 7;
    case PropOp::Not: return f->left->op == PropOp::Top ? 7 : 6;
    case PropOp::And: return 4;
    case PropOp::Or: return 3;
    case PropOp::Implies: return 2;
    case PropOp::Iff: return 1;
  }
  return 0;
}

void render_prop_rec(const Prop& f, int ctx, std::string& out) {
  int lv = prop_level(f);
  bool paren = lv < ctx;
  if (paren) out += '(';
  switch (f->op) {
    case PropOp::Top: out += "true"; break;
    case PropOp::Atom:
      out += f->prop;
      out += '[';
      out += std::to_string(f->index);
      out += ']';
      break;
    case PropOp::Not:
      if (f->left->op == PropOp::Top) {
        out += "false";
      } else {
        out += '!';
        render_prop_rec(f->left, 6, out);
      }
      break;
    case PropOp::And:
      render_prop_rec(f->left, 4, out);
      out += " & ";
      render_prop_rec(f->right, 5, out);
      break;
    case PropOp::Or:
      render_prop_rec(f->left, 3, out);
      out += " | ";
      render_prop_rec(f->right, 4, out);
      break;
    case PropOp::Implies:
      render_prop_rec(f->left, 3, out);
      out += " -> ";
      render_prop_rec(f->right, 2, out);
      break;
    case PropOp::Iff:
      render_prop_rec(f->left, 1, out);
      out += " <-> ";
      render_prop_rec(f->right, 2, out);
      break;
  }
  if (paren) out += ')';
}
}  // namespace

std::string render_prop(const Prop& f) {
  std::string out;
  render_prop_rec(f, 0, out);
  return out;
}

std::size_t prop_node_count(const Prop& f) {
  if (!f) return 0;
  return 1 + prop_node_count(f->left) + prop_node_count(f->right);
}

namespace {
void collect_atoms(const Prop& f, std::set<PropAtomRef>& out) {
  if (!f) return;
  if (f->op == PropOp::Atom) out.insert({f->prop, f->index});
  collect_atoms(f->left, out);
  collect_atoms(f->right, out);
}
}  // namespace

std::vector<PropAtomRef> prop_atoms(const Prop& f) {
  std::set<PropAtomRef> set;
  collect_atoms(f, set);
  return {set.begin(), set.end()};
}

void PropInterpretation::set(const std::string& name, std::size_t index,
                             bool value) {
  if (value)
    trues_.insert({name, index});
  else
    trues_.erase({name, index});
}

bool eval_prop(const PropInterpretation& sigma, const Prop& f) {
  switch (f->op) {
    case PropOp::Top: return true;
    case PropOp::Atom: return sigma.holds(f->prop, f->index);
    case PropOp::Not: return !eval_prop(sigma, f->left);
    case PropOp::And:
      return eval_prop(sigma, f->left) && eval_prop(sigma, f->right);
    case PropOp::Or:
      return eval_prop(sigma, f->left) || eval_prop(sigma, f->right);
    case PropOp::Implies:
      return !eval_prop(sigma, f->left) || eval_prop(sigma, f->right);
    case PropOp::Iff:
      return eval_prop(sigma, f->left) == eval_prop(sigma, f->right);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Instantiation
// ---------------------------------------------------------------------------

namespace {

using Env = std::map<std::string, std::size_t>;

std::size_t eval_index(const ArithExpr& e, std::size_t m, const Env& env) {
  switch (e.base) {
    case IndexBase::Ground: return e.offset;
    case IndexBase::Param: return m + e.offset;
    case IndexBase::Bound: {
      auto it = env.find(e.var);
      if (it == env.end())
        throw std::invalid_argument("no binding for index variable '" + e.var +
                                    "'");
      return it->second + e.offset;
    }
  }
  return e.offset;
}

Prop inst(const Sch& s, std::size_t m, Env& env);

Prop expand_range(bool conj, const Sch& body, const std::string& var,
                  std::size_t lo, bool empty, std::size_t hi, std::size_t m,
                  Env& env) {
  if (empty || lo > hi) return conj ? prop_top() : prop_not(prop_top());
  Prop out;
  for (std::size_t t = lo; t <= hi; ++t) {
    env[var] = t;
    Prop part = inst(body, m, env);
    out = out ? (conj ? prop_and(std::move(out), std::move(part))
                      : prop_or(std::move(out), std::move(part)))
              : std::move(part);
    if (t == hi) break;  // guard against overflow when hi == SIZE_MAX
  }
  env.erase(var);
  return out;
}

Prop inst(const Sch& s, std::size_t m, Env& env) {
  switch (s->op) {
    case SchemaOp::Top: return prop_top();
    case SchemaOp::Atom:
      return prop_atom(s->prop, eval_index(s->index, m, env));
    case SchemaOp::Not: return prop_not(inst(s->left, m, env));
    case SchemaOp::And:
      return prop_and(inst(s->left, m, env), inst(s->right, m, env));
    case SchemaOp::Or:
      return prop_or(inst(s->left, m, env), inst(s->right, m, env));
    case SchemaOp::Implies:
      return prop_implies(inst(s->left, m, env), inst(s->right, m, env));
    case SchemaOp::Iff:
      return prop_iff(inst(s->left, m, env), inst(s->right, m, env));
    case SchemaOp::BigAnd:
      return expand_range(true, s->left, s->var, 0, m == 0, m == 0 ? 0 : m - 1,
                          m, env);
    case SchemaOp::BigOr:
      return expand_range(false, s->left, s->var, 0, m == 0, m == 0 ? 0 : m - 1,
                          m, env);
    case SchemaOp::BigAndIncl:
      return expand_range(true, s->left, s->var, 0, false, m, m, env);
    case SchemaOp::GeneralIter: {
      std::size_t lo = eval_index(s->lower, m, env);
      std::size_t hi = eval_index(s->upper.expr, m, env);
      bool empty = false;
      if (s->upper.exclusive) {
        if (hi == 0)
          empty = true;
        else
          --hi;
      }
      return expand_range(s->conj, s->left, s->var, lo, empty, hi, m, env);
    }
  }
  throw std::logic_error("unhandled schema node");
}

}  // namespace

Prop instantiate(const Sch& s, std::size_t m) {
  Env env;
  return inst(s, m, env);
}

bool eval_schema(const SchemaInterpretation& interp, const Sch& s) {
  return eval_prop(interp.base, instantiate(s, interp.n_value));
}

// ---------------------------------------------------------------------------
// Sequential classification
// ---------------------------------------------------------------------------

const char* sps_rule_name(SpsRule rule) {
  switch (rule) {
    case SpsRule::NestedIteration: return "nested-iteration";
    case SpsRule::BadOuterIndex: return "bad-outer-index";
    case SpsRule::BadInnerIndex: return "bad-inner-index";
    case SpsRule::GeneralIteration: return "general-iteration";
  }
  return "?";
}

namespace {
void classify(const Sch& s, const std::string* binder,
              std::vector<SpsViolation>& out) {
  if (!s) return;
  switch (s->op) {
    case SchemaOp::Atom:
      if (binder) {
        if (!(s->index.base == IndexBase::Bound && s->index.var == *binder))
          out.push_back({render_schema(s), SpsRule::BadInnerIndex});
      } else {
        if (s->index.base == IndexBase::Bound)
          out.push_back({render_schema(s), SpsRule::BadOuterIndex});
      }
      return;
    case SchemaOp::BigAnd:
    case SchemaOp::BigOr:
    case SchemaOp::BigAndIncl:
      if (binder)
        out.push_back({render_schema(s), SpsRule::NestedIteration});
      classify(s->left, &s->var, out);
      return;
    case SchemaOp::GeneralIter:
      out.push_back({render_schema(s), SpsRule::GeneralIteration});
      if (binder) out.push_back({render_schema(s), SpsRule::NestedIteration});
      classify(s->left, &s->var, out);
      return;
    default:
      classify(s->left, binder, out);
      classify(s->right, binder, out);
      return;
  }
}
}  // namespace

SpsVerdict classify_sps(const Sch& s) {
  SpsVerdict v;
  classify(s, nullptr, v.violations);
  v.is_sps = v.violations.empty();
  return v;
}

// ---------------------------------------------------------------------------
// Size accounting
// ---------------------------------------------------------------------------

namespace {

std::size_t bit_length(std::size_t k) {
  std::size_t b = 0;
  while (k) {
    ++b;
    k >>= 1;
  }
  return b;
}

// A constant costs one symbol in sym_size, value+1 symbols in unary (a chain
// of successors applied to 0), bit_length+1 in binary.
void index_sizes(const ArithExpr& e, SizeMetrics& m) {
  std::size_t var_syms = e.base == IndexBase::Ground ? 0 : 1;
  bool has_const = e.base == IndexBase::Ground || e.offset > 0;
  std::size_t plus = (var_syms && has_const) ? 1 : 0;
  std::size_t base_cost = var_syms + plus;
  m.sym_size += base_cost + (has_const ? 1 : 0);
  m.unary_size += base_cost + (has_const ? e.offset + 1 : 0);
  m.binary_size += base_cost + (has_const ? bit_length(e.offset) + 1 : 0);
  m.max_int = std::max(m.max_int, e.offset);
}

void sizes(const Sch& s, SizeMetrics& m) {
  if (!s) return;
  switch (s->op) {
    case SchemaOp::Atom:
      m.sym_size += 1;
      m.unary_size += 1;
      m.binary_size += 1;
      index_sizes(s->index, m);
      return;
    case SchemaOp::BigAnd:
    case SchemaOp::BigOr:
    case SchemaOp::BigAndIncl:
    case SchemaOp::GeneralIter:
      m.sym_size += 2;  // the iterator symbol and its binder
      m.unary_size += 2;
      m.binary_size += 2;
      break;
    default:
      m.sym_size += 1;
      m.unary_size += 1;
      m.binary_size += 1;
      break;
  }
  sizes(s->left, m);
  sizes(s->right, m);
}

}  // namespace

SizeMetrics size_metrics(const Sch& s) {
  SizeMetrics m;
  sizes(s, m);
  return m;
}

}  // namespace ltlsps
