#include "ltlsps/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ltlsps {

namespace {

Ltl mk(LtlOp op, std::string name, Ltl l, Ltl r) {
  return std::make_shared<const LtlNode>(op, std::move(name), std::move(l),
                                         std::move(r));
}

}  // namespace

Ltl ltl_top() { return mk(LtlOp::Top, {}, nullptr, nullptr); }
Ltl ltl_false() { return ltl_not(ltl_top()); }
Ltl ltl_prop(std::string name) {
  return mk(LtlOp::Prop, std::move(name), nullptr, nullptr);
}
Ltl ltl_not(Ltl f) { return mk(LtlOp::Not, {}, std::move(f), nullptr); }
Ltl ltl_and(Ltl a, Ltl b) {
  return mk(LtlOp::And, {}, std::move(a), std::move(b));
}
Ltl ltl_or(Ltl a, Ltl b) {
  return mk(LtlOp::Or, {}, std::move(a), std::move(b));
}
Ltl ltl_implies(Ltl a, Ltl b) {
  return mk(LtlOp::Implies, {}, std::move(a), std::move(b));
}
Ltl ltl_iff(Ltl a, Ltl b) {
  return mk(LtlOp::Iff, {}, std::move(a), std::move(b));
}
Ltl ltl_next(Ltl f) { return mk(LtlOp::Next, {}, std::move(f), nullptr); }
Ltl ltl_next_pow(Ltl f, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) f = ltl_next(std::move(f));
  return f;
}
Ltl ltl_until(Ltl a, Ltl b) {
  return mk(LtlOp::Until, {}, std::move(a), std::move(b));
}
Ltl ltl_eventually(Ltl f) {
  return mk(LtlOp::Eventually, {}, std::move(f), nullptr);
}
Ltl ltl_always(Ltl f) { return mk(LtlOp::Always, {}, std::move(f), nullptr); }

bool ltl_equal(const Ltl& a, const Ltl& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->name != b->name) return false;
  return ltl_equal(a->left, b->left) && ltl_equal(a->right, b->right);
}

std::size_t ltl_size(const Ltl& f) {
  if (!f) return 0;
  return 1 + ltl_size(f->left) + ltl_size(f->right);
}

namespace {
void collect_props(const Ltl& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->op == LtlOp::Prop) out.insert(f->name);
  collect_props(f->left, out);
  collect_props(f->right, out);
}
}  // namespace

std::set<std::string> ltl_props(const Ltl& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Concrete syntax
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind {
    Ident,
    True,
    False,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LParen,
    RParen,
    End,
  } kind;
  std::string text;
  int line;
  int col;
};

class LtlLexer {
public:
  explicit LtlLexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
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
    if (pos_ >= text_.size()) {
      tok_.kind = Token::End;
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
      if (tok_.text == "true")
        tok_.kind = Token::True;
      else if (tok_.text == "false")
        tok_.kind = Token::False;
      else
        tok_.kind = Token::Ident;
      return;
    }
    auto single = [&](Token::Kind k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '!': single(Token::Bang); return;
      case '&': single(Token::Amp); return;
      case '|': single(Token::Pipe); return;
      case '(': single(Token::LParen); return;
      case ')': single(Token::RParen); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          tok_.kind = Token::Arrow;
          tok_.text = "->";
          pos_ += 2;
          col_ += 2;
          return;
        }
        break;
      case '<':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' &&
            text_[pos_ + 2] == '>') {
          tok_.kind = Token::DArrow;
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
  Token tok_{};
};

// Precedence, tightest first: unary > U > & > | > -> > <->.
// '->' and 'U' are right-associative, the rest left-associative.
class LtlParser {
public:
  explicit LtlParser(std::string_view text) : lex_(text) {}

  Ltl parse() {
    Ltl f = iff();
    if (lex_.peek().kind != Token::End) unexpected("operator or end of input");
    return f;
  }

private:
  [[noreturn]] void unexpected(const std::string& expected) {
    const Token& t = lex_.peek();
    std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + got, t.line, t.col, expected);
  }

  Ltl iff() {
    Ltl f = impl();
    while (lex_.peek().kind == Token::DArrow) {
      lex_.take();
      f = ltl_iff(std::move(f), impl());
    }
    return f;
  }

  Ltl impl() {
    Ltl f = disj();
    if (lex_.peek().kind == Token::Arrow) {
      lex_.take();
      f = ltl_implies(std::move(f), impl());
    }
    return f;
  }

  Ltl disj() {
    Ltl f = conj();
    while (lex_.peek().kind == Token::Pipe) {
      lex_.take();
      f = ltl_or(std::move(f), conj());
    }
    return f;
  }

  Ltl conj() {
    Ltl f = until();
    while (lex_.peek().kind == Token::Amp) {
      lex_.take();
      f = ltl_and(std::move(f), until());
    }
    return f;
  }

  Ltl until() {
    Ltl f = unary();
    if (lex_.peek().kind == Token::Ident && lex_.peek().text == "U") {
      lex_.take();
      f = ltl_until(std::move(f), until());
    }
    return f;
  }

  Ltl unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Bang) {
      lex_.take();
      return ltl_not(unary());
    }
    if (t.kind == Token::Ident) {
      if (t.text == "X") {
        lex_.take();
        return ltl_next(unary());
      }
      if (t.text == "F") {
        lex_.take();
        return ltl_eventually(unary());
      }
      if (t.text == "G") {
        lex_.take();
        return ltl_always(unary());
      }
    }
    return primary();
  }

  Ltl primary() {
    Token t = lex_.peek();
    switch (t.kind) {
      case Token::True:
        lex_.take();
        return ltl_top();
      case Token::False:
        lex_.take();
        return ltl_false();
      case Token::Ident:
        if (t.text == "U")
          unexpected("a formula ('true', 'false', identifier, '!', 'X', 'F', "
                     "'G' or '(')");
        lex_.take();
        return ltl_prop(t.text);
      case Token::LParen: {
        lex_.take();
        Ltl f = iff();
        if (lex_.peek().kind != Token::RParen) unexpected("')'");
        lex_.take();
        return f;
      }
      default:
        unexpected("a formula ('true', 'false', identifier, '!', 'X', 'F', "
                   "'G' or '(')");
    }
  }

  LtlLexer lex_;
};

int level(const Ltl& f) {
  switch (f->op) {
    case LtlOp::Top:
    case LtlOp::Prop: return 7;
    case LtlOp::Not:
      return f->left->op == LtlOp::Top ? 7 : 6;  // !true prints as 'false'
    case LtlOp::Next:
    case LtlOp::Eventually:
    case LtlOp::Always: return 6;
    case LtlOp::Until: return 5;
    case LtlOp::And: return 4;
    case LtlOp::Or: return 3;
    case LtlOp::Implies: return 2;
    case LtlOp::Iff: return 1;
  }
  return 0;
}

void render(const Ltl& f, int ctx, std::string& out) {
  int lv = level(f);
  bool paren = lv < ctx;
  if (paren) out += '(';
  switch (f->op) {
    case LtlOp::Top: out += "true"; break;
    case LtlOp::Prop: out += f->name; break;
    case LtlOp::Not:
      if (f->left->op == LtlOp::Top) {
        out += "false";
      } else {
        out += '!';
        render(f->left, 6, out);
      }
      break;
    case LtlOp::Next:
      out += "X ";
      render(f->left, 6, out);
      break;
    case LtlOp::Eventually:
      out += "F ";
      render(f->left, 6, out);
      break;
    case LtlOp::Always:
      out += "G ";
      render(f->left, 6, out);
      break;
    case LtlOp::Until:
      render(f->left, 6, out);
      out += " U ";
      render(f->right, 5, out);
      break;
    case LtlOp::And:
      render(f->left, 4, out);
      out += " & ";
      render(f->right, 5, out);
      break;
    case LtlOp::Or:
      render(f->left, 3, out);
      out += " | ";
      render(f->right, 4, out);
      break;
    case LtlOp::Implies:
      render(f->left, 3, out);
      out += " -> ";
      render(f->right, 2, out);
      break;
    case LtlOp::Iff:
      render(f->left, 1, out);
      out += " <-> ";
      render(f->right, 2, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Ltl parse_ltl(std::string_view text) { return LtlParser(text).parse(); }

std::string render_ltl(const Ltl& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

namespace {
void post_order(const Ltl& f, std::vector<Ltl>& out,
                std::set<std::string>& seen) {
  if (!f) return;
  post_order(f->left, out, seen);
  post_order(f->right, out, seen);
  std::string key = render_ltl(f);
  if (seen.insert(std::move(key)).second) out.push_back(f);
}
}  // namespace

std::vector<Ltl> subformulas(const Ltl& f) {
  std::vector<Ltl> out;
  std::set<std::string> seen;
  post_order(f, out, seen);
  return out;
}

namespace {

Ltl nnf_pos(const Ltl& f, bool& fully);
Ltl nnf_neg(const Ltl& f, bool& fully);

Ltl nnf_pos(const Ltl& f, bool& fully) {
  switch (f->op) {
    case LtlOp::Top:
    case LtlOp::Prop: return f;
    case LtlOp::Not: return nnf_neg(f->left, fully);
    case LtlOp::And: return ltl_and(nnf_pos(f->left, fully), nnf_pos(f->right, fully));
    case LtlOp::Or: return ltl_or(nnf_pos(f->left, fully), nnf_pos(f->right, fully));
    case LtlOp::Implies:
      return ltl_implies(nnf_pos(f->left, fully), nnf_pos(f->right, fully));
    case LtlOp::Iff:
      return ltl_iff(nnf_pos(f->left, fully), nnf_pos(f->right, fully));
    case LtlOp::Next: return ltl_next(nnf_pos(f->left, fully));
    case LtlOp::Until:
      return ltl_until(nnf_pos(f->left, fully), nnf_pos(f->right, fully));
    case LtlOp::Eventually: return ltl_eventually(nnf_pos(f->left, fully));
    case LtlOp::Always: return ltl_always(nnf_pos(f->left, fully));
  }
  return f;
}

Ltl nnf_neg(const Ltl& f, bool& fully) {
  switch (f->op) {
    case LtlOp::Top:
    case LtlOp::Prop: return ltl_not(f);
    case LtlOp::Not: return nnf_pos(f->left, fully);
    case LtlOp::And: return ltl_or(nnf_neg(f->left, fully), nnf_neg(f->right, fully));
    case LtlOp::Or: return ltl_and(nnf_neg(f->left, fully), nnf_neg(f->right, fully));
    case LtlOp::Implies:
      return ltl_and(nnf_pos(f->left, fully), nnf_neg(f->right, fully));
    case LtlOp::Iff:
      // !(a <-> b) == (!a <-> b); keeps the expansion linear
      return ltl_iff(nnf_neg(f->left, fully), nnf_pos(f->right, fully));
    case LtlOp::Next: return ltl_next(nnf_neg(f->left, fully));
    case LtlOp::Until:
      // no Release primitive: the negation stays in front of the U
      fully = false;
      return ltl_not(ltl_until(nnf_pos(f->left, fully), nnf_pos(f->right, fully)));
    case LtlOp::Eventually: return ltl_always(nnf_neg(f->left, fully));
    case LtlOp::Always: return ltl_eventually(nnf_neg(f->left, fully));
  }
  return ltl_not(f);
}

}  // namespace

NnfResult ltl_nnf(const Ltl& f) {
  bool fully = true;
  Ltl out = nnf_pos(f, fully);
  return {out, fully};
}

// ---------------------------------------------------------------------------
// Ultimately periodic interpretations
// ---------------------------------------------------------------------------

UPInterpretation::UPInterpretation(std::vector<LtlState> prefix,
                                   std::vector<LtlState> loop)
    : prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty())
    throw std::invalid_argument("UP interpretation needs a nonempty loop");
}

std::size_t UPInterpretation::reduce(std::size_t t) const {
  std::size_t k = prefix_.size();
  if (t < k) return t;
  return k + (t - k) % loop_.size();
}

const LtlState& UPInterpretation::state(std::size_t t) const {
  std::size_t pos = reduce(t);
  return pos < prefix_.size() ? prefix_[pos] : loop_[pos - prefix_.size()];
}

bool UPInterpretation::holds(const std::string& var, std::size_t t) const {
  const LtlState& s = state(t);
  return s.count(var) != 0;
}

bool UPInterpretation::uses(const std::string& var) const {
  for (const auto& s : prefix_)
    if (s.count(var)) return true;
  for (const auto& s : loop_)
    if (s.count(var)) return true;
  return false;
}

UPInterpretation UPInterpretation::unrolled(std::size_t min_prefix) const {
  std::size_t k = std::max(prefix_.size(), min_prefix);
  std::vector<LtlState> pre;
  pre.reserve(k);
  for (std::size_t t = 0; t < k; ++t) pre.push_back(state(t));
  std::vector<LtlState> lp;
  lp.reserve(loop_.size());
  for (std::size_t j = 0; j < loop_.size(); ++j) lp.push_back(state(k + j));
  return UPInterpretation(std::move(pre), std::move(lp));
}

namespace {

// Labels every position of one lasso unrolling, bottom-up per subformula.
// An Until witness beyond position max(i,k)+l-1 reduces to one inside that
// window, so the bounded search is exact.
class Labeler {
public:
  explicit Labeler(const UPInterpretation& sigma)
      : sigma_(sigma),
        k_(sigma.prefix_index()),
        l_(sigma.period()),
        n_(sigma.prefix_index() + sigma.period()) {}

  const std::vector<char>& labels(const Ltl& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    std::vector<char> v(n_, 0);
    switch (f->op) {
      case LtlOp::Top:
        std::fill(v.begin(), v.end(), 1);
        break;
      case LtlOp::Prop:
        for (std::size_t i = 0; i < n_; ++i) v[i] = sigma_.holds(f->name, i);
        break;
      case LtlOp::Not: {
        const auto& a = labels(f->left);
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i];
        break;
      }
      case LtlOp::And: {
        const auto& a = labels(f->left);
        const auto& b = labels(f->right);
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] && b[i];
        break;
      }
      case LtlOp::Or: {
        const auto& a = labels(f->left);
        const auto& b = labels(f->right);
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] || b[i];
        break;
      }
      case LtlOp::Implies: {
        const auto& a = labels(f->left);
        const auto& b = labels(f->right);
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i] || b[i];
        break;
      }
      case LtlOp::Iff: {
        const auto& a = labels(f->left);
        const auto& b = labels(f->right);
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] == b[i];
        break;
      }
      case LtlOp::Next: {
        const auto& a = labels(f->left);
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[sigma_.reduce(i + 1)];
        break;
      }
      case LtlOp::Until: {
        const auto& a = labels(f->left);
        const auto& b = labels(f->right);
        for (std::size_t i = 0; i < n_; ++i) v[i] = until_at(i, a, b);
        break;
      }
      case LtlOp::Eventually: {
        const auto& a = labels(f->left);
        for (std::size_t i = 0; i < n_; ++i) {
          char r = 0;
          for (std::size_t j = i; j <= window_end(i) && !r; ++j)
            r = a[sigma_.reduce(j)];
          v[i] = r;
        }
        break;
      }
      case LtlOp::Always: {
        const auto& a = labels(f->left);
        for (std::size_t i = 0; i < n_; ++i) {
          char r = 1;
          for (std::size_t j = i; j <= window_end(i) && r; ++j)
            r = a[sigma_.reduce(j)];
          v[i] = r;
        }
        break;
      }
    }
    return memo_.emplace(f.get(), std::move(v)).first->second;
  }

private:
  std::size_t window_end(std::size_t i) const {
    return std::max(i, k_) + l_ - 1;
  }

  char until_at(std::size_t i, const std::vector<char>& a,
                const std::vector<char>& b) const {
    for (std::size_t j = i; j <= window_end(i); ++j) {
      if (b[sigma_.reduce(j)]) return 1;
      if (!a[sigma_.reduce(j)]) return 0;
    }
    return 0;
  }

  const UPInterpretation& sigma_;
  std::size_t k_;
  std::size_t l_;
  std::size_t n_;
  std::map<const LtlNode*, std::vector<char>> memo_;
};

}  // namespace

bool eval_ltl(const UPInterpretation& sigma, std::size_t t, const Ltl& f) {
  Labeler lab(sigma);
  return lab.labels(f)[sigma.reduce(t)] != 0;
}

}  // namespace ltlsps
