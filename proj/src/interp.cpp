#include "ltlsps/interp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ltlsps {

namespace {
bool starts_with(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}
}  // namespace

bool is_reserved_ltl_side(const std::string& name) {
  return name == kLessMark || name == kEndMark || starts_with(name, kElimPrefix);
}

bool is_reserved_schema_side(const std::string& name) {
  return name == kPrefixMark || name == kLoopMark ||
         starts_with(name, kSubPrefix) || starts_with(name, kSubPrimedPrefix);
}

SegmentReport segment_report(const UPInterpretation& sigma,
                             const std::string& var) {
  SegmentReport r;
  r.var = var;
  for (const auto& s : sigma.loop())
    if (s.count(var)) return r;  // true infinitely often: no segment
  std::size_t k = 0;
  bool ended = false;
  for (const auto& s : sigma.prefix()) {
    if (s.count(var)) {
      if (ended) return r;  // not downward closed
      ++k;
    } else {
      ended = true;
    }
  }
  r.kind = SegmentReport::Kind::Initial;
  r.length = k;
  return r;
}

SegmentReport segment_report(const SchemaInterpretation& interp,
                             const std::string& var) {
  SegmentReport r;
  r.var = var;
  std::size_t n = interp.n_value;
  std::size_t k = 0;
  bool ended = false;
  for (std::size_t t = 0; t <= n; ++t) {
    if (interp.base.holds(var, t)) {
      if (ended) return r;
      ++k;
    } else {
      ended = true;
    }
  }
  if (k > n) return r;  // the variable must be false at n
  r.kind = SegmentReport::Kind::TwoInitial;
  r.short_length = k;
  r.long_length = n + 1;
  return r;
}

UPInterpretation embed_schema_interp(const SchemaInterpretation& interp) {
  std::size_t horizon = interp.n_value + 1;  // room for eq_n at n
  for (const auto& [name, idx] : interp.base.trues()) {
    if (is_reserved_ltl_side(name))
      throw std::invalid_argument("interpretation uses reserved variable '" +
                                  name + "'");
    horizon = std::max(horizon, idx + 1);
  }
  std::vector<LtlState> prefix(horizon);
  for (std::size_t t = 0; t < interp.n_value; ++t) prefix[t].insert(kLessMark);
  prefix[interp.n_value].insert(kEndMark);
  for (const auto& [name, idx] : interp.base.trues())
    prefix[idx].insert(name);
  return UPInterpretation(std::move(prefix), {LtlState{}});
}

SchemaInterpretation project_initial_segment(const UPInterpretation& sigma,
                                             std::size_t horizon) {
  SegmentReport r = segment_report(sigma, kLessMark);
  if (r.kind != SegmentReport::Kind::Initial)
    throw std::invalid_argument(
        "interpretation is not an initial segment for lt_n");
  SchemaInterpretation out;
  out.n_value = r.length;
  std::size_t end = std::max(horizon, sigma.prefix_index() + sigma.period());
  for (std::size_t t = 0; t < end; ++t)
    for (const auto& name : sigma.state(t))
      if (name != kLessMark && name != kEndMark) out.base.set(name, t, true);
  return out;
}

SchemaInterpretation embed_up_interp(const UPInterpretation& sigma) {
  std::size_t k = sigma.prefix_index();
  std::size_t n = k + sigma.period() - 1;
  SchemaInterpretation out;
  out.n_value = n;
  for (std::size_t t = 0; t <= n; ++t) {
    for (const auto& name : sigma.state(t)) {
      if (is_reserved_schema_side(name))
        throw std::invalid_argument("interpretation uses reserved variable '" +
                                    name + "'");
      out.base.set(name, t, true);
    }
    if (t < k) out.base.set(kPrefixMark, t, true);
  }
  out.base.set(kLoopMark, k, true);
  return out;
}

UPInterpretation project_two_segment(const SchemaInterpretation& interp) {
  SegmentReport r = segment_report(interp, kPrefixMark);
  if (r.kind != SegmentReport::Kind::TwoInitial)
    throw std::invalid_argument(
        "interpretation is not a 2-initial segment for pfx");
  std::size_t k = r.short_length;
  std::size_t n = interp.n_value;
  std::vector<LtlState> prefix(k);
  std::vector<LtlState> loop(n - k + 1);
  for (const auto& [name, idx] : interp.base.trues()) {
    if (idx > n || is_reserved_schema_side(name)) continue;
    if (idx < k)
      prefix[idx].insert(name);
    else
      loop[idx - k].insert(name);
  }
  return UPInterpretation(std::move(prefix), std::move(loop));
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

std::string render_schema_interp(const SchemaInterpretation& interp) {
  std::ostringstream out;
  out << "n=" << interp.n_value << ";";
  std::map<std::string, std::vector<std::size_t>> by_var;
  for (const auto& [name, idx] : interp.base.trues())
    by_var[name].push_back(idx);
  for (auto& [name, idxs] : by_var) {
    out << " " << name << ":";
    for (std::size_t i = 0; i < idxs.size(); ++i)
      out << (i ? "," : " ") << idxs[i];
    out << ";";
  }
  return out.str();
}

namespace {

struct TextCursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + what);
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected an identifier");
    return std::string(text.substr(start, pos - start));
  }
  std::size_t number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    return std::stoull(std::string(text.substr(start, pos - start)));
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, 1, static_cast<int>(pos) + 1);
  }
};

}  // namespace

SchemaInterpretation parse_schema_interp(std::string_view text) {
  TextCursor c{text};
  if (!c.eat_word("n")) c.fail("expected 'n=<nat>;'");
  c.expect('=', "after 'n'");
  SchemaInterpretation out;
  out.n_value = c.number();
  c.expect(';', "after the parameter value");
  while (!c.at_end()) {
    std::string var = c.ident();
    c.expect(':', "after variable name");
    for (;;) {
      out.base.set(var, c.number(), true);
      if (!c.eat(',')) break;
    }
    c.expect(';', "after index list");
  }
  return out;
}

std::string render_up_interp(const UPInterpretation& sigma) {
  std::ostringstream out;
  out << "prefix:";
  for (const auto& s : sigma.prefix()) {
    out << " {";
    bool first = true;
    for (const auto& v : s) {
      out << (first ? "" : " ") << v;
      first = false;
    }
    out << "}";
  }
  out << " ; loop:";
  for (const auto& s : sigma.loop()) {
    out << " {";
    bool first = true;
    for (const auto& v : s) {
      out << (first ? "" : " ") << v;
      first = false;
    }
    out << "}";
  }
  return out.str();
}

namespace {
std::vector<LtlState> parse_states(TextCursor& c, char terminator) {
  std::vector<LtlState> states;
  for (;;) {
    c.skip_ws();
    if (c.pos >= c.text.size()) break;
    if (c.text[c.pos] == terminator) break;
    c.expect('{', "to open a state");
    LtlState s;
    while (!c.eat('}')) s.insert(c.ident());
    states.push_back(std::move(s));
  }
  return states;
}
}  // namespace

UPInterpretation parse_up_interp(std::string_view text) {
  TextCursor c{text};
  if (!c.eat_word("prefix")) c.fail("expected 'prefix:'");
  c.expect(':', "after 'prefix'");
  std::vector<LtlState> prefix = parse_states(c, ';');
  c.expect(';', "between prefix and loop");
  if (!c.eat_word("loop")) c.fail("expected 'loop:'");
  c.expect(':', "after 'loop'");
  std::vector<LtlState> loop = parse_states(c, ';');
  if (!c.at_end()) c.fail("trailing input after the loop states");
  if (loop.empty()) c.fail("the loop needs at least one state");
  return UPInterpretation(std::move(prefix), std::move(loop));
}

}  // namespace ltlsps
