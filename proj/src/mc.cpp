#include "ltlsps/mc.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ltlsps/ltl_to_sps.hpp"
#include "ltlsps/solve.hpp"

namespace ltlsps {

const std::string& TransitionSystem::step(const std::string& state,
                                          const std::string& action) const {
  auto it = delta.find({state, action});
  if (it == delta.end())
    throw std::invalid_argument("no transition for (" + state + ", " + action +
                                ")");
  return it->second;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

bool valid_name(const std::string& w) {
  if (w.empty()) return false;
  for (char c : w)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

TransitionSystem parse_ts(std::string_view text) {
  TransitionSystem ts;
  std::set<std::string> known_states, known_actions;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(msg, lineno, 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> words = split_words(line);
    if (words.empty()) continue;
    const std::string& head = words[0];
    if (head == "states:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!valid_name(words[i])) fail("bad state name '" + words[i] + "'");
        if (!known_states.insert(words[i]).second)
          fail("duplicate state '" + words[i] + "'");
        ts.states.push_back(words[i]);
      }
    } else if (head == "actions:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!valid_name(words[i])) fail("bad action name '" + words[i] + "'");
        if (!known_actions.insert(words[i]).second)
          fail("duplicate action '" + words[i] + "'");
        ts.actions.push_back(words[i]);
      }
    } else if (head == "label") {
      if (words.size() < 2 || words[1].back() != ':')
        fail("expected 'label <state>: props...'");
      std::string state = words[1].substr(0, words[1].size() - 1);
      if (!known_states.count(state)) fail("unknown state '" + state + "'");
      for (std::size_t i = 2; i < words.size(); ++i) {
        std::string p = words[i];
        bool negated = !p.empty() && p[0] == '!';
        if (negated) p.erase(0, 1);  // negative labels are documentation only
        if (!valid_name(p)) fail("bad proposition '" + words[i] + "'");
        if (!negated) ts.labels[state].insert(p);
      }
      ts.labels.try_emplace(state);
    } else if (head == "trans") {
      if (words.size() != 4) fail("expected 'trans <state> <action> <state>'");
      if (!known_states.count(words[1])) fail("unknown state '" + words[1] + "'");
      if (!known_actions.count(words[2]))
        fail("unknown action '" + words[2] + "'");
      if (!known_states.count(words[3])) fail("unknown state '" + words[3] + "'");
      auto [it, inserted] = ts.delta.insert({{words[1], words[2]}, words[3]});
      (void)it;
      if (!inserted)
        fail("duplicate transition for (" + words[1] + ", " + words[2] + ")");
    } else if (head == "initial:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (!known_states.count(words[i]))
          fail("unknown state '" + words[i] + "'");
        ts.initial.push_back(words[i]);
      }
    } else {
      fail("unknown directive '" + head + "'");
    }
  }
  if (ts.states.empty()) throw ParseError("no states declared", lineno, 1);
  if (ts.actions.empty()) throw ParseError("no actions declared", lineno, 1);
  for (const auto& s : ts.states) {
    ts.labels.try_emplace(s);
    for (const auto& a : ts.actions)
      if (!ts.delta.count({s, a}))
        throw ParseError("transition function not total: missing (" + s +
                             ", " + a + ")",
                         lineno, 1);
  }
  return ts;
}

std::string render_ts(const TransitionSystem& ts) {
  std::ostringstream out;
  out << "states:";
  for (const auto& s : ts.states) out << " " << s;
  out << "\nactions:";
  for (const auto& a : ts.actions) out << " " << a;
  out << "\n";
  for (const auto& s : ts.states) {
    out << "label " << s << ":";
    for (const auto& p : ts.labels.at(s)) out << " " << p;
    out << "\n";
  }
  for (const auto& s : ts.states)
    for (const auto& a : ts.actions)
      out << "trans " << s << " " << a << " " << ts.delta.at({s, a}) << "\n";
  if (!ts.initial.empty()) {
    out << "initial:";
    for (const auto& s : ts.initial) out << " " << s;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Schema encoding
// ---------------------------------------------------------------------------

namespace {
std::string st_var(const std::string& s) { return "st_" + s; }
std::string act_var(const std::string& a) { return "act_" + a; }
}  // namespace

Sch encode_transition_system(const TransitionSystem& ts,
                             const std::set<std::string>& extra_props) {
  std::set<std::string> props = extra_props;
  for (const auto& [state, labels] : ts.labels)
    props.insert(labels.begin(), labels.end());
  for (const auto& p : props)
    if (p.rfind("st_", 0) == 0 || p.rfind("act_", 0) == 0)
      throw std::invalid_argument("proposition '" + p +
                                  "' collides with the encoding variables");

  auto i0 = [] { return ArithExpr::bound("i"); };
  auto i1 = [] { return ArithExpr::bound("i", 1); };
  std::vector<Sch> clauses;

  for (const auto& s : ts.states)
    for (const auto& a : ts.actions)
      clauses.push_back(sch_implies(
          sch_and(sch_atom(st_var(s), i0()), sch_atom(act_var(a), i0())),
          sch_atom(st_var(ts.delta.at({s, a})), i1())));

  for (const auto& s : ts.states) {
    const auto& pos = ts.labels.at(s);
    std::vector<Sch> lits;
    for (const auto& p : props) {
      Sch atom = sch_atom(p, i0());
      lits.push_back(pos.count(p) ? atom : sch_not(atom));
    }
    if (lits.empty()) continue;
    clauses.push_back(sch_implies(sch_atom(st_var(s), i0()), sch_conj(lits)));
  }

  for (const auto& s : ts.states) {
    std::vector<Sch> others;
    for (const auto& o : ts.states)
      if (o != s) others.push_back(sch_not(sch_atom(st_var(o), i0())));
    Sch rhs = others.empty() ? sch_top() : sch_conj(others);
    clauses.push_back(sch_iff(sch_atom(st_var(s), i0()), rhs));
  }
  // redundant given state exclusivity, kept for a self-contained encoding
  for (const auto& a : ts.actions) {
    std::vector<Sch> others;
    for (const auto& o : ts.actions)
      if (o != a) others.push_back(sch_not(sch_atom(act_var(o), i0())));
    Sch rhs = others.empty() ? sch_top() : sch_conj(others);
    clauses.push_back(sch_iff(sch_atom(act_var(a), i0()), rhs));
  }

  Sch body = sch_conj(clauses);
  Sch out = sch_bigand_incl("i", body);
  if (!ts.initial.empty()) {
    Sch init;
    for (const auto& s : ts.initial) {
      Sch atom = sch_atom(st_var(s), ArithExpr::ground(0));
      init = init ? sch_or(init, atom) : atom;
    }
    out = sch_and(out, init);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Safety checking
// ---------------------------------------------------------------------------

std::size_t x_depth(const Ltl& f) {
  if (!f) return 0;
  std::size_t d = std::max(x_depth(f->left), x_depth(f->right));
  return f->op == LtlOp::Next ? d + 1 : d;
}

namespace {

// -> and <-> rewritten away so the normal form stays inside the fragment.
Ltl expand_bool_sugar(const Ltl& f) {
  if (!f) return f;
  Ltl a = expand_bool_sugar(f->left);
  Ltl b = expand_bool_sugar(f->right);
  switch (f->op) {
    case LtlOp::Implies: return ltl_or(ltl_not(a), b);
    case LtlOp::Iff:
      return ltl_or(ltl_and(a, b), ltl_and(ltl_not(a), ltl_not(b)));
    case LtlOp::Top:
    case LtlOp::Prop: return f;
    case LtlOp::Not: return ltl_not(a);
    case LtlOp::And: return ltl_and(a, b);
    case LtlOp::Or: return ltl_or(a, b);
    case LtlOp::Next: return ltl_next(a);
    case LtlOp::Until: return ltl_until(a, b);
    case LtlOp::Eventually: return ltl_eventually(a);
    case LtlOp::Always: return ltl_always(a);
  }
  return f;
}

bool literal(const Ltl& f) {
  return f->op == LtlOp::Top || f->op == LtlOp::Prop ||
         (f->op == LtlOp::Not &&
          (f->left->op == LtlOp::Top || f->left->op == LtlOp::Prop));
}

bool in_safety_fragment(const Ltl& f) {
  if (literal(f)) return true;
  switch (f->op) {
    case LtlOp::And:
    case LtlOp::Or:
      return in_safety_fragment(f->left) && in_safety_fragment(f->right);
    case LtlOp::Next:
    case LtlOp::Always: return in_safety_fragment(f->left);
    default: return false;
  }
}

// Strong finite-trace satisfaction for the co-safety negation: the word
// w[0..horizon] must witness f regardless of how it continues. X beyond the
// horizon is unwitnessed, hence false.
bool cosafety_holds(const std::vector<std::set<std::string>>& w, std::size_t t,
                    std::size_t horizon, const Ltl& f) {
  switch (f->op) {
    case LtlOp::Top: return true;
    case LtlOp::Prop: return t <= horizon && w[t].count(f->name) != 0;
    case LtlOp::Not:
      if (f->left->op == LtlOp::Top) return false;
      return t <= horizon && w[t].count(f->left->name) == 0;
    case LtlOp::And:
      return cosafety_holds(w, t, horizon, f->left) &&
             cosafety_holds(w, t, horizon, f->right);
    case LtlOp::Or:
      return cosafety_holds(w, t, horizon, f->left) ||
             cosafety_holds(w, t, horizon, f->right);
    case LtlOp::Next:
      return t < horizon && cosafety_holds(w, t + 1, horizon, f->left);
    case LtlOp::Eventually:
      for (std::size_t u = t; u <= horizon; ++u)
        if (cosafety_holds(w, u, horizon, f->left)) return true;
      return false;
    default:
      throw std::logic_error("connective outside the co-safety fragment");
  }
}

std::vector<std::string> decode_path(const TransitionSystem& ts,
                                     const PropInterpretation& model,
                                     std::size_t n) {
  std::vector<std::string> path;
  for (std::size_t t = 0; t <= n; ++t) {
    const std::string* found = nullptr;
    for (const auto& s : ts.states) {
      if (!model.holds("st_" + s, t)) continue;
      if (found)
        throw std::logic_error("encoding error: two states active at " +
                               std::to_string(t));
      found = &s;
    }
    if (!found)
      throw std::logic_error("encoding error: no state active at " +
                             std::to_string(t));
    path.push_back(*found);
  }
  for (std::size_t t = 0; t + 1 <= n; ++t) {
    const std::string* act = nullptr;
    for (const auto& a : ts.actions)
      if (model.holds("act_" + a, t)) {
        act = &a;
        break;
      }
    if (!act || ts.delta.at({path[t], *act}) != path[t + 1])
      throw std::logic_error("encoding error: path breaks the transition "
                             "function at " +
                             std::to_string(t));
  }
  return path;
}

}  // namespace

McVerdict check_safety(const TransitionSystem& ts, const Ltl& property,
                       std::size_t n_max) {
  NnfResult pos = ltl_nnf(expand_bool_sugar(property));
  if (!pos.fully_nnf || !in_safety_fragment(pos.formula))
    throw std::invalid_argument(
        "property outside the checkable fragment (literals, &, |, X, G)");
  Ltl negated = ltl_nnf(ltl_not(pos.formula)).formula;

  Sch system = encode_transition_system(ts, ltl_props(negated));
  Sch query = sch_and(system, ltl_to_schema_finite(negated).schema);

  for (std::size_t n = 0; n <= n_max; ++n) {
    Prop inst = instantiate(query, n);
    std::vector<PropAtomRef> projection;
    for (std::size_t t = 0; t <= n; ++t) {
      for (const auto& s : ts.states) projection.push_back({"st_" + s, t});
      for (const auto& a : ts.actions) projection.push_back({"act_" + a, t});
    }
    McVerdict found;
    bool have = false;
    prop_enumerate(inst, projection, [&](const PropInterpretation& model) {
      std::vector<std::string> path = decode_path(ts, model, n);
      std::vector<std::set<std::string>> word;
      for (const auto& s : path) word.push_back(ts.labels.at(s));
      // keep only violations the finite word genuinely witnesses; models
      // that lean on unconstrained atoms past the horizon are skipped
      for (std::size_t h = 0; h <= n; ++h) {
        if (cosafety_holds(word, 0, h, negated)) {
          found = McVerdict{false, n, path, h};
          have = true;
          return false;
        }
      }
      return true;
    });
    if (have) return found;
  }
  return McVerdict{true, n_max, {}, 0};
}

}  // namespace ltlsps
