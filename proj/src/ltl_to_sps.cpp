#include "ltlsps/ltl_to_sps.hpp"

#include <map>
#include <stdexcept>

namespace ltlsps {

Sch sps_prefix_segment() {
  Sch high = sch_not(sch_atom(kPrefixMark, ArithExpr::param()));
  Sch down = sch_bigand(
      "i", sch_implies(sch_atom(kPrefixMark, ArithExpr::bound("i", 1)),
                       sch_atom(kPrefixMark, ArithExpr::bound("i"))));
  return sch_and(high, down);
}

Sch sps_loop_marker_axiom() {
  Sch at0 = sch_iff(sch_not(sch_atom(kPrefixMark, ArithExpr::ground(0))),
                    sch_atom(kLoopMark, ArithExpr::ground(0)));
  Sch step = sch_bigand(
      "i",
      sch_iff(sch_and(sch_atom(kPrefixMark, ArithExpr::bound("i")),
                      sch_not(sch_atom(kPrefixMark, ArithExpr::bound("i", 1)))),
              sch_atom(kLoopMark, ArithExpr::bound("i", 1))));
  return sch_and(at0, step);
}

// ---------------------------------------------------------------------------
// Finite-semantics translation
// ---------------------------------------------------------------------------

namespace {

ArithExpr shift(const ArithExpr& e, std::size_t k) {
  ArithExpr out = e;
  out.offset += k;
  return out;
}

struct FiniteTranslator {
  std::size_t fresh = 0;

  std::string new_var() { return "i" + std::to_string(fresh++); }

  Sch run(const Ltl& f, const ArithExpr& e) {
    switch (f->op) {
      case LtlOp::Top: return sch_top();
      case LtlOp::Prop: return sch_atom(f->name, e);
      case LtlOp::Not: return sch_not(run(f->left, e));
      case LtlOp::And: return sch_and(run(f->left, e), run(f->right, e));
      case LtlOp::Or: return sch_or(run(f->left, e), run(f->right, e));
      case LtlOp::Implies:
        return sch_implies(run(f->left, e), run(f->right, e));
      case LtlOp::Iff: return sch_iff(run(f->left, e), run(f->right, e));
      case LtlOp::Next: return run(f->left, shift(e, 1));
      case LtlOp::Eventually: {
        std::string i = new_var();
        return sch_iter(false, i, e, {ArithExpr::param(), false},
                        run(f->left, ArithExpr::bound(i)));
      }
      case LtlOp::Always: {
        std::string i = new_var();
        // from time 0 this is the 0..n conjunction shortcut, which keeps the
        // safety fragment inside the sequential class
        if (e.base == IndexBase::Ground && e.offset == 0)
          return sch_bigand_incl(i, run(f->left, ArithExpr::bound(i)));
        return sch_iter(true, i, e, {ArithExpr::param(), false},
                        run(f->left, ArithExpr::bound(i)));
      }
      case LtlOp::Until: {
        std::string i = new_var();
        std::string j = new_var();
        Sch body = sch_and(
            run(f->right, ArithExpr::bound(i)),
            sch_iter(true, j, e, {ArithExpr::bound(i), true},
                     run(f->left, ArithExpr::bound(j))));
        return sch_iter(false, i, e, {ArithExpr::param(), false}, body);
      }
    }
    throw std::logic_error("unhandled formula node");
  }
};

}  // namespace

SchemaWithVerdict ltl_to_schema_finite(const Ltl& f) {
  FiniteTranslator tr;
  Sch s = tr.run(f, ArithExpr::ground(0));
  return {s, classify_sps(s)};
}

// ---------------------------------------------------------------------------
// Direct lasso-faithful translation (non-sequential output)
// ---------------------------------------------------------------------------

namespace {

struct DirectTranslator {
  std::size_t fresh = 0;

  std::string new_var() { return "i" + std::to_string(fresh++); }

  // bigor i = e .. n . (true): satisfied exactly when e <= n.
  Sch le_n(const ArithExpr& e) {
    return sch_iter(false, new_var(), e, {ArithExpr::param(), false},
                    sch_top());
  }
  Sch lt_n(const ArithExpr& e) { return le_n(shift(e, 1)); }
  Sch eq_n(const ArithExpr& e) {
    return sch_and(le_n(e), sch_not(lt_n(e)));
  }
  // inside the loop: at or past the prefix index, and at most n
  Sch loop_at(const ArithExpr& e) {
    return sch_and(sch_not(sch_atom(kPrefixMark, e)), le_n(e));
  }

  Sch next_at_loop_start(const Ltl& f) {
    std::string i = new_var();
    return sch_bigand_incl(
        i, sch_implies(sch_atom(kLoopMark, ArithExpr::bound(i)),
                       run(f, ArithExpr::bound(i))));
  }

  Sch run(const Ltl& f, const ArithExpr& e) {
    bool at_zero = e.base == IndexBase::Ground && e.offset == 0;
    switch (f->op) {
      case LtlOp::Top: return sch_top();
      case LtlOp::Prop: return sch_atom(f->name, e);
      case LtlOp::Not: return sch_not(run(f->left, e));
      case LtlOp::And: return sch_and(run(f->left, e), run(f->right, e));
      case LtlOp::Or: return sch_or(run(f->left, e), run(f->right, e));
      case LtlOp::Implies:
        return sch_implies(run(f->left, e), run(f->right, e));
      case LtlOp::Iff: return sch_iff(run(f->left, e), run(f->right, e));
      case LtlOp::Next:
        return sch_or(sch_and(lt_n(e), run(f->left, shift(e, 1))),
                      sch_and(eq_n(e), next_at_loop_start(f->left)));
      case LtlOp::Eventually: {
        // exists a witness from e up to n, or wrap around inside the loop
        std::string i = new_var();
        Sch forward = sch_iter(false, i, e, {ArithExpr::param(), false},
                               run(f->left, ArithExpr::bound(i)));
        if (at_zero) return forward;  // the wrap case is subsumed at time 0
        std::string j = new_var();
        Sch wrap = sch_and(
            loop_at(e),
            sch_iter(false, j, ArithExpr::ground(0), {e, false},
                     sch_and(loop_at(ArithExpr::bound(j)),
                             run(f->left, ArithExpr::bound(j)))));
        return sch_or(forward, wrap);
      }
      case LtlOp::Always: {
        // holds up to n and, when e lies in the loop, on the loop before e
        std::string i = new_var();
        Sch forward = sch_iter(true, i, e, {ArithExpr::param(), false},
                               run(f->left, ArithExpr::bound(i)));
        if (at_zero) return forward;
        std::string j = new_var();
        Sch wrap = sch_or(
            sch_not(loop_at(e)),
            sch_iter(true, j, ArithExpr::ground(0), {e, false},
                     sch_implies(loop_at(ArithExpr::bound(j)),
                                 run(f->left, ArithExpr::bound(j)))));
        return sch_and(forward, wrap);
      }
      case LtlOp::Until: {
        std::string i = new_var();
        std::string j = new_var();
        Sch forward = sch_iter(
            false, i, e, {ArithExpr::param(), false},
            sch_and(sch_iter(true, j, e, {ArithExpr::bound(i), true},
                             run(f->left, ArithExpr::bound(j))),
                    run(f->right, ArithExpr::bound(i))));
        if (at_zero) return forward;
        std::string i2 = new_var();
        std::string j2 = new_var();
        Sch wrap_witness = sch_and(
            sch_and(loop_at(ArithExpr::bound(i2)),
                    sch_iter(true, j2, ArithExpr::ground(0),
                             {ArithExpr::bound(i2), true},
                             sch_implies(loop_at(ArithExpr::bound(j2)),
                                         run(f->left, ArithExpr::bound(j2))))),
            run(f->right, ArithExpr::bound(i2)));
        std::string j3 = new_var();
        Sch wrap = sch_and(
            sch_and(loop_at(e),
                    sch_iter(true, j3, e, {ArithExpr::param(), false},
                             run(f->left, ArithExpr::bound(j3)))),
            sch_iter(false, i2, ArithExpr::ground(0), {e, false},
                     wrap_witness));
        return sch_or(forward, wrap);
      }
    }
    throw std::logic_error("unhandled formula node");
  }
};

}  // namespace

SchemaWithVerdict ltl_to_schema_direct(const Ltl& f) {
  DirectTranslator tr;
  Sch core = tr.run(f, ArithExpr::ground(0));
  Sch s = sch_and(sch_and(core, sps_prefix_segment()), sps_loop_marker_axiom());
  return {s, classify_sps(s)};
}

// ---------------------------------------------------------------------------
// Structure-preserving translation into SPS
// ---------------------------------------------------------------------------

namespace {

// With specialize_fg off, F and G are rewritten through U before the
// subformula table is built; the sugar connectives stay structural.
Ltl normalize(const Ltl& f, bool specialize_fg) {
  Ltl a = f->left ? normalize(f->left, specialize_fg) : nullptr;
  Ltl b = f->right ? normalize(f->right, specialize_fg) : nullptr;
  switch (f->op) {
    case LtlOp::Eventually:
      if (!specialize_fg) return ltl_until(ltl_top(), a);
      return ltl_eventually(a);
    case LtlOp::Always:
      if (!specialize_fg) return ltl_not(ltl_until(ltl_top(), ltl_not(a)));
      return ltl_always(a);
    case LtlOp::Top:
    case LtlOp::Prop: return f;
    case LtlOp::Not: return ltl_not(a);
    case LtlOp::And: return ltl_and(a, b);
    case LtlOp::Or: return ltl_or(a, b);
    case LtlOp::Implies: return ltl_implies(a, b);
    case LtlOp::Iff: return ltl_iff(a, b);
    case LtlOp::Next: return ltl_next(a);
    case LtlOp::Until: return ltl_until(a, b);
  }
  return f;
}

bool is_temporal(const Ltl& f) {
  return f->op == LtlOp::Next || f->op == LtlOp::Until ||
         f->op == LtlOp::Eventually || f->op == LtlOp::Always;
}

bool needs_primed(const Ltl& f) {
  return f->op == LtlOp::Until || f->op == LtlOp::Eventually ||
         f->op == LtlOp::Always;
}

SubformulaTable build_table(const Ltl& normalized,
                            const LtlToSpsOptions& opts) {
  SubformulaTable table;
  std::size_t ordinal = 0;
  for (const Ltl& sub : subformulas(normalized)) {
    if (sub->op == LtlOp::Prop) continue;
    if (opts.inline_propositional && !is_temporal(sub)) continue;
    SubformulaEntry e;
    e.formula = sub;
    e.var = kSubPrefix + std::to_string(ordinal);
    if (needs_primed(sub)) e.primed = kSubPrimedPrefix + std::to_string(ordinal);
    ++ordinal;
    table.entries.push_back(std::move(e));
  }
  return table;
}

struct StructuralTranslator {
  const SubformulaTable& table;
  const LtlToSpsOptions& opts;

  // |f| at index e: the subformula variable when one exists, the proposition
  // itself for atoms, and the direct structural expansion otherwise.
  Sch ref(const Ltl& f, const ArithExpr& e) const {
    if (f->op == LtlOp::Prop) return sch_atom(f->name, e);
    if (const SubformulaEntry* entry = table.find(f))
      return sch_atom(entry->var, e);
    switch (f->op) {
      case LtlOp::Top: return sch_top();
      case LtlOp::Not: return sch_not(ref(f->left, e));
      case LtlOp::And: return sch_and(ref(f->left, e), ref(f->right, e));
      case LtlOp::Or: return sch_or(ref(f->left, e), ref(f->right, e));
      case LtlOp::Implies:
        return sch_implies(ref(f->left, e), ref(f->right, e));
      case LtlOp::Iff: return sch_iff(ref(f->left, e), ref(f->right, e));
      default:
        throw std::logic_error("temporal subformula missing from the table");
    }
  }

  Sch all_i(Sch body) const { return sch_bigand("i", std::move(body)); }
  Sch all_i_incl(Sch body) const {
    return sch_bigand_incl("i", std::move(body));
  }
  static ArithExpr at_i() { return ArithExpr::bound("i"); }
  static ArithExpr at_i1() { return ArithExpr::bound("i", 1); }
  static ArithExpr at_n() { return ArithExpr::param(); }

  // bigand_incl i.(eq_k[i] -> x[i]): the value of x at the loop start.
  Sch at_loop_start(const Ltl& f) const {
    return all_i_incl(sch_implies(sch_atom(kLoopMark, at_i()), ref(f, at_i())));
  }
  Sch at_loop_start_var(const std::string& var) const {
    return all_i_incl(sch_implies(sch_atom(kLoopMark, at_i()),
                                  sch_atom(var, at_i())));
  }

  std::vector<Sch> axiom(const SubformulaEntry& e) const {
    const Ltl& f = e.formula;
    auto v = [&](const ArithExpr& idx) { return sch_atom(e.var, idx); };
    auto pv = [&](const ArithExpr& idx) { return sch_atom(e.primed, idx); };
    switch (f->op) {
      case LtlOp::Top:
        return {all_i_incl(v(at_i()))};
      case LtlOp::Not:
        return {all_i_incl(sch_iff(v(at_i()), sch_not(ref(f->left, at_i()))))};
      case LtlOp::And:
        return {all_i_incl(sch_iff(
            v(at_i()), sch_and(ref(f->left, at_i()), ref(f->right, at_i()))))};
      case LtlOp::Or:
        return {all_i_incl(sch_iff(
            v(at_i()), sch_or(ref(f->left, at_i()), ref(f->right, at_i()))))};
      case LtlOp::Implies:
        return {all_i_incl(sch_iff(
            v(at_i()),
            sch_implies(ref(f->left, at_i()), ref(f->right, at_i()))))};
      case LtlOp::Iff:
        return {all_i_incl(sch_iff(
            v(at_i()), sch_iff(ref(f->left, at_i()), ref(f->right, at_i()))))};
      case LtlOp::Next:
        return {all_i(sch_iff(v(at_i()), ref(f->left, at_i1()))),
                sch_iff(v(at_n()), at_loop_start(f->left))};
      case LtlOp::Until: {
        const Ltl& a = f->left;
        const Ltl& b = f->right;
        Sch step = all_i(sch_iff(
            v(at_i()),
            sch_or(ref(b, at_i()), sch_and(ref(a, at_i()), v(at_i1())))));
        Sch end = sch_iff(
            v(at_n()),
            sch_or(ref(b, at_n()),
                   sch_and(ref(a, at_n()), at_loop_start_var(e.primed))));
        Sch pstep = all_i(sch_iff(
            pv(at_i()),
            sch_or(ref(b, at_i()), sch_and(ref(a, at_i()), pv(at_i1())))));
        Sch pend = sch_iff(pv(at_n()), ref(b, at_n()));
        return {step, end, pstep, pend};
      }
      case LtlOp::Always: {
        // The primed chain pins the value on the loop; without it the
        // variable could be false around a loop where the body always holds.
        const Ltl& a = f->left;
        Sch step = all_i(sch_iff(
            v(at_i()), sch_and(ref(a, at_i()), v(at_i1()))));
        Sch end = sch_iff(
            v(at_n()),
            sch_and(ref(a, at_n()), at_loop_start_var(e.primed)));
        Sch pstep = all_i(sch_iff(
            pv(at_i()), sch_and(ref(a, at_i()), pv(at_i1()))));
        Sch pend = sch_iff(pv(at_n()), ref(a, at_n()));
        return {step, end, pstep, pend};
      }
      case LtlOp::Eventually: {
        const Ltl& a = f->left;
        Sch step = all_i(sch_iff(
            v(at_i()), sch_or(ref(a, at_i()), v(at_i1()))));
        Sch end = sch_iff(
            v(at_n()),
            sch_or(ref(a, at_n()), at_loop_start_var(e.primed)));
        Sch pstep = all_i(sch_iff(
            pv(at_i()), sch_or(ref(a, at_i()), pv(at_i1()))));
        Sch pend = sch_iff(pv(at_n()), ref(a, at_n()));
        return {step, end, pstep, pend};
      }
      default:
        throw std::logic_error("no axiom for this connective");
    }
  }
};

// The inversion maps index 0 to n and i to n-i. The only index shapes the
// structural translation emits are 0, n, i, i+1 inside 0..n-1 iterations and
// i inside 0..n iterations, so the rewrite below is total.
Sch invert_indices(const Sch& s, int context /*0 outer, 1 excl, 2 incl*/) {
  if (!s) return s;
  if (s->op == SchemaOp::Atom) {
    ArithExpr e = s->index;
    switch (context) {
      case 0:
        if (e.base == IndexBase::Ground && e.offset == 0)
          return sch_atom(s->prop, ArithExpr::param());
        if (e.base == IndexBase::Param && e.offset == 0)
          return sch_atom(s->prop, ArithExpr::ground(0));
        break;
      case 1:
        if (e.base == IndexBase::Bound && e.offset == 0)
          return sch_atom(s->prop, ArithExpr::bound(e.var, 1));
        if (e.base == IndexBase::Bound && e.offset == 1)
          return sch_atom(s->prop, ArithExpr::bound(e.var, 0));
        break;
      case 2:
        if (e.base == IndexBase::Bound && e.offset == 0) return s;
        break;
    }
    throw std::logic_error("index form not coverable by time inversion: " +
                           render_schema(s));
  }
  auto copy = std::make_shared<SchemaNode>(*s);
  int inner = context;
  if (s->op == SchemaOp::BigAnd || s->op == SchemaOp::BigOr)
    inner = 1;
  else if (s->op == SchemaOp::BigAndIncl)
    inner = 2;
  else if (s->op == SchemaOp::GeneralIter)
    throw std::logic_error("cannot invert a general iteration");
  copy->left = invert_indices(s->left, inner);
  copy->right = invert_indices(s->right, s->op == SchemaOp::BigAnd ||
                                                 s->op == SchemaOp::BigOr ||
                                                 s->op == SchemaOp::BigAndIncl
                                             ? context
                                             : inner);
  return copy;
}

void check_reserved(const Ltl& f) {
  for (const auto& name : ltl_props(f))
    if (is_reserved_schema_side(name))
      throw std::invalid_argument("formula uses reserved variable '" + name +
                                  "'");
}

}  // namespace

const SubformulaEntry* SubformulaTable::find(const Ltl& f) const {
  for (const auto& e : entries)
    if (ltl_equal(e.formula, f)) return &e;
  return nullptr;
}

SubformulaTable subformula_table(const Ltl& f, const LtlToSpsOptions& opts) {
  return build_table(normalize(f, opts.specialize_fg), opts);
}

Sch ltl_to_sps(const Ltl& f, const LtlToSpsOptions& opts) {
  check_reserved(f);
  Ltl normalized = normalize(f, opts.specialize_fg);
  SubformulaTable table = build_table(normalized, opts);
  StructuralTranslator tr{table, opts};

  Sch out = tr.ref(normalized, ArithExpr::ground(0));
  for (const auto& entry : table.entries)
    for (const Sch& ax : tr.axiom(entry)) out = sch_and(out, ax);
  out = sch_and(sch_and(out, sps_prefix_segment()), sps_loop_marker_axiom());
  if (opts.invert_time) out = invert_indices(out, 0);
  return out;
}

SchemaInterpretation embed_up_interp(const UPInterpretation& sigma,
                                     const Ltl& f,
                                     const LtlToSpsOptions& opts) {
  SchemaInterpretation out = embed_up_interp(sigma);
  std::size_t n = out.n_value;
  SubformulaTable table = subformula_table(f, opts);
  for (const auto& entry : table.entries) {
    for (std::size_t t = 0; t <= n; ++t) {
      if (eval_ltl(sigma, t, entry.formula))
        out.base.set(entry.var, t, true);
      if (entry.primed.empty()) continue;
      // obligation met no later than index n
      bool met = false;
      if (entry.formula->op == LtlOp::Until) {
        const Ltl& a = entry.formula->left;
        const Ltl& b = entry.formula->right;
        bool blocked = false;
        for (std::size_t u = t; u <= n && !met && !blocked; ++u) {
          if (eval_ltl(sigma, u, b))
            met = true;
          else if (!eval_ltl(sigma, u, a))
            blocked = true;
        }
      } else if (entry.formula->op == LtlOp::Eventually) {
        for (std::size_t u = t; u <= n && !met; ++u)
          met = eval_ltl(sigma, u, entry.formula->left);
      } else {  // Always: the body holds from t through n
        met = true;
        for (std::size_t u = t; u <= n && met; ++u)
          met = eval_ltl(sigma, u, entry.formula->left);
      }
      if (met) out.base.set(entry.primed, t, true);
    }
  }
  return out;
}

CeilSizeReport ltl_to_sps_size_report(const Ltl& f,
                                      const LtlToSpsOptions& opts) {
  CeilSizeReport r;
  r.input_size = ltl_size(f);
  r.output_size = schema_node_count(ltl_to_sps(f, opts));
  r.ratio = r.input_size == 0
                ? 0.0
                : static_cast<double>(r.output_size) / r.input_size;
  return r;
}

}  // namespace ltlsps
