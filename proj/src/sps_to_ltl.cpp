#include "ltlsps/sps_to_ltl.hpp"

#include <stdexcept>

namespace ltlsps {

Ltl ltl_initial_segment() {
  Ltl lt = ltl_prop(kLessMark);
  return ltl_until(lt, ltl_always(ltl_not(lt)));
}

Ltl ltl_end_marker_axiom() {
  Ltl lt = ltl_prop(kLessMark);
  Ltl eq = ltl_prop(kEndMark);
  Ltl step = ltl_always(
      ltl_iff(ltl_and(lt, ltl_not(ltl_next(lt))), ltl_next(eq)));
  Ltl start = ltl_iff(ltl_not(lt), eq);
  return ltl_and(step, start);
}

Sch expand_incl_iterations(const Sch& s) {
  if (!s) return s;
  if (s->op == SchemaOp::BigAndIncl) {
    Sch body = expand_incl_iterations(s->left);
    // substitute n for the binder in a copy of the body
    struct Subst {
      const std::string& var;
      Sch run(const Sch& t) const {
        if (!t) return t;
        if (t->op == SchemaOp::Atom && t->index.base == IndexBase::Bound &&
            t->index.var == var)
          return sch_atom(t->prop, ArithExpr::param(t->index.offset));
        bool shadows = (t->op == SchemaOp::BigAnd || t->op == SchemaOp::BigOr ||
                        t->op == SchemaOp::BigAndIncl ||
                        t->op == SchemaOp::GeneralIter) &&
                       t->var == var;
        if (shadows) return t;
        auto copy = std::make_shared<SchemaNode>(*t);
        copy->left = run(t->left);
        copy->right = run(t->right);
        return copy;
      }
    } subst{s->var};
    return sch_and(sch_bigand(s->var, body), subst.run(body));
  }
  auto copy = std::make_shared<SchemaNode>(*s);
  copy->left = expand_incl_iterations(s->left);
  copy->right = expand_incl_iterations(s->right);
  return copy;
}

namespace {

Sch nnf_pos(const Sch& s);
Sch nnf_neg(const Sch& s);

Sch nnf_pos(const Sch& s) {
  switch (s->op) {
    case SchemaOp::Top:
    case SchemaOp::Atom: return s;
    case SchemaOp::Not: return nnf_neg(s->left);
    case SchemaOp::And: return sch_and(nnf_pos(s->left), nnf_pos(s->right));
    case SchemaOp::Or: return sch_or(nnf_pos(s->left), nnf_pos(s->right));
    case SchemaOp::Implies:
      return sch_implies(nnf_pos(s->left), nnf_pos(s->right));
    case SchemaOp::Iff: return sch_iff(nnf_pos(s->left), nnf_pos(s->right));
    case SchemaOp::BigAnd: return sch_bigand(s->var, nnf_pos(s->left));
    case SchemaOp::BigOr: return sch_bigor(s->var, nnf_pos(s->left));
    case SchemaOp::BigAndIncl:
      return nnf_pos(expand_incl_iterations(s));
    case SchemaOp::GeneralIter:
      return sch_iter(s->conj, s->var, s->lower, s->upper, nnf_pos(s->left));
  }
  return s;
}

Sch nnf_neg(const Sch& s) {
  switch (s->op) {
    case SchemaOp::Top:
    case SchemaOp::Atom: return sch_not(s);
    case SchemaOp::Not: return nnf_pos(s->left);
    case SchemaOp::And: return sch_or(nnf_neg(s->left), nnf_neg(s->right));
    case SchemaOp::Or: return sch_and(nnf_neg(s->left), nnf_neg(s->right));
    case SchemaOp::Implies:
      return sch_and(nnf_pos(s->left), nnf_neg(s->right));
    case SchemaOp::Iff:
      // !(a <-> b) == (!a <-> b)
      return sch_iff(nnf_neg(s->left), nnf_pos(s->right));
    case SchemaOp::BigAnd: return sch_bigor(s->var, nnf_neg(s->left));
    case SchemaOp::BigOr: return sch_bigand(s->var, nnf_neg(s->left));
    case SchemaOp::BigAndIncl:
      return nnf_neg(expand_incl_iterations(s));
    case SchemaOp::GeneralIter:
      return sch_iter(!s->conj, s->var, s->lower, s->upper, nnf_neg(s->left));
  }
  return sch_not(s);
}

// Replaces every iterated disjunction by a fresh proposition q with the
// running-or axiom !q[0] & bigand i.(q[i+1] <-> body | q[i]); q[n] then
// carries the value of the disjunction without introducing an eventuality.
Sch eliminate_big_ors(const Sch& s, std::vector<Sch>& axioms,
                      std::size_t& counter) {
  if (!s) return s;
  if (s->op == SchemaOp::BigOr) {
    Sch body = eliminate_big_ors(s->left, axioms, counter);
    std::string q = kElimPrefix + std::to_string(counter++);
    Sch chain = sch_bigand(
        s->var, sch_iff(sch_atom(q, ArithExpr::bound(s->var, 1)),
                        sch_or(body, sch_atom(q, ArithExpr::bound(s->var)))));
    axioms.push_back(
        sch_and(sch_not(sch_atom(q, ArithExpr::ground(0))), chain));
    return sch_atom(q, ArithExpr::param());
  }
  auto copy = std::make_shared<SchemaNode>(*s);
  copy->left = eliminate_big_ors(s->left, axioms, counter);
  copy->right = eliminate_big_ors(s->right, axioms, counter);
  return copy;
}

// Rewrite |, -> and <-> into !/& so the core translation cases suffice.
Sch desugar(const Sch& s) {
  if (!s) return s;
  Sch a = desugar(s->left);
  Sch b = desugar(s->right);
  switch (s->op) {
    case SchemaOp::Or: return sch_not(sch_and(sch_not(a), sch_not(b)));
    case SchemaOp::Implies: return sch_not(sch_and(a, sch_not(b)));
    case SchemaOp::Iff:
      return sch_and(sch_not(sch_and(a, sch_not(b))),
                     sch_not(sch_and(b, sch_not(a))));
    case SchemaOp::BigOr: return sch_not(sch_bigand(s->var, sch_not(a)));
    default: {
      auto copy = std::make_shared<SchemaNode>(*s);
      copy->left = a;
      copy->right = b;
      return copy;
    }
  }
}

struct FloorTranslator {
  bool negative_literals;  // dedicated cases for !p[e]

  Ltl atom(const Sch& s, bool negate) const {
    Ltl p = ltl_prop(s->prop);
    if (negate) p = ltl_not(p);
    switch (s->index.base) {
      case IndexBase::Ground:
      case IndexBase::Bound: return ltl_next_pow(p, s->index.offset);
      case IndexBase::Param:
        return ltl_always(ltl_implies(ltl_prop(kEndMark),
                                      ltl_next_pow(p, s->index.offset)));
    }
    return p;
  }

  Ltl run(const Sch& s) const {
    switch (s->op) {
      case SchemaOp::Top: return ltl_top();
      case SchemaOp::Atom: return atom(s, false);
      case SchemaOp::Not:
        if (negative_literals && s->left->op == SchemaOp::Atom)
          return atom(s->left, true);
        return ltl_not(run(s->left));
      case SchemaOp::And: return ltl_and(run(s->left), run(s->right));
      case SchemaOp::Or: return ltl_or(run(s->left), run(s->right));
      case SchemaOp::Implies: return ltl_implies(run(s->left), run(s->right));
      case SchemaOp::Iff: return ltl_iff(run(s->left), run(s->right));
      case SchemaOp::BigAnd:
        return ltl_always(ltl_implies(ltl_prop(kLessMark), run(s->left)));
      case SchemaOp::BigOr:
        return ltl_not(ltl_always(
            ltl_implies(ltl_prop(kLessMark), ltl_not(run(s->left)))));
      case SchemaOp::BigAndIncl:
      case SchemaOp::GeneralIter:
        throw std::logic_error("iteration form not handled by the core cases");
    }
    throw std::logic_error("unhandled schema node");
  }
};

}  // namespace

Sch schema_nnf(const Sch& s) { return nnf_pos(s); }

Ltl schema_to_ltl(const Sch& s, const SchemaToLtlOptions& opts) {
  SpsVerdict verdict = classify_sps(s);
  if (!verdict.is_sps) {
    std::string msg = "not a sequential schema:";
    for (const auto& v : verdict.violations)
      msg += std::string(" [") + sps_rule_name(v.rule) + " at " + v.location +
             "]";
    throw std::invalid_argument(msg);
  }
  for (const auto& name : schema_props(s))
    if (is_reserved_ltl_side(name))
      throw std::invalid_argument("schema uses reserved variable '" + name +
                                  "'");

  Sch core = expand_incl_iterations(s);
  if (opts.nnf_first) {
    core = nnf_pos(core);
    std::vector<Sch> axioms;
    std::size_t counter = 0;
    core = eliminate_big_ors(core, axioms, counter);
    for (const auto& ax : axioms) core = sch_and(core, ax);
  }
  if (!opts.inline_sugar) core = desugar(core);

  FloorTranslator tr{opts.nnf_first};
  Ltl prop_part = tr.run(core);
  return ltl_and(ltl_and(prop_part, ltl_initial_segment()),
                 ltl_end_marker_axiom());
}

TranslationSizeReport schema_to_ltl_size_report(const Sch& s) {
  TranslationSizeReport r;
  r.input = size_metrics(s);
  r.input_size = r.input.sym_size;
  r.output_size = ltl_size(schema_to_ltl(s));
  r.ratio = r.input_size == 0
                ? 0.0
                : static_cast<double>(r.output_size) / r.input_size;
  return r;
}

}  // namespace ltlsps
