#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltlsps/interp.hpp"
#include "ltlsps/ltl_to_sps.hpp"
#include "ltlsps/mc.hpp"
#include "ltlsps/solve.hpp"
#include "test_util.hpp"

using namespace ltlsps;
using namespace ltlsps::testutil;

namespace {

std::vector<Sch> conjuncts(const Sch& s) {
  std::vector<Sch> out;
  std::function<void(const Sch&)> walk = [&](const Sch& t) {
    if (t->op == SchemaOp::And) {
      walk(t->left);
      walk(t->right);
    } else {
      out.push_back(t);
    }
  };
  walk(s);
  return out;
}

bool contains_conjunct(const Sch& s, const Sch& wanted) {
  for (const auto& c : conjuncts(s))
    if (schema_equal(c, wanted)) return true;
  return false;
}

// Embedding for the finite-semantics translation: the original propositions
// copied up to n + depth, with no marker variables.
SchemaInterpretation finite_embed(const UPInterpretation& sigma,
                                  std::size_t depth) {
  SchemaInterpretation out;
  out.n_value = sigma.prefix_index() + sigma.period() - 1;
  for (std::size_t t = 0; t <= out.n_value + depth; ++t)
    for (const auto& name : sigma.state(t)) out.base.set(name, t, true);
  return out;
}

}  // namespace

TEST_CASE("prefix segment schema and loop marker axiom have the fixed shape") {
  CHECK(schema_equal(sps_prefix_segment(),
                     parse_schema("!pfx[n] & bigand i . (pfx[i+1] -> pfx[i])")));
  CHECK(schema_equal(
      sps_loop_marker_axiom(),
      parse_schema("(!pfx[0] <-> eq_k[0]) & "
                   "bigand i . (pfx[i] & !pfx[i+1] <-> eq_k[i+1])")));
  // n=0 instance degenerates to !pfx[0]
  Prop zero = instantiate(sps_prefix_segment(), 0);
  CHECK(prop_equal_flat(zero, prop_and(prop_not(prop_atom("pfx", 0)),
                                       prop_top())));
}

TEST_CASE("models of the prefix segment schema are the 2-initial segments") {
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<PropAtomRef> atoms;
    for (std::size_t t = 0; t <= n; ++t) atoms.push_back({"pfx", t});
    Prop inst = instantiate(sps_prefix_segment(), n);
    for_each_interp(atoms, [&](const PropInterpretation& m) {
      bool model = eval_prop(m, inst);
      bool segment = segment_report(SchemaInterpretation{m, n}, "pfx").kind ==
                     SegmentReport::Kind::TwoInitial;
      REQUIRE(model == segment);
    });
  }
}

TEST_CASE("under the loop marker axiom eq_k holds exactly at the short length") {
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<PropAtomRef> atoms;
    for (std::size_t t = 0; t <= n; ++t) {
      atoms.push_back({"pfx", t});
      atoms.push_back({"eq_k", t});
    }
    Prop seg = instantiate(sps_prefix_segment(), n);
    Prop ax = instantiate(sps_loop_marker_axiom(), n);
    for_each_interp(atoms, [&](const PropInterpretation& m) {
      if (!eval_prop(m, seg) || !eval_prop(m, ax)) return;
      std::size_t k =
          segment_report(SchemaInterpretation{m, n}, "pfx").short_length;
      for (std::size_t t = 0; t <= n; ++t)
        REQUIRE(m.holds("eq_k", t) == (t == k));
    });
  }
}

TEST_CASE("finite translation reproduces the textbook shapes") {
  SchemaWithVerdict r = ltl_to_schema_finite(parse_ltl("X p -> F p"));
  CHECK(render_schema(r.schema) == "p[1] -> bigor i0 = 0 .. n . (p[i0])");
  CHECK_FALSE(r.verdict.is_sps);

  // the schema is falsifiable at n=0 even though the formula is valid
  Prop inst0 = instantiate(r.schema, 0);
  auto counter = prop_sat(prop_not(inst0));
  REQUIRE(counter.has_value());
  CHECK_FALSE(eval_prop(*counter, inst0));
  CHECK(counter->holds("p", 1));
  CHECK(ltl_sat_bounded(ltl_not(parse_ltl("X p -> F p")), 4).status ==
        BoundedVerdict::Status::UnsatUpToBound);

  // safety shapes collapse to the 0..n conjunction shortcut and stay
  // sequential
  SchemaWithVerdict g = ltl_to_schema_finite(parse_ltl("G (p | q)"));
  CHECK(render_schema(g.schema) == "bigand_incl i0 . (p[i0] | q[i0])");
  CHECK(g.verdict.is_sps);

  CHECK(ltl_to_schema_finite(ltl_top()).schema->op == SchemaOp::Top);
}

TEST_CASE("finite translation agrees with the lasso semantics on the X/G "
          "fragment") {
  std::vector<const char*> fragment = {
      "G p",         "G (p | q)",       "G (p -> X q)", "X X p",
      "G X p",       "p & G (q | X p)", "G G (p | X X q)",
  };
  for (const char* text : fragment) {
    Ltl f = parse_ltl(text);
    Ltl nf = ltl_nnf(f).formula;
    std::size_t depth = x_depth(nf);
    Sch s = ltl_to_schema_finite(nf).schema;
    for (const auto& sigma : all_lassos({"p", "q"}, 3)) {
      SchemaInterpretation I = finite_embed(sigma, depth);
      bool finite_side = eval_prop(I.base, instantiate(s, I.n_value));
      bool ltl_side = eval_ltl(sigma, 0, f);
      CAPTURE(text);
      CAPTURE(render_up_interp(sigma));
      REQUIRE(finite_side == ltl_side);
    }
  }
}

TEST_CASE("direct translation simplifies F and G at time zero") {
  Sch fp = ltl_to_schema_direct(parse_ltl("F p")).schema;
  CHECK(contains_conjunct(fp, parse_schema("bigor i0 = 0 .. n . (p[i0])")));
  Sch gp = ltl_to_schema_direct(parse_ltl("G p")).schema;
  CHECK(contains_conjunct(gp, parse_schema("bigand i0 = 0 .. n . (p[i0])")));
  Sch top = ltl_to_schema_direct(ltl_top()).schema;
  CHECK(conjuncts(top)[0]->op == SchemaOp::Top);
  // the output is not sequential in general
  CHECK_FALSE(ltl_to_schema_direct(parse_ltl("p U q")).verdict.is_sps);
}

TEST_CASE("direct translation agrees with the lasso semantics") {
  std::vector<const char*> formulas = {
      "F p", "G p", "p U q", "X p", "X X p", "G (p | q)",
      "F (p & q)", "X (p U q)", "p U (q U p)", "F G p",
  };
  for (const char* text : formulas) {
    Ltl f = parse_ltl(text);
    Sch s = ltl_to_schema_direct(f).schema;
    for (const auto& sigma : all_lassos({"p", "q"}, 3)) {
      SchemaInterpretation I = embed_up_interp(sigma);
      bool schema_side = eval_prop(I.base, instantiate(s, I.n_value));
      bool ltl_side = eval_ltl(sigma, 0, f);
      CAPTURE(text);
      CAPTURE(render_up_interp(sigma));
      REQUIRE(schema_side == ltl_side);
    }
  }
}

TEST_CASE("structural translation of a bare atom") {
  Sch s = ltl_to_sps(parse_ltl("p"));
  Sch expected = sch_and(
      sch_and(sch_atom("p", ArithExpr::ground(0)), sps_prefix_segment()),
      sps_loop_marker_axiom());
  CHECK(schema_equal(s, expected));
}

TEST_CASE("structural translation unfolds the next-step axiom") {
  Sch s = ltl_to_sps(parse_ltl("X p & X !p"));
  // subformula variables are numbered bottom-up: Xp, !p, X!p, the conjunction
  CHECK(contains_conjunct(
      s, parse_schema("bigand i . (sub_0[i] <-> p[i+1])")));
  CHECK(contains_conjunct(
      s,
      parse_schema("sub_0[n] <-> bigand_incl i . (eq_k[i] -> p[i])")));
  CHECK(contains_conjunct(
      s, parse_schema("bigand_incl i . (sub_1[i] <-> !p[i])")));
  CHECK(contains_conjunct(
      s, parse_schema("bigand i . (sub_2[i] <-> sub_1[i+1])")));
  CHECK(contains_conjunct(s, parse_schema("!pfx[n] & bigand i . (pfx[i+1] -> "
                                          "pfx[i])")));
  CHECK(conjuncts(s)[0]->prop == "sub_3");
  // and the formula is unsatisfiable at every parameter value
  for (std::size_t n = 0; n <= 3; ++n)
    CHECK_FALSE(prop_sat(instantiate(s, n)).has_value());
}

TEST_CASE("subformula tables are deterministic and skip atoms") {
  SubformulaTable t = subformula_table(parse_ltl("X p & X !p"));
  REQUIRE(t.entries.size() == 4);
  CHECK(t.entries[0].var == "sub_0");
  CHECK(render_ltl(t.entries[0].formula) == "X p");
  CHECK(t.entries[1].var == "sub_1");
  CHECK(t.entries[3].var == "sub_3");
  CHECK(t.find(parse_ltl("p")) == nullptr);
  CHECK(t.find(parse_ltl("X p")) != nullptr);

  // the until entry pairs a primed variable
  t = subformula_table(parse_ltl("p U q"));
  REQUIRE(t.entries.size() == 1);
  CHECK(t.entries[0].var == "sub_0");
  CHECK(t.entries[0].primed == "subp_0");

  // with inlined propositional connectives only temporal nodes remain
  LtlToSpsOptions inl;
  inl.inline_propositional = true;
  t = subformula_table(parse_ltl("X p & X !p"), inl);
  REQUIRE(t.entries.size() == 2);
  CHECK(render_ltl(t.entries[0].formula) == "X p");
  CHECK(render_ltl(t.entries[1].formula) == "X !p");
}

TEST_CASE("the translation always lands in the sequential class") {
  std::mt19937 rng(61);
  for (int t = 0; t < 120; ++t) {
    Ltl f = gen_ltl(rng, 10, {"p", "q"});
    for (bool fg : {false, true})
      for (bool inl : {false, true})
        for (bool inv : {false, true}) {
          LtlToSpsOptions opts{inv, fg, inl};
          Sch s = ltl_to_sps(f, opts);
          CAPTURE(render_ltl(f));
          CAPTURE(fg);
          CAPTURE(inl);
          CAPTURE(inv);
          REQUIRE(classify_sps(s).is_sps);
        }
  }
}

TEST_CASE("instances mention only indices up to n") {
  std::mt19937 rng(67);
  for (int t = 0; t < 60; ++t) {
    Ltl f = gen_ltl(rng, 10, {"p", "q"});
    Sch s = ltl_to_sps(f);
    for (std::size_t n = 0; n <= 5; ++n)
      for (const auto& atom : prop_atoms(instantiate(s, n)))
        REQUIRE(atom.index <= n);
  }
}

TEST_CASE("lasso models map onto schema models and back") {
  std::mt19937 rng(71);
  std::vector<Ltl> corpus;
  for (int t = 0; t < 60; ++t) corpus.push_back(gen_ltl(rng, 9, {"p", "q"}));
  corpus.push_back(parse_ltl("p U q"));
  corpus.push_back(parse_ltl("G F p"));
  corpus.push_back(parse_ltl("!(p U q)"));
  auto lassos = all_lassos({"p", "q"}, 3);

  for (const Ltl& f : corpus) {
    Sch s = ltl_to_sps(f);
    // forward: a UP model extended with subformula values models the schema
    for (const auto& sigma : lassos) {
      SchemaInterpretation I = embed_up_interp(sigma, f);
      bool schema_side = eval_prop(I.base, instantiate(s, I.n_value));
      bool ltl_side = eval_ltl(sigma, 0, f);
      CAPTURE(render_ltl(f));
      CAPTURE(render_up_interp(sigma));
      REQUIRE(schema_side == ltl_side);
    }
    // backward: every propositional model of an instance projects to a UP
    // model of the formula
    for (std::size_t n = 0; n <= 2; ++n) {
      Prop inst = instantiate(s, n);
      prop_enumerate(inst, {}, [&](const PropInterpretation& m) {
        UPInterpretation sigma = project_two_segment({m, n});
        CAPTURE(render_ltl(f));
        REQUIRE(eval_ltl(sigma, 0, f));
        return true;
      });
    }
  }
}

TEST_CASE("specialized F/G axioms keep the bijection") {
  LtlToSpsOptions fg;
  fg.specialize_fg = true;
  std::vector<const char*> formulas = {
      "F p", "G p", "!G p", "!F p", "G F p", "F G p",
      "!G p & !F !p",  // the under-constrained G pitfall: must stay UNSAT
      "G (p -> F q)",
  };
  auto lassos = all_lassos({"p", "q"}, 3);
  for (const char* text : formulas) {
    Ltl f = parse_ltl(text);
    Sch s = ltl_to_sps(f, fg);
    for (const auto& sigma : lassos) {
      SchemaInterpretation I = embed_up_interp(sigma, f, fg);
      CAPTURE(text);
      CAPTURE(render_up_interp(sigma));
      REQUIRE(eval_prop(I.base, instantiate(s, I.n_value)) ==
              eval_ltl(sigma, 0, f));
    }
    for (std::size_t n = 0; n <= 2; ++n) {
      prop_enumerate(instantiate(s, n), {}, [&](const PropInterpretation& m) {
        UPInterpretation sigma = project_two_segment({m, n});
        CAPTURE(text);
        REQUIRE(eval_ltl(sigma, 0, f));
        return true;
      });
    }
  }
}

TEST_CASE("inlined propositional connectives keep the bijection") {
  LtlToSpsOptions inl;
  inl.inline_propositional = true;
  std::mt19937 rng(73);
  auto lassos = all_lassos({"p", "q"}, 3);
  for (int t = 0; t < 40; ++t) {
    Ltl f = gen_ltl(rng, 9, {"p", "q"});
    Sch s = ltl_to_sps(f, inl);
    for (const auto& sigma : lassos) {
      SchemaInterpretation I = embed_up_interp(sigma, f, inl);
      CAPTURE(render_ltl(f));
      REQUIRE(eval_prop(I.base, instantiate(s, I.n_value)) ==
              eval_ltl(sigma, 0, f));
    }
  }
}

TEST_CASE("time inversion mirrors the axioms and preserves satisfiability") {
  LtlToSpsOptions inv;
  inv.invert_time = true;
  Sch s = ltl_to_sps(parse_ltl("p"), inv);
  // the prefix-segment conjuncts come out mirrored
  CHECK(contains_conjunct(s, parse_schema("!pfx[0]")));
  CHECK(contains_conjunct(s, parse_schema("bigand i . (pfx[i] -> pfx[i+1])")));
  CHECK(contains_conjunct(s, parse_schema("!pfx[n] <-> eq_k[n]")));
  CHECK(contains_conjunct(
      s, parse_schema("bigand i . (pfx[i+1] & !pfx[i] <-> eq_k[i])")));
  CHECK(conjuncts(s)[0]->index == ArithExpr::param());

  std::mt19937 rng(79);
  for (int t = 0; t < 40; ++t) {
    Ltl f = gen_ltl(rng, 9, {"p", "q"});
    Sch plain = ltl_to_sps(f);
    Sch mirrored = ltl_to_sps(f, inv);
    for (std::size_t n = 0; n <= 3; ++n) {
      CAPTURE(render_ltl(f));
      CAPTURE(n);
      REQUIRE(prop_sat(instantiate(plain, n)).has_value() ==
              prop_sat(instantiate(mirrored, n)).has_value());
    }
  }
}

TEST_CASE("reserved names are rejected") {
  CHECK_THROWS_AS(ltl_to_sps(parse_ltl("pfx")), std::invalid_argument);
  CHECK_THROWS_AS(ltl_to_sps(parse_ltl("X eq_k")), std::invalid_argument);
  CHECK_THROWS_AS(ltl_to_sps(parse_ltl("sub_0")), std::invalid_argument);
  CHECK_THROWS_AS(embed_up_interp(UPInterpretation({}, {LtlState{"sub_1"}})),
                  std::invalid_argument);
}

TEST_CASE("until axiom count and linear size") {
  // one U contributes its four axiom conjuncts
  SubformulaTable t = subformula_table(parse_ltl("p U q"));
  Sch s = ltl_to_sps(parse_ltl("p U q"));
  // |pUq|_0, four Ax_U conjuncts, two segment conjuncts, two marker conjuncts
  CHECK(conjuncts(s).size() == 9);
  (void)t;

  CeilSizeReport tiny = ltl_to_sps_size_report(parse_ltl("p"));
  CHECK(tiny.output_size < 40);
  std::mt19937 rng(83);
  double max_ratio = 0;
  for (int i = 0; i < 80; ++i) {
    Ltl f = gen_ltl(rng, 10, {"p", "q"});
    CeilSizeReport r = ltl_to_sps_size_report(f);
    max_ratio = std::max(max_ratio, r.ratio);
  }
  CHECK(max_ratio < 40.0);
}
