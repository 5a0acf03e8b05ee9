#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltlsps/interp.hpp"
#include "ltlsps/sps_to_ltl.hpp"
#include "test_util.hpp"

using namespace ltlsps;
using namespace ltlsps::testutil;

namespace {

SchemaInterpretation schema_interp(
    std::initializer_list<std::pair<std::string, std::size_t>> trues,
    std::size_t n) {
  SchemaInterpretation out;
  out.n_value = n;
  for (const auto& [name, idx] : trues) out.base.set(name, idx, true);
  return out;
}

}  // namespace

TEST_CASE("segment detection on the LTL side") {
  // p true at 0..3, then never again
  UPInterpretation sigma(
      {LtlState{"p", "q"}, LtlState{"p"}, LtlState{"p"}, LtlState{"p", "q"}},
      {LtlState{"q"}});
  SegmentReport r = segment_report(sigma, "p");
  REQUIRE(r.kind == SegmentReport::Kind::Initial);
  CHECK(r.length == 4);
  // q recurs forever: no segment
  CHECK(segment_report(sigma, "q").kind == SegmentReport::Kind::None);

  UPInterpretation all_false({}, {LtlState{}});
  r = segment_report(all_false, "p");
  REQUIRE(r.kind == SegmentReport::Kind::Initial);
  CHECK(r.length == 0);

  // a gap breaks downward closure
  UPInterpretation gap({LtlState{"p"}, LtlState{}, LtlState{"p"}},
                       {LtlState{}});
  CHECK(segment_report(gap, "p").kind == SegmentReport::Kind::None);
}

TEST_CASE("segment detection on the schema side") {
  SchemaInterpretation two =
      schema_interp({{"p", 0}, {"p", 1}, {"p", 2}}, 5);
  SegmentReport r = segment_report(two, "p");
  REQUIRE(r.kind == SegmentReport::Kind::TwoInitial);
  CHECK(r.short_length == 3);
  CHECK(r.long_length == 6);

  CHECK(segment_report(schema_interp({{"p", 1}}, 1), "p").kind ==
        SegmentReport::Kind::None);
  // true everywhere on 0..n: the short length would exceed n
  CHECK(segment_report(schema_interp({{"p", 0}, {"p", 1}}, 1), "p").kind ==
        SegmentReport::Kind::None);
  r = segment_report(schema_interp({}, 0), "p");
  REQUIRE(r.kind == SegmentReport::Kind::TwoInitial);
  CHECK(r.short_length == 0);
  CHECK(r.long_length == 1);
}

TEST_CASE("schema interpretations embed as initial segments") {
  SchemaInterpretation I = schema_interp(
      {{"p", 0}, {"q", 0}, {"p", 1}, {"p", 2}, {"q", 3}}, 3);
  UPInterpretation sigma = embed_schema_interp(I);
  for (std::size_t t : {0u, 1u, 2u}) CHECK(sigma.holds(kLessMark, t));
  CHECK_FALSE(sigma.holds(kLessMark, 3));
  CHECK(sigma.holds("p", 0));
  CHECK(sigma.holds("q", 0));
  CHECK(sigma.holds("p", 1));
  CHECK_FALSE(sigma.holds("q", 1));
  CHECK(sigma.holds("p", 2));
  CHECK(sigma.holds("q", 3));
  CHECK_FALSE(sigma.holds("p", 3));
  CHECK_FALSE(sigma.holds("p", 7));
  // the end marker sits exactly at n
  CHECK(sigma.holds(kEndMark, 3));
  CHECK_FALSE(sigma.holds(kEndMark, 2));
  CHECK_FALSE(sigma.holds(kEndMark, 4));

  UPInterpretation zero = embed_schema_interp(schema_interp({}, 0));
  CHECK_FALSE(zero.uses(kLessMark));
  CHECK(zero.holds(kEndMark, 0));

  UPInterpretation one = embed_schema_interp(schema_interp({{"p", 0}}, 1));
  CHECK(one.holds("p", 0));
  CHECK(one.holds(kLessMark, 0));
  CHECK_FALSE(one.holds(kLessMark, 1));

  CHECK_THROWS_AS(embed_schema_interp(schema_interp({{"lt_n", 0}}, 1)),
                  std::invalid_argument);
}

TEST_CASE("initial segments project back to schema interpretations") {
  // lt_n true at 0..3, p/q as recorded, p keeps holding in the loop
  UPInterpretation sigma({LtlState{"q", "lt_n"}, LtlState{"q", "lt_n"},
                          LtlState{"p", "lt_n"}, LtlState{"p", "q", "lt_n"}},
                         {LtlState{"p"}});
  SchemaInterpretation I = project_initial_segment(sigma, 6);
  CHECK(I.n_value == 4);
  CHECK(I.base.holds("q", 0));
  CHECK(I.base.holds("q", 1));
  CHECK(I.base.holds("p", 2));
  CHECK(I.base.holds("p", 3));
  CHECK(I.base.holds("q", 3));
  CHECK(I.base.holds("p", 4));
  CHECK(I.base.holds("p", 5));
  CHECK_FALSE(I.base.holds("lt_n", 0));

  CHECK(project_initial_segment(UPInterpretation({}, {LtlState{}})).n_value ==
        0);

  UPInterpretation not_segment({LtlState{}}, {LtlState{"lt_n"}});
  CHECK_THROWS_AS(project_initial_segment(not_segment), std::invalid_argument);
}

TEST_CASE("embed/project round-trips on the schema side") {
  // exhaustive over supports within indices <= 4 on one variable and n <= 4
  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<PropAtomRef> atoms;
    for (std::size_t t = 0; t <= 4; ++t) atoms.push_back({"p", t});
    for_each_interp(atoms, [&](const PropInterpretation& m) {
      SchemaInterpretation I{m, n};
      SchemaInterpretation back =
          project_initial_segment(embed_schema_interp(I), 5);
      REQUIRE(back == I);
    });
  }
  // and embed is the inverse on initial segments for lt_n, up to the
  // recorded horizon (projection is finite-support by construction)
  for (const auto& sigma : all_lassos({"p", "lt_n"}, 4)) {
    if (segment_report(sigma, kLessMark).kind != SegmentReport::Kind::Initial)
      continue;
    std::size_t horizon = sigma.prefix_index() + sigma.period();
    UPInterpretation again =
        embed_schema_interp(project_initial_segment(sigma));
    for (std::size_t t = 0; t < horizon; ++t) {
      REQUIRE(again.holds("p", t) == sigma.holds("p", t));
      REQUIRE(again.holds(kLessMark, t) == sigma.holds(kLessMark, t));
    }
  }
}

TEST_CASE("UP interpretations embed as 2-initial segments") {
  UPInterpretation sigma(
      {LtlState{"p", "q", "r"}, LtlState{"p"}},
      {LtlState{"q", "r"}, LtlState{"p", "q"}, LtlState{"q", "r"}});
  SchemaInterpretation I = embed_up_interp(sigma);
  CHECK(I.n_value == 4);
  std::set<std::pair<std::string, std::size_t>> expected{
      {"pfx", 0}, {"p", 0}, {"q", 0}, {"r", 0}, {"pfx", 1}, {"p", 1},
      {"q", 2},   {"r", 2}, {"p", 3}, {"q", 3}, {"q", 4},   {"r", 4},
      {"eq_k", 2}};
  CHECK(I.base.trues() == expected);

  SchemaInterpretation trivial =
      embed_up_interp(UPInterpretation({}, {LtlState{}}));
  CHECK(trivial.n_value == 0);
  CHECK_FALSE(trivial.base.holds(kPrefixMark, 0));
  CHECK(trivial.base.holds(kLoopMark, 0));

  CHECK_THROWS_AS(embed_up_interp(UPInterpretation({}, {LtlState{"pfx"}})),
                  std::invalid_argument);
}

TEST_CASE("2-initial segments project back to lassos") {
  SchemaInterpretation I;
  I.n_value = 3;
  for (auto [v, t] : std::vector<std::pair<std::string, std::size_t>>{
           {"pfx", 0}, {"p", 0}, {"pfx", 1}, {"q", 1}, {"p", 2}, {"p", 3},
           {"q", 3}})
    I.base.set(v, t, true);
  UPInterpretation sigma = project_two_segment(I);
  CHECK(sigma.prefix_index() == 2);
  CHECK(sigma.period() == 2);
  CHECK(sigma.prefix() ==
        std::vector<LtlState>{LtlState{"p"}, LtlState{"q"}});
  CHECK(sigma.loop() ==
        std::vector<LtlState>{LtlState{"p"}, LtlState{"p", "q"}});

  UPInterpretation degenerate = project_two_segment(schema_interp({}, 0));
  CHECK(degenerate.prefix_index() == 0);
  CHECK(degenerate.period() == 1);

  CHECK_THROWS_AS(project_two_segment(schema_interp({{"pfx", 1}}, 1)),
                  std::invalid_argument);
}

TEST_CASE("embed/project round-trips on the UP side") {
  for (const auto& sigma : all_lassos({"p", "q"}, 5)) {
    UPInterpretation back = project_two_segment(embed_up_interp(sigma));
    REQUIRE(back == sigma);
  }
}

TEST_CASE("embedded interpretations satisfy the segment axioms") {
  // schema side: the embedded lasso models the segment formula and the end
  // marker sits exactly at n
  std::vector<PropAtomRef> atoms;
  for (std::size_t t = 0; t <= 3; ++t)
    for (const char* v : {"p", "q"}) atoms.push_back({v, t});
  for (std::size_t n = 0; n <= 3; ++n) {
    for_each_interp(atoms, [&](const PropInterpretation& m) {
      UPInterpretation sigma = embed_schema_interp({m, n});
      REQUIRE(eval_ltl(sigma, 0, ltl_initial_segment()));
      REQUIRE(eval_ltl(sigma, 0, ltl_end_marker_axiom()));
      for (std::size_t t = 0; t <= n + 2; ++t)
        REQUIRE(sigma.holds(kEndMark, t) == (t == n));
    });
  }
}

TEST_CASE("interpretation text formats round-trip") {
  SchemaInterpretation I = schema_interp({{"p", 0}, {"p", 2}, {"q", 1}}, 3);
  std::string text = render_schema_interp(I);
  CHECK(text == "n=3; p: 0,2; q: 1;");
  CHECK(parse_schema_interp(text) == I);
  CHECK(parse_schema_interp("n=0;") == schema_interp({}, 0));
  CHECK_THROWS_AS(parse_schema_interp("p: 1;"), ParseError);

  UPInterpretation sigma({LtlState{"a", "b"}, LtlState{}}, {LtlState{"a"}});
  std::string up = render_up_interp(sigma);
  CHECK(up == "prefix: {a b} {} ; loop: {a}");
  CHECK(parse_up_interp(up) == sigma);
  CHECK(parse_up_interp("prefix: ; loop: {}") ==
        UPInterpretation({}, {LtlState{}}));
  CHECK_THROWS_AS(parse_up_interp("prefix: {a} ; loop:"), ParseError);

  std::mt19937 rng(3);
  for (const auto& s : all_lassos({"p", "q"}, 3))
    REQUIRE(parse_up_interp(render_up_interp(s)) == s);
  (void)rng;
}
