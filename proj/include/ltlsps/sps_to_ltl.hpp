#pragma once

#include "ltlsps/interp.hpp"
#include "ltlsps/ltl.hpp"
#include "ltlsps/schema.hpp"

namespace ltlsps {

struct SchemaToLtlOptions {
  /// Put the schema into negation normal form first, eliminate iterated
  /// disjunctions through fresh evq_* chains, and use dedicated cases for
  /// negative literals. Keeps the segment axiom as the only eventuality.
  bool nnf_first = false;
  /// Translate |, -> and <-> structurally instead of rewriting them into
  /// !/& beforehand.
  bool inline_sugar = true;
};

/// lt_n U G !lt_n — its models are exactly the initial segments for lt_n.
Ltl ltl_initial_segment();

/// G (lt_n & !X lt_n <-> X eq_n) & (!lt_n <-> eq_n) — on an initial segment
/// of length n this makes eq_n true exactly at time n.
Ltl ltl_end_marker_axiom();

/// Negation normal form for schemata: negations pushed down to literals,
/// iterations dualized. Expand bigand_incl first if the input contains it.
Sch schema_nnf(const Sch& s);

/// Replace every bigand_incl i.(s) by bigand i.(s) & s[n/i].
Sch expand_incl_iterations(const Sch& s);

/// Translate a sequential schema into an equisatisfiable LTL formula.
/// Throws std::invalid_argument if s is not an SPS or uses reserved names.
Ltl schema_to_ltl(const Sch& s, const SchemaToLtlOptions& opts = {});

struct TranslationSizeReport {
  SizeMetrics input;
  std::size_t input_size = 0;   // input symbol count
  std::size_t output_size = 0;  // output node count
  double ratio = 0.0;
};

TranslationSizeReport schema_to_ltl_size_report(const Sch& s);

}  // namespace ltlsps
