#pragma once

#include <string>
#include <vector>

#include "ltlsps/interp.hpp"
#include "ltlsps/ltl.hpp"
#include "ltlsps/schema.hpp"

namespace ltlsps {

struct LtlToSpsOptions {
  /// Mirror all indices so index 0 denotes the last instant of the encoded
  /// lasso and n its first; procedures that recurse on n then start at
  /// time 0.
  bool invert_time = false;
  /// Dedicated axioms for F and G instead of expanding them through U.
  bool specialize_fg = false;
  /// No axioms for propositional connectives; their occurrences are
  /// substituted directly.
  bool inline_propositional = false;
};

/// !pfx[n] & bigand i.(pfx[i+1] -> pfx[i]) — its models are exactly the
/// 2-initial segments for pfx.
Sch sps_prefix_segment();

/// (!pfx[0] <-> eq_k[0]) & bigand i.(pfx[i] & !pfx[i+1] <-> eq_k[i+1]) —
/// on a 2-initial segment this makes eq_k true exactly at the short length.
Sch sps_loop_marker_axiom();

/// One subformula of the translated formula: its defining variable, and the
/// companion "primed" variable for the connectives that carry an
/// eventuality-style obligation bounded by the end of the loop.
struct SubformulaEntry {
  Ltl formula;
  std::string var;     // equals the proposition name for bare atoms
  std::string primed;  // empty unless U, or F/G when specialized
};

struct SubformulaTable {
  std::vector<SubformulaEntry> entries;  // bottom-up deterministic order
  const SubformulaEntry* find(const Ltl& f) const;
};

/// The fresh-variable table ltl_to_sps introduces for f under opts; exposed
/// so interpretations can be extended consistently.
SubformulaTable subformula_table(const Ltl& f, const LtlToSpsOptions& opts = {});

struct SchemaWithVerdict {
  Sch schema;
  SpsVerdict verdict;
};

/// Finite-semantics translation: structurally maps the formula onto indices
/// 0..n with no segment axioms. Sound only against finite-trace readings;
/// a valid formula can translate to an invalid schema. The verdict reports
/// that the output generally is not sequential.
SchemaWithVerdict ltl_to_schema_finite(const Ltl& f);

/// Lasso-faithful translation using pfx/eq_k and emptiness-test iterations
/// for the loop predicate. Correct, but the output is not sequential.
SchemaWithVerdict ltl_to_schema_direct(const Ltl& f);

/// Structure-preserving translation into a sequential schema: one fresh
/// variable per subformula, constrained by per-connective axioms. The
/// result is always an SPS and linear in the size of f.
Sch ltl_to_sps(const Ltl& f, const LtlToSpsOptions& opts = {});

/// embed_up_interp extended with values for the subformula variables of f:
/// sub vars hold where their subformula holds, primed vars where the
/// obligation is met no later than index n.
SchemaInterpretation embed_up_interp(const UPInterpretation& sigma,
                                     const Ltl& f,
                                     const LtlToSpsOptions& opts = {});

struct CeilSizeReport {
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  double ratio = 0.0;
};

CeilSizeReport ltl_to_sps_size_report(const Ltl& f,
                                      const LtlToSpsOptions& opts = {});

}  // namespace ltlsps
