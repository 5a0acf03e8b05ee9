#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltlsps/ltl.hpp"
#include "ltlsps/schema.hpp"

namespace ltlsps {

/// DPLL satisfiability for ground formulas. The branching order is the
/// lowest unassigned (name, index) atom, true first, so witnesses are
/// reproducible; atoms a model leaves unassigned default to false.
std::optional<PropInterpretation> prop_sat(const Prop& f);

/// Enumerates models of f, one per assignment of the projection atoms (all
/// atoms of f when the projection is empty). The callback receives the full
/// model and may return false to stop early.
void prop_enumerate(const Prop& f, const std::vector<PropAtomRef>& projection,
                    const std::function<bool(const PropInterpretation&)>& fn);

struct BoundedVerdict {
  enum class Status { Sat, UnsatUpToBound } status;
  std::size_t bound = 0;  // the instance/lasso size where SAT was found,
                          // or the exhausted search bound
  std::optional<SchemaInterpretation> schema_witness;
  std::optional<UPInterpretation> up_witness;

  bool sat() const { return status == Status::Sat; }
};

/// Tries n = 0..n_max in order; a SAT witness is re-verified before being
/// returned. UNSAT only means unsat up to the bound.
BoundedVerdict schema_sat_bounded(const Sch& s, std::size_t n_max);

/// All lassos over the given variables with prefix+period <= kl_max, in a
/// fixed order: prefix length ascending, then period, then states
/// lexicographically. Returns false if the callback stopped the walk.
bool for_each_lasso(const std::set<std::string>& vars, std::size_t kl_max,
                    const std::function<bool(const UPInterpretation&)>& fn);
std::vector<UPInterpretation> enumerate_lassos(
    const std::set<std::string>& vars, std::size_t kl_max);

/// First lasso over the propositions of f (in enumeration order) that
/// satisfies f at time 0.
BoundedVerdict ltl_sat_bounded(const Ltl& f, std::size_t kl_max);

inline constexpr std::size_t kDefaultSchemaBound = 8;
inline constexpr std::size_t kDefaultLassoBound = 6;

}  // namespace ltlsps
