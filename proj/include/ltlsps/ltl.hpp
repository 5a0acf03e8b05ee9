#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltlsps/errors.hpp"

namespace ltlsps {

enum class LtlOp {
  Top,
  Prop,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Eventually,
  Always,
};

class LtlNode;
using Ltl = std::shared_ptr<const LtlNode>;

/// Immutable formula node. Build with the ltl_* factory functions below;
/// `left` is the only child of unary operators.
class LtlNode {
public:
  LtlOp op;
  std::string name;  // proposition name, only for Prop
  Ltl left;
  Ltl right;

  LtlNode(LtlOp o, std::string n, Ltl l, Ltl r)
      : op(o), name(std::move(n)), left(std::move(l)), right(std::move(r)) {}
};

Ltl ltl_top();
Ltl ltl_false();  // sugar for !true
Ltl ltl_prop(std::string name);
Ltl ltl_not(Ltl f);
Ltl ltl_and(Ltl a, Ltl b);
Ltl ltl_or(Ltl a, Ltl b);
Ltl ltl_implies(Ltl a, Ltl b);
Ltl ltl_iff(Ltl a, Ltl b);
Ltl ltl_next(Ltl f);
Ltl ltl_next_pow(Ltl f, std::size_t k);  // k nested X
Ltl ltl_until(Ltl a, Ltl b);
Ltl ltl_eventually(Ltl f);
Ltl ltl_always(Ltl f);

bool ltl_equal(const Ltl& a, const Ltl& b);
std::size_t ltl_size(const Ltl& f);  // node count
std::set<std::string> ltl_props(const Ltl& f);

Ltl parse_ltl(std::string_view text);
std::string render_ltl(const Ltl& f);

/// Distinct subformulas in deterministic bottom-up (post-order) order,
/// duplicates collapsed, f itself last.
std::vector<Ltl> subformulas(const Ltl& f);

/// Negation normal form. The grammar has no Release, so a negation in front
/// of an Until cannot be pushed further; `fully_nnf` is false in that case.
struct NnfResult {
  Ltl formula;
  bool fully_nnf;
};
NnfResult ltl_nnf(const Ltl& f);

using LtlState = std::set<std::string>;

/// Ultimately periodic (lasso) interpretation: a finite prefix of states
/// followed by a nonempty loop repeated forever.
class UPInterpretation {
public:
  UPInterpretation(std::vector<LtlState> prefix, std::vector<LtlState> loop);

  std::size_t prefix_index() const { return prefix_.size(); }  // k
  std::size_t period() const { return loop_.size(); }          // l
  const std::vector<LtlState>& prefix() const { return prefix_; }
  const std::vector<LtlState>& loop() const { return loop_; }

  /// Position in [0, k+l) that time t reduces to.
  std::size_t reduce(std::size_t t) const;
  const LtlState& state(std::size_t t) const;
  bool holds(const std::string& var, std::size_t t) const;
  bool uses(const std::string& var) const;  // true at some time

  /// Same interpretation re-represented with prefix length >= min_prefix.
  UPInterpretation unrolled(std::size_t min_prefix) const;

  bool operator==(const UPInterpretation& other) const {
    return prefix_ == other.prefix_ && loop_ == other.loop_;
  }

private:
  std::vector<LtlState> prefix_;
  std::vector<LtlState> loop_;
};

bool eval_ltl(const UPInterpretation& sigma, std::size_t t, const Ltl& f);

}  // namespace ltlsps
