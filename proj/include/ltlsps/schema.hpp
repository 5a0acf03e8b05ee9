#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ltlsps/errors.hpp"

namespace ltlsps {

/// Linear index expression in normalized base + offset form. Offsets are
/// naturals; the only bases are a concrete number, the parameter n, or a
/// bound iteration variable.
enum class IndexBase { Ground, Param, Bound };

struct ArithExpr {
  IndexBase base = IndexBase::Ground;
  std::string var;  // bound-variable name, only for Bound
  std::size_t offset = 0;

  static ArithExpr ground(std::size_t k) { return {IndexBase::Ground, {}, k}; }
  static ArithExpr param(std::size_t k = 0) { return {IndexBase::Param, {}, k}; }
  static ArithExpr bound(std::string v, std::size_t k = 0) {
    return {IndexBase::Bound, std::move(v), k};
  }

  bool operator==(const ArithExpr& o) const {
    return base == o.base && var == o.var && offset == o.offset;
  }
};

std::size_t eval_arith(const ArithExpr& e, std::size_t n_value,
                       std::optional<std::size_t> bound_value = std::nullopt);
std::string render_index(const ArithExpr& e);

enum class SchemaOp {
  Top,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  BigAnd,      // iterated conjunction over i = 0 .. n-1
  BigOr,       // iterated disjunction over i = 0 .. n-1
  BigAndIncl,  // conjunction shortcut over i = 0 .. n
  GeneralIter, // internal: arbitrary bounds; never a sequential schema
};

class SchemaNode;
using Sch = std::shared_ptr<const SchemaNode>;

/// Iteration end point; `exclusive` means the range stops one short of the
/// expression value (used for upper bounds like i-1).
struct IterEnd {
  ArithExpr expr;
  bool exclusive = false;
};

class SchemaNode {
public:
  SchemaOp op;
  std::string prop;  // Atom
  ArithExpr index;   // Atom
  std::string var;   // iteration binder
  bool conj = true;  // GeneralIter: conjunction or disjunction
  ArithExpr lower;   // GeneralIter
  IterEnd upper;     // GeneralIter
  Sch left;
  Sch right;
};

Sch sch_top();
Sch sch_atom(std::string prop, ArithExpr index);
Sch sch_not(Sch s);
Sch sch_and(Sch a, Sch b);
Sch sch_or(Sch a, Sch b);
Sch sch_implies(Sch a, Sch b);
Sch sch_iff(Sch a, Sch b);
Sch sch_bigand(std::string var, Sch body);
Sch sch_bigor(std::string var, Sch body);
Sch sch_bigand_incl(std::string var, Sch body);
Sch sch_iter(bool conj, std::string var, ArithExpr lower, IterEnd upper,
             Sch body);
/// Left-associated conjunction of a nonempty list.
Sch sch_conj(const std::vector<Sch>& parts);

bool schema_equal(const Sch& a, const Sch& b);
std::size_t schema_node_count(const Sch& s);
std::set<std::string> schema_props(const Sch& s);

Sch parse_schema(std::string_view text);
std::string render_schema(const Sch& s);

// --- propositional instances ------------------------------------------------

enum class PropOp { Top, Atom, Not, And, Or, Implies, Iff };

class PropNode;
using Prop = std::shared_ptr<const PropNode>;

class PropNode {
public:
  PropOp op;
  std::string prop;
  std::size_t index = 0;
  Prop left;
  Prop right;
};

Prop prop_top();
Prop prop_atom(std::string name, std::size_t index);
Prop prop_not(Prop a);
Prop prop_and(Prop a, Prop b);
Prop prop_or(Prop a, Prop b);
Prop prop_implies(Prop a, Prop b);
Prop prop_iff(Prop a, Prop b);

bool prop_equal(const Prop& a, const Prop& b);
/// Equality modulo re-association of And/Or chains.
bool prop_equal_flat(const Prop& a, const Prop& b);
std::string render_prop(const Prop& f);
std::size_t prop_node_count(const Prop& f);

struct PropAtomRef {
  std::string name;
  std::size_t index;
  auto operator<=>(const PropAtomRef&) const = default;
};
std::vector<PropAtomRef> prop_atoms(const Prop& f);  // sorted, distinct

/// Finite-support truth assignment on (variable, index) pairs; everything
/// not listed is false.
class PropInterpretation {
public:
  PropInterpretation() = default;
  explicit PropInterpretation(
      std::set<std::pair<std::string, std::size_t>> trues)
      : trues_(std::move(trues)) {}

  bool holds(const std::string& name, std::size_t index) const {
    return trues_.count({name, index}) != 0;
  }
  void set(const std::string& name, std::size_t index, bool value);
  const std::set<std::pair<std::string, std::size_t>>& trues() const {
    return trues_;
  }
  bool operator==(const PropInterpretation&) const = default;

private:
  std::set<std::pair<std::string, std::size_t>> trues_;
};

struct SchemaInterpretation {
  PropInterpretation base;
  std::size_t n_value = 0;
  bool operator==(const SchemaInterpretation&) const = default;
};

bool eval_prop(const PropInterpretation& sigma, const Prop& f);

/// Instance of s with the parameter set to m; every index becomes ground.
Prop instantiate(const Sch& s, std::size_t m);

bool eval_schema(const SchemaInterpretation& interp, const Sch& s);

// --- sequential classification ----------------------------------------------

enum class SpsRule {
  NestedIteration,
  BadOuterIndex,
  BadInnerIndex,
  GeneralIteration,
};

struct SpsViolation {
  std::string location;  // rendered offending subterm
  SpsRule rule;
};

struct SpsVerdict {
  bool is_sps = true;
  std::vector<SpsViolation> violations;
};

const char* sps_rule_name(SpsRule rule);
SpsVerdict classify_sps(const Sch& s);

// --- size accounting ----------------------------------------------------------

struct SizeMetrics {
  std::size_t sym_size = 0;    // symbols, each numeric constant counted once
  std::size_t max_int = 0;     // largest constant offset
  std::size_t unary_size = 0;  // constants weighted by value
  std::size_t binary_size = 0; // constants weighted by bit length
};

SizeMetrics size_metrics(const Sch& s);

}  // namespace ltlsps
