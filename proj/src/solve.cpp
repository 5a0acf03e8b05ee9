#include "ltlsps/solve.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace ltlsps {

namespace {

// Clausal form with one gate variable per connective. Gate values are
// functionally determined, so branching only ever happens on input atoms.
struct Cnf {
  std::vector<PropAtomRef> atoms;        // sorted; atom i has variable i+1
  std::vector<std::vector<int>> clauses;
  int vars = 0;

  int atom_var(const PropAtomRef& a) const {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    return static_cast<int>(it - atoms.begin()) + 1;
  }
};

int encode(Cnf& cnf, const Prop& f) {
  switch (f->op) {
    case PropOp::Atom: return cnf.atom_var({f->prop, f->index});
    case PropOp::Top: {
      int g = ++cnf.vars;
      cnf.clauses.push_back({g});
      return g;
    }
    case PropOp::Not: {
      int a = encode(cnf, f->left);
      int g = ++cnf.vars;
      cnf.clauses.push_back({g, a});
      cnf.clauses.push_back({-g, -a});
      return g;
    }
    case PropOp::And: {
      int a = encode(cnf, f->left);
      int b = encode(cnf, f->right);
      int g = ++cnf.vars;
      cnf.clauses.push_back({-g, a});
      cnf.clauses.push_back({-g, b});
      cnf.clauses.push_back({g, -a, -b});
      return g;
    }
    case PropOp::Or: {
      int a = encode(cnf, f->left);
      int b = encode(cnf, f->right);
      int g = ++cnf.vars;
      cnf.clauses.push_back({-g, a, b});
      cnf.clauses.push_back({g, -a});
      cnf.clauses.push_back({g, -b});
      return g;
    }
    case PropOp::Implies: {
      int a = encode(cnf, f->left);
      int b = encode(cnf, f->right);
      int g = ++cnf.vars;
      cnf.clauses.push_back({-g, -a, b});
      cnf.clauses.push_back({g, a});
      cnf.clauses.push_back({g, -b});
      return g;
    }
    case PropOp::Iff: {
      int a = encode(cnf, f->left);
      int b = encode(cnf, f->right);
      int g = ++cnf.vars;
      cnf.clauses.push_back({-g, -a, b});
      cnf.clauses.push_back({-g, a, -b});
      cnf.clauses.push_back({g, a, b});
      cnf.clauses.push_back({g, -a, -b});
      return g;
    }
  }
  throw std::logic_error("unhandled propositional node");
}

Cnf build_cnf(const Prop& f) {
  Cnf cnf;
  cnf.atoms = prop_atoms(f);
  cnf.vars = static_cast<int>(cnf.atoms.size());
  int root = encode(cnf, f);
  cnf.clauses.push_back({root});
  return cnf;
}

class Dpll {
public:
  explicit Dpll(const Cnf& cnf)
      : cnf_(cnf), value_(static_cast<std::size_t>(cnf.vars) + 1, 0) {}

  bool solve() { return search(); }

  bool value(int var) const { return value_[static_cast<std::size_t>(var)] > 0; }

private:
  int lit_value(int lit) const {
    int v = value_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : -v;
  }

  void assign(int lit) {
    value_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
    trail_.push_back(std::abs(lit));
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[static_cast<std::size_t>(trail_.back())] = 0;
      trail_.pop_back();
    }
  }

  // Returns false on conflict; sets all_satisfied when every clause has a
  // true literal.
  bool propagate(bool& all_satisfied) {
    bool changed = true;
    while (changed) {
      changed = false;
      all_satisfied = true;
      for (const auto& clause : cnf_.clauses) {
        int unassigned = 0;
        int free_lit = 0;
        bool satisfied = false;
        for (int lit : clause) {
          int v = lit_value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            free_lit = lit;
          }
        }
        if (satisfied) continue;
        all_satisfied = false;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(free_lit);
          changed = true;
        }
      }
    }
    return true;
  }

  int pick() const {
    int n_atoms = static_cast<int>(cnf_.atoms.size());
    for (int v = 1; v <= n_atoms; ++v)
      if (value_[static_cast<std::size_t>(v)] == 0) return v;
    for (int v = n_atoms + 1; v <= cnf_.vars; ++v)
      if (value_[static_cast<std::size_t>(v)] == 0) return v;
    return 0;
  }

  bool search() {
    std::size_t mark = trail_.size();
    bool all_satisfied = false;
    if (!propagate(all_satisfied)) {
      undo_to(mark);
      return false;
    }
    if (all_satisfied) return true;
    int v = pick();
    if (v == 0) {
      undo_to(mark);
      return false;
    }
    for (int sign : {+1, -1}) {
      std::size_t inner = trail_.size();
      assign(sign * v);
      if (search()) return true;
      undo_to(inner);
    }
    undo_to(mark);
    return false;
  }

  const Cnf& cnf_;
  std::vector<int8_t> value_;
  std::vector<int> trail_;
};

PropInterpretation extract_model(const Cnf& cnf, const Dpll& solver) {
  PropInterpretation model;
  for (std::size_t i = 0; i < cnf.atoms.size(); ++i)
    if (solver.value(static_cast<int>(i) + 1))
      model.set(cnf.atoms[i].name, cnf.atoms[i].index, true);
  return model;
}

}  // namespace

std::optional<PropInterpretation> prop_sat(const Prop& f) {
  Cnf cnf = build_cnf(f);
  Dpll solver(cnf);
  if (!solver.solve()) return std::nullopt;
  return extract_model(cnf, solver);
}

void prop_enumerate(const Prop& f, const std::vector<PropAtomRef>& projection,
                    const std::function<bool(const PropInterpretation&)>& fn) {
  Cnf cnf = build_cnf(f);
  const std::vector<PropAtomRef>& proj =
      projection.empty() ? cnf.atoms : projection;
  for (;;) {
    Dpll solver(cnf);
    if (!solver.solve()) return;
    PropInterpretation model = extract_model(cnf, solver);
    if (!fn(model)) return;
    std::vector<int> blocking;
    for (const auto& a : proj) {
      int var = cnf.atom_var(a);
      blocking.push_back(model.holds(a.name, a.index) ? -var : var);
    }
    if (blocking.empty()) return;
    cnf.clauses.push_back(std::move(blocking));
  }
}

BoundedVerdict schema_sat_bounded(const Sch& s, std::size_t n_max) {
  for (std::size_t n = 0; n <= n_max; ++n) {
    Prop inst = instantiate(s, n);
    if (auto model = prop_sat(inst)) {
      if (!eval_prop(*model, inst))
        throw std::logic_error("solver returned a non-model");
      BoundedVerdict v{BoundedVerdict::Status::Sat, n,
                       SchemaInterpretation{*model, n}, std::nullopt};
      return v;
    }
  }
  return {BoundedVerdict::Status::UnsatUpToBound, n_max, std::nullopt,
          std::nullopt};
}

bool for_each_lasso(const std::set<std::string>& vars, std::size_t kl_max,
                    const std::function<bool(const UPInterpretation&)>& fn) {
  std::vector<std::string> names(vars.begin(), vars.end());
  std::size_t n_states = std::size_t{1} << names.size();
  auto make_state = [&](std::size_t mask) {
    LtlState s;
    for (std::size_t b = 0; b < names.size(); ++b)
      if (mask & (std::size_t{1} << b)) s.insert(names[b]);
    return s;
  };
  for (std::size_t k = 0; k + 1 <= kl_max; ++k) {
    for (std::size_t l = 1; k + l <= kl_max; ++l) {
      std::vector<std::size_t> masks(k + l, 0);
      bool done = false;
      while (!done) {
        std::vector<LtlState> prefix, loop;
        for (std::size_t t = 0; t < k; ++t) prefix.push_back(make_state(masks[t]));
        for (std::size_t t = k; t < k + l; ++t) loop.push_back(make_state(masks[t]));
        if (!fn(UPInterpretation(std::move(prefix), std::move(loop))))
          return false;
        // odometer, last state fastest
        done = true;
        for (std::size_t pos = masks.size(); pos-- > 0;) {
          if (++masks[pos] < n_states) {
            done = false;
            break;
          }
          masks[pos] = 0;
        }
      }
    }
  }
  return true;
}

std::vector<UPInterpretation> enumerate_lassos(
    const std::set<std::string>& vars, std::size_t kl_max) {
  std::vector<UPInterpretation> out;
  for_each_lasso(vars, kl_max, [&](const UPInterpretation& sigma) {
    out.push_back(sigma);
    return true;
  });
  return out;
}

BoundedVerdict ltl_sat_bounded(const Ltl& f, std::size_t kl_max) {
  BoundedVerdict verdict{BoundedVerdict::Status::UnsatUpToBound, kl_max,
                         std::nullopt, std::nullopt};
  for_each_lasso(ltl_props(f), kl_max, [&](const UPInterpretation& sigma) {
    if (eval_ltl(sigma, 0, f)) {
      verdict.status = BoundedVerdict::Status::Sat;
      verdict.bound = sigma.prefix_index() + sigma.period();
      verdict.up_witness = sigma;
      return false;
    }
    return true;
  });
  return verdict;
}

}  // namespace ltlsps
