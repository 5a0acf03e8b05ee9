#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltlsps/ltl.hpp"
#include "ltlsps/schema.hpp"

namespace ltlsps {

/// Finite transition system with a total transition function and a labelling
/// of every state. Initial states are optional; without them every state may
/// start a path.
struct TransitionSystem {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::map<std::pair<std::string, std::string>, std::string> delta;
  std::map<std::string, std::set<std::string>> labels;
  std::vector<std::string> initial;

  const std::string& step(const std::string& state,
                          const std::string& action) const;
};

TransitionSystem parse_ts(std::string_view text);
std::string render_ts(const TransitionSystem& ts);

/// Encodes all finite runs of the system as one schema over st_<state>,
/// act_<action> and the label propositions: transition, label and
/// exclusivity clauses wrapped in a single 0..n conjunction, plus an
/// initial-state disjunct at index 0 when initial states are declared.
/// extra_props widens the label clauses so every listed proposition gets an
/// explicit value at each state.
Sch encode_transition_system(const TransitionSystem& ts,
                             const std::set<std::string>& extra_props = {});

struct McVerdict {
  bool holds = false;
  std::size_t bound = 0;           // n_max when it holds, witness n otherwise
  std::vector<std::string> path;   // counterexample states
  std::size_t time = 0;            // earliest horizon witnessing the violation
};

/// X nesting depth; obligations nested under more X than n_max can fall
/// beyond the checked horizon.
std::size_t x_depth(const Ltl& f);

/// Bounded safety check for properties whose normal form uses only
/// true/false, literals, &, |, X and G. Counterexample paths are decoded
/// from schema models and re-verified on the system before being reported.
McVerdict check_safety(const TransitionSystem& ts, const Ltl& property,
                       std::size_t n_max);

}  // namespace ltlsps
