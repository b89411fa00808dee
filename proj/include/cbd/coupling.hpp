#pragma once

#include <cstddef>
#include <vector>

#include "cbd/ratlp.hpp"
#include "cbd/system.hpp"
#include "cbd/verdict.hpp"

namespace cbd {

/// Two content-sharing variables and the largest probability with which a
/// coupling can make them coincide.
struct PairTarget {
  VariableRef first;
  VariableRef second;
  Rational target;
};

/// min(P1(+1), P2(+1)) + min(P1(-1), P2(-1)) for two binary distributions
/// given by their +1 probabilities.
Rational multimaximal_target(const Rational& plus1, const Rational& plus2);

/// Same, for single-variable bunches (e.g. results of `marginal`).
Rational multimaximal_target(const Bunch& m1, const Bunch& m2);

struct CouplingOptions {
  std::size_t max_variables = 20;
  std::size_t pivot_budget = 1'000'000;
};

/// LP over the 2^K atom probabilities of a joint distribution of all K
/// variables. Rows are ordered: one block per bunch (one row per bunch
/// assignment), then one row per content-sharing pair, then total mass.
struct CouplingProgram {
  std::vector<VariableRef> variables;
  std::vector<PairTarget> pair_targets;
  std::vector<std::size_t> bunch_block_sizes;
  FeasibilityProblem<Rational> problem;

  std::size_t atom_count() const { return static_cast<std::size_t>(problem.num_vars()); }
};

/// Variables in bunch order, contents in bunch order.
std::vector<VariableRef> system_variables(const System& s);

/// Throws ResourceLimitError when K exceeds options.max_variables.
CouplingProgram build_feasibility_program(const System& s, const CouplingOptions& options = {});

/// Noncontextual iff a multimaximal coupling exists; a feasible solve yields
/// the witness coupling, checked against every bunch and pair target.
Verdict is_noncontextual_lp(const System& s, const CouplingOptions& options = {});

/// Prob[v1 = v2] under the coupling. Throws std::invalid_argument for
/// variables the coupling does not contain.
Rational coincidence_probability(const Coupling& c, const VariableRef& v1, const VariableRef& v2);

/// Prob[first = second] within one bunch.
Rational coincidence_probability(const Bunch& b, const ContentId& first, const ContentId& second);

/// Exact marginal of a coupling over the variables of one context, as a bunch
/// over that context's contents.
Bunch coupling_marginal(const Coupling& c, const Bunch& like);

/// Re-substitution check: the coupling reproduces every bunch and meets every
/// multimaximal pair target exactly.
bool is_multimaximal_coupling(const System& s, const Coupling& c);

}  // namespace cbd
