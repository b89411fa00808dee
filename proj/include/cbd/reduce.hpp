#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cbd/system.hpp"
#include "cbd/verdict.hpp"

namespace cbd {

enum class ReductionKind { drop_deterministic_variable, drop_small_context };

const char* to_string(ReductionKind kind);

struct ReductionStep {
  ReductionKind kind;
  std::optional<VariableRef> variable;  // drop_deterministic_variable
  std::optional<ContextId> context;     // drop_small_context
  System before;
  System after;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;

  bool empty() const { return steps.empty(); }
  void append(const ReductionTrace& other);
};

/// Removes every variable whose marginal is degenerate (at +1 or -1),
/// marginalizing its bunch, then drops contents left with no variable.
std::pair<System, ReductionTrace> drop_deterministic_variables(const System& s);

/// Removes every context with at most one variable, then drops contents left
/// with no variable.
std::pair<System, ReductionTrace> drop_small_contexts(const System& s);

/// Alternates the two passes until neither changes the system.
std::pair<System, ReductionTrace> reduce_fixpoint(const System& s);

}  // namespace cbd
