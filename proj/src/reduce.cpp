#include "cbd/reduce.hpp"

#include <algorithm>

namespace cbd {

const char* to_string(ReductionKind kind) {
  return kind == ReductionKind::drop_deterministic_variable ? "drop-deterministic-variable" : "drop-small-context";
}

void ReductionTrace::append(const ReductionTrace& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

std::vector<ContentId> measured_contents(const std::vector<ContentId>& contents, const std::vector<Bunch>& bunches) {
  std::vector<ContentId> out;
  for (const auto& q : contents) {
    if (std::any_of(bunches.begin(), bunches.end(), [&](const Bunch& b) { return b.contains(q); })) {
      out.push_back(q);
    }
  }
  return out;
}

}  // namespace

std::pair<System, ReductionTrace> drop_deterministic_variables(const System& s) {
  ReductionTrace trace;
  std::vector<Bunch> bunches = s.bunches();
  for (std::size_t i = 0; i < bunches.size(); ++i) {
    // Determinism is judged on the original bunch; removing one degenerate
    // variable never changes another variable's marginal.
    const Bunch original = bunches[i];
    for (const auto& q : original.contents()) {
      if (!is_deterministic(original, q)) continue;
      System before(measured_contents(s.contents(), bunches), bunches);
      std::vector<ContentId> keep;
      for (const auto& other : bunches[i].contents()) {
        if (other != q) keep.push_back(other);
      }
      bunches[i] = marginal(bunches[i], keep);
      System after(measured_contents(s.contents(), bunches), bunches);
      trace.steps.push_back({ReductionKind::drop_deterministic_variable, VariableRef{q, original.context()}, std::nullopt,
                             std::move(before), std::move(after)});
    }
  }
  auto contents = measured_contents(s.contents(), bunches);
  return {System(std::move(contents), std::move(bunches)), std::move(trace)};
}

std::pair<System, ReductionTrace> drop_small_contexts(const System& s) {
  ReductionTrace trace;
  std::vector<Bunch> bunches = s.bunches();
  for (const auto& b : s.bunches()) {
    if (b.size() > 1) continue;
    System before(measured_contents(s.contents(), bunches), bunches);
    bunches.erase(std::find(bunches.begin(), bunches.end(), b));
    System after(measured_contents(s.contents(), bunches), bunches);
    trace.steps.push_back(
        {ReductionKind::drop_small_context, std::nullopt, b.context(), std::move(before), std::move(after)});
  }
  auto contents = measured_contents(s.contents(), bunches);
  return {System(std::move(contents), std::move(bunches)), std::move(trace)};
}

std::pair<System, ReductionTrace> reduce_fixpoint(const System& s) {
  System current = s;
  ReductionTrace trace;
  while (true) {
    auto [without_deterministic, t1] = drop_deterministic_variables(current);
    auto [without_small, t2] = drop_small_contexts(without_deterministic);
    trace.append(t1);
    trace.append(t2);
    if (without_small == current) break;
    current = std::move(without_small);
  }
  return {std::move(current), std::move(trace)};
}

}  // namespace cbd
