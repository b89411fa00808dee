#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cbd/system.hpp"

namespace cbd {

/// The double-indexed random variable R_q^c.
struct VariableRef {
  ContentId content;
  ContextId context;
  auto operator<=>(const VariableRef&) const = default;
};

/// Joint distribution over every variable of a system. Bit k of an atom key
/// is set when variables[k] takes +1. Only nonzero atoms are stored.
struct Coupling {
  std::vector<VariableRef> variables;
  std::map<std::uint64_t, Rational> atoms;

  std::optional<std::size_t> index_of(const VariableRef& v) const;
};

enum class Method { cyclic_criterion, coupling_lp };

const char* to_string(Method m);

struct Verdict {
  bool contextual = false;
  Method method = Method::coupling_lp;
  std::optional<Rational> lhs;  // criterion sides, cyclic method only
  std::optional<Rational> rhs;
  std::optional<Coupling> witness;  // only when noncontextual via LP
  InfluenceMap direct_influences;
};

}  // namespace cbd
