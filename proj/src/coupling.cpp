#include "cbd/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace cbd {

std::optional<std::size_t> Coupling::index_of(const VariableRef& v) const {
  auto it = std::find(variables.begin(), variables.end(), v);
  if (it == variables.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

const char* to_string(Method m) {
  return m == Method::cyclic_criterion ? "cyclic-criterion" : "coupling-lp";
}

Rational multimaximal_target(const Rational& plus1, const Rational& plus2) {
  return std::min(plus1, plus2) + std::min(Rational(1 - plus1), Rational(1 - plus2));
}

Rational multimaximal_target(const Bunch& m1, const Bunch& m2) {
  if (m1.size() != 1 || m2.size() != 1) {
    throw std::invalid_argument("multimaximal_target needs single-variable distributions");
  }
  const Rational plus1 = m1.probability(1), plus2 = m2.probability(1);
  return std::min(plus1, plus2) + std::min(m1.probability(0), m2.probability(0));
}

std::vector<VariableRef> system_variables(const System& s) {
  std::vector<VariableRef> vars;
  for (const auto& b : s.bunches()) {
    for (const auto& q : b.contents()) vars.push_back({q, b.context()});
  }
  return vars;
}

namespace {

std::vector<PairTarget> pair_targets(const System& s) {
  std::vector<PairTarget> out;
  for (const auto& q : s.contents()) {
    std::vector<const Bunch*> holders;
    for (const auto& b : s.bunches()) {
      if (b.contains(q)) holders.push_back(&b);
    }
    for (std::size_t i = 0; i < holders.size(); ++i) {
      for (std::size_t j = i + 1; j < holders.size(); ++j) {
        out.push_back({{q, holders[i]->context()},
                       {q, holders[j]->context()},
                       multimaximal_target(plus_probability(*holders[i], q), plus_probability(*holders[j], q))});
      }
    }
  }
  return out;
}

}  // namespace

CouplingProgram build_feasibility_program(const System& s, const CouplingOptions& options) {
  CouplingProgram program;
  program.variables = system_variables(s);
  const std::size_t k = program.variables.size();
  if (k > options.max_variables || k > 62) {
    throw ResourceLimitError("system has " + std::to_string(k) + " variables; the exact coupling LP is capped at " +
                             std::to_string(std::min<std::size_t>(options.max_variables, 62)));
  }
  program.pair_targets = pair_targets(s);

  const auto atoms = static_cast<Eigen::Index>(std::uint64_t{1} << k);
  Eigen::Index rows = 1 + static_cast<Eigen::Index>(program.pair_targets.size());
  for (const auto& b : s.bunches()) {
    program.bunch_block_sizes.push_back(std::size_t{1} << b.size());
    rows += static_cast<Eigen::Index>(program.bunch_block_sizes.back());
  }

  auto& A = program.problem.coefficients;
  auto& rhs = program.problem.rhs;
  A = MatrixXr::Zero(rows, atoms);
  rhs = VectorXr::Zero(rows);

  Eigen::Index row = 0;
  std::size_t offset = 0;
  for (const auto& b : s.bunches()) {
    const std::uint64_t mask = (std::uint64_t{1} << b.size()) - 1;
    for (Eigen::Index atom = 0; atom < atoms; ++atom) {
      const auto local = static_cast<Eigen::Index>((static_cast<std::uint64_t>(atom) >> offset) & mask);
      A(row + local, atom) = 1;
    }
    for (std::uint64_t a = 0; a <= mask; ++a) rhs(row + static_cast<Eigen::Index>(a)) = b.probability(static_cast<Assignment>(a));
    row += static_cast<Eigen::Index>(mask + 1);
    offset += b.size();
  }

  for (const auto& pair : program.pair_targets) {
    const auto i = std::find(program.variables.begin(), program.variables.end(), pair.first) - program.variables.begin();
    const auto j = std::find(program.variables.begin(), program.variables.end(), pair.second) - program.variables.begin();
    for (Eigen::Index atom = 0; atom < atoms; ++atom) {
      const auto bits = static_cast<std::uint64_t>(atom);
      if (((bits >> i) & 1) == ((bits >> j) & 1)) A(row, atom) = 1;
    }
    rhs(row) = pair.target;
    ++row;
  }

  A.row(row).setOnes();
  rhs(row) = 1;
  return program;
}

Verdict is_noncontextual_lp(const System& s, const CouplingOptions& options) {
  const CouplingProgram program = build_feasibility_program(s, options);
  const auto result = solve_feasibility(program.problem, SolverOptions{options.pivot_budget});

  Verdict verdict;
  verdict.method = Method::coupling_lp;
  verdict.contextual = !result.feasible;
  verdict.direct_influences = consistent_connectedness(s).influences;
  if (result.feasible) {
    Coupling witness;
    witness.variables = program.variables;
    const auto& x = *result.solution;
    for (Eigen::Index atom = 0; atom < x.size(); ++atom) {
      if (x(atom) != 0) witness.atoms.emplace(static_cast<std::uint64_t>(atom), x(atom));
    }
    if (!is_multimaximal_coupling(s, witness)) {
      throw std::logic_error("witness coupling failed re-substitution");
    }
    verdict.witness = std::move(witness);
  }
  return verdict;
}

Rational coincidence_probability(const Coupling& c, const VariableRef& v1, const VariableRef& v2) {
  const auto i = c.index_of(v1), j = c.index_of(v2);
  if (!i || !j) throw std::invalid_argument("variable not in coupling");
  Rational sum = 0;
  for (const auto& [atom, p] : c.atoms) {
    if (((atom >> *i) & 1) == ((atom >> *j) & 1)) sum += p;
  }
  return sum;
}

Rational coincidence_probability(const Bunch& b, const ContentId& first, const ContentId& second) {
  const auto i = b.index_of(first), j = b.index_of(second);
  if (!i || !j) throw std::invalid_argument("content not in bunch " + b.context().name);
  Rational sum = 0;
  for (const auto& [a, p] : b.table()) {
    if (((a >> *i) & 1) == ((a >> *j) & 1)) sum += p;
  }
  return sum;
}

Bunch coupling_marginal(const Coupling& c, const Bunch& like) {
  std::vector<std::size_t> idx;
  for (const auto& q : like.contents()) {
    const auto i = c.index_of({q, like.context()});
    if (!i) throw std::invalid_argument("variable not in coupling");
    idx.push_back(*i);
  }
  Bunch::Table table;
  for (const auto& [atom, p] : c.atoms) {
    Assignment a = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if ((atom >> idx[j]) & 1) a |= Assignment{1} << j;
    }
    table[a] += p;
  }
  return Bunch(like.context(), like.contents(), std::move(table));
}

bool is_multimaximal_coupling(const System& s, const Coupling& c) {
  Rational total = 0;
  for (const auto& [atom, p] : c.atoms) {
    if (p < 0) return false;
    total += p;
  }
  if (total != 1) return false;
  for (const auto& b : s.bunches()) {
    if (coupling_marginal(c, b) != b) return false;
  }
  for (const auto& pair : pair_targets(s)) {
    if (coincidence_probability(c, pair.first, pair.second) != pair.target) return false;
  }
  return true;
}

}  // namespace cbd
