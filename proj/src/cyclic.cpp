#include "cbd/cyclic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cbd {

std::optional<CyclicLayout> detect_cycle(const System& s) {
  const std::size_t n = s.bunches().size();
  if (n < 2 || s.contents().size() != n) return std::nullopt;

  std::map<ContentId, std::vector<ContextId>> incidence;
  for (const auto& q : s.contents()) incidence[q];
  if (incidence.size() != n) return std::nullopt;
  for (const auto& b : s.bunches()) {
    if (b.size() != 2 || b.contents()[0] == b.contents()[1]) return std::nullopt;
    for (const auto& q : b.contents()) {
      auto it = incidence.find(q);
      if (it == incidence.end()) return std::nullopt;
      it->second.push_back(b.context());
    }
  }
  for (auto& [q, ctxs] : incidence) {
    if (ctxs.size() != 2 || ctxs[0] == ctxs[1]) return std::nullopt;
  }

  CyclicLayout layout;
  ContentId current = incidence.begin()->first;
  ContextId via = std::min(incidence.begin()->second[0], incidence.begin()->second[1]);
  std::set<ContextId> used;
  for (std::size_t step = 0; step < n; ++step) {
    if (!used.insert(via).second) return std::nullopt;
    layout.contents.push_back(current);
    layout.contexts.push_back(via);
    const Bunch& b = s.bunch(via);
    current = b.contents()[0] == current ? b.contents()[1] : b.contents()[0];
    const auto& ctxs = incidence.at(current);
    via = ctxs[0] == via ? ctxs[1] : ctxs[0];
  }
  // A single cycle returns to the start after exactly n steps.
  if (current != layout.contents.front() || via != layout.contexts.front()) return std::nullopt;
  return layout;
}

Rational odd_sign_max(const std::vector<Rational>& x) {
  return odd_sign_max(Eigen::Map<const VectorXr>(x.data(), static_cast<Eigen::Index>(x.size())));
}

std::pair<Verdict, CriterionReport> cyclic_criterion(const System& s, const CyclicLayout& layout) {
  const std::size_t n = layout.rank();
  if (n < 2 || layout.contexts.size() != n || s.bunches().size() != n) {
    throw std::invalid_argument("layout does not match system");
  }
  CriterionReport report;
  Verdict verdict;
  verdict.method = Method::cyclic_criterion;
  Rational influence_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t next = cyclic_next(i, n);
    const Bunch* here = s.find(layout.contexts[i]);
    const Bunch* there = s.find(layout.contexts[next]);
    if (!here || !there || here->size() != 2 || !here->contains(layout.contents[i]) ||
        !here->contains(layout.contents[next])) {
      throw std::invalid_argument("layout does not match system at context " + layout.contexts[i].name);
    }
    if (!there->contains(layout.contents[next])) {
      throw std::invalid_argument("layout does not match system at context " + layout.contexts[next].name);
    }
    report.product_expectations.push_back(expectation(*here, {layout.contents[i], layout.contents[next]}));
    Rational term = abs_value(expectation(*here, {layout.contents[next]}) - expectation(*there, {layout.contents[next]}));
    influence_sum += term;
    verdict.direct_influences.emplace(InfluenceKey(layout.contents[next], layout.contexts[i], layout.contexts[next]), term);
    report.influence_terms.push_back(std::move(term));
  }
  report.lhs = odd_sign_max(report.product_expectations);
  report.rhs = Rational(static_cast<long>(n) - 2) + influence_sum;
  verdict.contextual = report.lhs > report.rhs;
  verdict.lhs = report.lhs;
  verdict.rhs = report.rhs;
  return {std::move(verdict), std::move(report)};
}

System cyclic_system(const std::vector<Bunch::Table>& tables) {
  const std::size_t n = tables.size();
  std::vector<ContentId> contents;
  for (std::size_t i = 0; i < n; ++i) contents.push_back({"q" + std::to_string(i + 1)});
  std::vector<Bunch> bunches;
  for (std::size_t i = 0; i < n; ++i) {
    bunches.emplace_back(ContextId{"c" + std::to_string(i + 1)},
                         std::vector<ContentId>{contents[i], contents[cyclic_next(i, n)]}, tables[i]);
  }
  return System(std::move(contents), std::move(bunches));
}

System pr_box_system() {
  const Rational half(1, 2);
  const Bunch::Table correlated{{0b00, half}, {0b11, half}};
  const Bunch::Table anticorrelated{{0b01, half}, {0b10, half}};
  return cyclic_system({correlated, correlated, correlated, anticorrelated});
}

System deterministic_cyclic_system(std::size_t rank) {
  return cyclic_system(std::vector<Bunch::Table>(rank, Bunch::Table{{0b00, Rational(1)}}));
}

}  // namespace cbd
