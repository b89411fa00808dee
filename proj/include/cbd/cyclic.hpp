#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cbd/system.hpp"
#include "cbd/verdict.hpp"

namespace cbd {

/// Cyclic arrangement: context i measures contents i and i+1 (mod rank).
struct CyclicLayout {
  std::vector<ContentId> contents;
  std::vector<ContextId> contexts;

  std::size_t rank() const { return contents.size(); }
  bool operator==(const CyclicLayout&) const = default;
};

struct CriterionReport {
  Rational lhs;  // max over odd sign vectors of the signed product sum
  Rational rhs;  // rank - 2 plus the influence terms
  std::vector<Rational> product_expectations;
  std::vector<Rational> influence_terms;
};

/// i (+) 1 for zero-based indices.
inline std::size_t cyclic_next(std::size_t i, std::size_t rank) { return i + 1 == rank ? 0 : i + 1; }

/// Layout of a system whose content-context incidence graph is a single
/// cycle with every context of size 2 and every content in two contexts.
/// Orientation starts at the smallest content name and proceeds through its
/// smaller-named context.
std::optional<CyclicLayout> detect_cycle(const System& s);

/// max over sign vectors with an odd number of -1 entries of sum_i l_i x_i:
/// sum |x_i| when an odd number of x_i are negative, otherwise
/// sum |x_i| - 2 min |x_i|.
template <typename Derived>
typename Derived::Scalar odd_sign_max(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() == 0) throw std::invalid_argument("odd_sign_max needs at least one term");
  Scalar total = 0;
  Scalar smallest = x(0) < 0 ? Scalar(-x(0)) : Scalar(x(0));
  Eigen::Index negatives = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Scalar magnitude = x(i) < 0 ? Scalar(-x(i)) : Scalar(x(i));
    if (x(i) < 0) ++negatives;
    if (magnitude < smallest) smallest = magnitude;
    total += magnitude;
  }
  if (negatives % 2 == 1) return total;
  return Scalar(total - 2 * smallest);
}

Rational odd_sign_max(const std::vector<Rational>& x);

/// Evaluates the rank-n criterion; contextual iff lhs > rhs. Throws
/// std::invalid_argument when the layout does not describe `s`.
std::pair<Verdict, CriterionReport> cyclic_criterion(const System& s, const CyclicLayout& layout);

/// Rank-4 PR box: products (1, 1, 1, -1), every marginal uniform.
System pr_box_system();

/// Rank-n cyclic system in which every variable equals -1 surely.
System deterministic_cyclic_system(std::size_t rank);

/// Rank-n cyclic system from per-context 2x2 tables; context i measures
/// ("q<i+1>", "q<i+2>") with wraparound. Tables are keyed by Assignment.
System cyclic_system(const std::vector<Bunch::Table>& tables);

}  // namespace cbd
