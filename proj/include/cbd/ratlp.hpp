#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cbd/rational.hpp"

namespace cbd {

/// A x = b, x >= 0. Every row of `coefficients` has num_vars() entries.
template <typename Scalar>
struct FeasibilityProblem {
  MatrixX<Scalar> coefficients;
  VectorX<Scalar> rhs;

  Eigen::Index num_vars() const { return coefficients.cols(); }
  Eigen::Index num_rows() const { return coefficients.rows(); }
};

template <typename Scalar>
struct FeasibilityResult {
  bool feasible = false;
  std::optional<VectorX<Scalar>> solution;
  std::size_t pivots = 0;
};

struct SolverOptions {
  std::size_t pivot_budget = 1'000'000;
};

/// True iff x >= 0 and A x = b hold exactly.
template <typename Scalar>
bool satisfies(const FeasibilityProblem<Scalar>& problem, const VectorX<Scalar>& x) {
  if (x.size() != problem.num_vars()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0) return false;
  }
  for (Eigen::Index i = 0; i < problem.num_rows(); ++i) {
    Scalar lhs = 0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (problem.coefficients(i, j) != 0 && x(j) != 0) lhs += problem.coefficients(i, j) * x(j);
    }
    if (lhs != problem.rhs(i)) return false;
  }
  return true;
}

namespace detail {

/// Phase-1 tableau. Artificial variables are implicit: once one leaves the
/// basis it never re-enters, so its column is never needed.
template <typename Scalar>
class PhaseOneTableau {
 public:
  explicit PhaseOneTableau(const FeasibilityProblem<Scalar>& problem)
      : rows_(problem.num_rows()),
        cols_(problem.num_vars()),
        table_(rows_ + 1, cols_ + 1),
        basis_(static_cast<std::size_t>(rows_)) {
    table_.setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const bool flip = problem.rhs(i) < 0;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        const Scalar& a = problem.coefficients(i, j);
        if (a != 0) table_(i, j) = flip ? Scalar(-a) : a;
      }
      table_(i, cols_) = flip ? Scalar(-problem.rhs(i)) : problem.rhs(i);
      basis_[static_cast<std::size_t>(i)] = cols_ + i;
    }
    // Reduced costs of the artificial objective: minus the column sums.
    for (Eigen::Index i = 0; i < rows_; ++i) {
      for (Eigen::Index j = 0; j <= cols_; ++j) {
        if (table_(i, j) != 0) table_(rows_, j) -= table_(i, j);
      }
    }
  }

  /// Runs Bland-rule simplex to optimality. Throws ResourceLimitError when
  /// the pivot budget is exhausted.
  std::size_t optimize(std::size_t budget) {
    std::size_t pivots = 0;
    while (true) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (table_(rows_, j) < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return pivots;

      Eigen::Index leaving = -1;
      Scalar best_ratio;
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (table_(i, entering) <= 0) continue;
        Scalar ratio = table_(i, cols_) / table_(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      // The artificial objective is bounded below by zero, so a positive
      // pivot entry always exists when a reduced cost is negative.
      if (leaving < 0) return pivots;
      if (pivots == budget) throw ResourceLimitError("simplex pivot budget exhausted");
      pivot(leaving, entering);
      ++pivots;
    }
  }

  /// Minimum of the sum of artificial variables.
  Scalar objective() const { return Scalar(-table_(rows_, cols_)); }

  VectorX<Scalar> basic_solution() const {
    VectorX<Scalar> x(cols_);
    x.setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index var = basis_[static_cast<std::size_t>(i)];
      if (var < cols_) x(var) = table_(i, cols_);
    }
    return x;
  }

 private:
  void pivot(Eigen::Index r, Eigen::Index c) {
    const Scalar inv = Scalar(1) / table_(r, c);
    std::vector<Eigen::Index> nonzero;
    for (Eigen::Index j = 0; j <= cols_; ++j) {
      if (table_(r, j) != 0) {
        table_(r, j) *= inv;
        nonzero.push_back(j);
      }
    }
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r || table_(i, c) == 0) continue;
      const Scalar factor = table_(i, c);
      for (Eigen::Index j : nonzero) table_(i, j) -= factor * table_(r, j);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Eigen::Index rows_;
  Eigen::Index cols_;
  MatrixX<Scalar> table_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/// Exact phase-1 simplex with smallest-index pivoting. Feasible iff the sum
/// of artificial variables reaches exactly zero; the returned basic solution
/// has been re-substituted into every equality.
template <typename Scalar>
FeasibilityResult<Scalar> solve_feasibility(const FeasibilityProblem<Scalar>& problem,
                                            const SolverOptions& options = {}) {
  if (problem.rhs.size() != problem.num_rows()) {
    throw std::invalid_argument("right-hand side length does not match row count");
  }
  detail::PhaseOneTableau<Scalar> tableau(problem);
  FeasibilityResult<Scalar> result;
  result.pivots = tableau.optimize(options.pivot_budget);
  if (tableau.objective() != 0) return result;

  VectorX<Scalar> x = tableau.basic_solution();
  if (!satisfies(problem, x)) {
    throw std::logic_error("simplex produced a solution that fails re-substitution");
  }
  result.feasible = true;
  result.solution = std::move(x);
  return result;
}

}  // namespace cbd
