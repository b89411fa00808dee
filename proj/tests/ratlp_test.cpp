#include <doctest.h>

#include "cbd/coupling.hpp"
#include "cbd/ratlp.hpp"
#include "cbd/slits.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cbd;

namespace {

FeasibilityProblem<Rational> make_problem(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs) {
  FeasibilityProblem<Rational> p;
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows[0].size());
  p.coefficients = MatrixXr::Zero(m, n);
  p.rhs = VectorXr::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) p.coefficients(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    p.rhs(i) = rhs[static_cast<std::size_t>(i)];
  }
  return p;
}

std::vector<std::vector<Rational>> rows_of(const FeasibilityProblem<Rational>& p) {
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(p.num_rows()));
  for (Eigen::Index i = 0; i < p.num_rows(); ++i) {
    for (Eigen::Index j = 0; j < p.num_vars(); ++j) rows[static_cast<std::size_t>(i)].push_back(p.coefficients(i, j));
  }
  return rows;
}

std::vector<Rational> rhs_of(const FeasibilityProblem<Rational>& p) {
  std::vector<Rational> out;
  for (Eigen::Index i = 0; i < p.num_rows(); ++i) out.push_back(p.rhs(i));
  return out;
}

FeasibilityProblem<Rational> random_problem(testing::Rng& rng, std::size_t m, std::size_t n) {
  std::vector<std::vector<Rational>> rows(m);
  std::vector<Rational> rhs(m);
  for (auto& r : rows) {
    for (std::size_t j = 0; j < n; ++j) r.push_back(testing::random_rational(rng, -2, 2, 2));
  }
  if (testing::below(rng, 2) == 0) {
    // Feasible by construction.
    std::vector<Rational> x;
    for (std::size_t j = 0; j < n; ++j) x.push_back(testing::below(rng, 3) == 0 ? Rational(0) : testing::random_rational(rng, 0, 2, 3));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) rhs[i] += rows[i][j] * x[j];
    }
  } else {
    for (auto& v : rhs) v = testing::random_rational(rng, -3, 3, 2);
  }
  return make_problem(rows, rhs);
}

}  // namespace

TEST_CASE("symmetric two-variable system") {
  const auto p = make_problem({{1, 1}, {1, -1}}, {1, 0});
  const auto r = solve_feasibility(p);
  REQUIRE(r.feasible);
  CHECK((*r.solution)(0) == Rational(1, 2));
  CHECK((*r.solution)(1) == Rational(1, 2));
}

TEST_CASE("negative requirement is infeasible") {
  const auto r = solve_feasibility(make_problem({{1}}, {-1}));
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.solution.has_value());
}

TEST_CASE("degenerate and empty rows") {
  CHECK(solve_feasibility(make_problem({{0, 0}}, {0})).feasible);
  CHECK_FALSE(solve_feasibility(make_problem({{0, 0}}, {1})).feasible);
  CHECK(solve_feasibility(make_problem({{1, 1}, {1, 1}, {2, 2}}, {1, 1, 2})).feasible);
  CHECK_FALSE(solve_feasibility(make_problem({{1, 1}, {1, 1}}, {1, 2})).feasible);
}

TEST_CASE("pivot budget is enforced") {
  const auto p = make_problem({{1, 1}, {1, -1}}, {1, 0});
  CHECK_THROWS_AS(solve_feasibility(p, SolverOptions{0}), ResourceLimitError);
}

TEST_CASE("double-slit coupling program at p=q=p'=q'=1/2 is feasible") {
  const auto s = build_double_slit({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(0)});
  const auto program = build_feasibility_program(s);
  const auto r = solve_feasibility(program.problem);
  REQUIRE(r.feasible);
  CHECK(satisfies(program.problem, *r.solution));

  // Hand-built witness: the left variables agree, the right variables agree,
  // closed-slit variables stay at -1, and exactly one side fires.
  VectorXr x = VectorXr::Zero(256);
  // variable order: q_o.@ox, q_.x@ox, q_x.@xx, q_.x@xx, q_x.@xo, q_.o@xo, q_o.@oo, q_.o@oo
  x(0b01000001) = Rational(1, 2);
  x(0b10100000) = Rational(1, 2);
  CHECK(satisfies(program.problem, x));
}

TEST_CASE("verdicts match vertex enumeration on small random problems") {
  testing::Rng rng(11);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + testing::below(rng, 3), n = 1 + testing::below(rng, 5);
    const auto p = random_problem(rng, m, n);
    const auto r = solve_feasibility(p);
    CAPTURE(trial);
    CHECK(r.feasible == oracle::feasible_by_vertex_enumeration(rows_of(p), rhs_of(p), static_cast<std::size_t>(n)));
    if (r.feasible) {
      ++feasible;
      CHECK(satisfies(p, *r.solution));
    }
  }
  CHECK(feasible > 50);
  CHECK(feasible < 300);
}

TEST_CASE("dependent rows and row scaling never change the verdict") {
  testing::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + testing::below(rng, 3), n = 1 + testing::below(rng, 5);
    const auto p = random_problem(rng, m, n);
    const bool base = solve_feasibility(p).feasible;

    auto rows = rows_of(p);
    auto rhs = rhs_of(p);
    // Append a random combination of existing rows.
    std::vector<Rational> combo(n, Rational(0));
    Rational combo_rhs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational w = testing::random_rational(rng, -2, 2, 3);
      for (std::size_t j = 0; j < n; ++j) combo[j] += w * rows[i][j];
      combo_rhs += w * rhs[i];
    }
    auto extended_rows = rows;
    auto extended_rhs = rhs;
    extended_rows.push_back(combo);
    extended_rhs.push_back(combo_rhs);
    extended_rows.push_back(rows[0]);
    extended_rhs.push_back(rhs[0]);
    CHECK(solve_feasibility(make_problem(extended_rows, extended_rhs)).feasible == base);

    // Scale each row by a nonzero rational.
    for (std::size_t i = 0; i < m; ++i) {
      Rational w = testing::random_rational(rng, -3, 3, 4);
      if (w == 0) w = Rational(-7, 5);
      for (auto& v : rows[i]) v *= w;
      rhs[i] *= w;
    }
    CHECK(solve_feasibility(make_problem(rows, rhs)).feasible == base);
  }
}
