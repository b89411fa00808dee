#pragma once

// Independent reference computations. Nothing here calls the simplex or the
// closed forms under test.

#include <cstdint>
#include <optional>
#include <vector>

#include "cbd/coupling.hpp"
#include "cbd/rational.hpp"
#include "cbd/system.hpp"

namespace cbd::oracle {

/// max of sum l_i x_i over all sign vectors with an odd number of -1.
inline Rational odd_sign_max_brute_force(const std::vector<Rational>& x) {
  const std::size_t n = x.size();
  std::optional<Rational> best;
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
    if (std::popcount(signs) % 2 == 0) continue;  // set bit = -1
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((signs >> i) & 1) {
        sum -= x[i];
      } else {
        sum += x[i];
      }
    }
    if (!best || sum > *best) best = sum;
  }
  return *best;
}

/// Solves A_S y = b for a column subset S by exact Gauss-Jordan elimination;
/// free variables are set to zero. Returns nothing if inconsistent.
inline std::optional<std::vector<Rational>> solve_subset(const std::vector<std::vector<Rational>>& a,
                                                         const std::vector<Rational>& b,
                                                         const std::vector<std::size_t>& cols) {
  const std::size_t m = a.size(), k = cols.size();
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[i][j] = a[i][cols[j]];
    t[i][k] = b[i];
  }
  std::vector<std::optional<std::size_t>> pivot_row(k);
  std::size_t row = 0;
  for (std::size_t j = 0; j < k && row < m; ++j) {
    std::size_t p = row;
    while (p < m && t[p][j] == 0) ++p;
    if (p == m) continue;
    std::swap(t[p], t[row]);
    const Rational inv = 1 / t[row][j];
    for (auto& v : t[row]) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][j] == 0) continue;
      const Rational f = t[i][j];
      for (std::size_t c = 0; c <= k; ++c) t[i][c] -= f * t[row][c];
    }
    pivot_row[j] = row++;
  }
  for (std::size_t i = row; i < m; ++i) {
    if (t[i][k] != 0) return std::nullopt;
  }
  std::vector<Rational> y(k, Rational(0));
  for (std::size_t j = 0; j < k; ++j) {
    if (pivot_row[j]) y[j] = t[*pivot_row[j]][k];
  }
  return y;
}

/// Feasibility of A x = b, x >= 0 by enumerating candidate basic solutions
/// over every column subset. Exponential; for a handful of columns only.
inline bool feasible_by_vertex_enumeration(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                           std::size_t n) {
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if ((subset >> j) & 1) cols.push_back(j);
    }
    auto y = solve_subset(a, b, cols);
    if (!y) continue;
    bool nonnegative = true;
    for (const auto& v : *y) nonnegative = nonnegative && v >= 0;
    if (nonnegative) return true;
  }
  return false;
}

/// Atoms of the full variable space that no probability-zero or
/// probability-one constraint excludes: bunch assignments of probability
/// zero are forbidden, and pairs whose coincidence target is 1 must agree.
/// An empty result proves that no multimaximal coupling exists.
inline std::vector<std::uint64_t> admissible_atoms(const System& s) {
  const auto vars = system_variables(s);
  std::vector<std::uint64_t> out;
  for (std::uint64_t atom = 0; atom < (std::uint64_t{1} << vars.size()); ++atom) {
    bool ok = true;
    std::size_t offset = 0;
    for (const auto& b : s.bunches()) {
      const auto local = static_cast<Assignment>((atom >> offset) & ((std::uint64_t{1} << b.size()) - 1));
      ok = ok && b.probability(local) != 0;
      offset += b.size();
    }
    for (std::size_t i = 0; ok && i < vars.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < vars.size(); ++j) {
        if (vars[i].content != vars[j].content) continue;
        const Rational pi = plus_probability(s.bunch(vars[i].context), vars[i].content);
        const Rational pj = plus_probability(s.bunch(vars[j].context), vars[j].content);
        if (pi == pj && ((atom >> i) & 1) != ((atom >> j) & 1)) ok = false;
      }
    }
    if (ok) out.push_back(atom);
  }
  return out;
}

}  // namespace cbd::oracle
