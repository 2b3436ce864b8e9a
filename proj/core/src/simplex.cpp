#include "mfpos/simplex.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace mfpos {

namespace {

// Dense tableau over exact rationals.  Columns: n structural variables,
// m surplus variables, m artificial variables.  The artificial columns stay
// in the tableau so the simplex multipliers can be read off at the end.
struct Tableau {
  size_t m = 0, n = 0;
  size_t ncols = 0;
  size_t surplus0 = 0, art0 = 0;
  std::vector<std::vector<Rational>> tab;  // m rows of ncols entries
  std::vector<Rational> rhs;               // m, kept >= 0
  std::vector<Rational> objrow;            // ncols reduced costs
  Rational objrhs;                         // -(current objective value)
  std::vector<size_t> basis;               // basic column per row
  std::vector<bool> row_deleted;
  std::vector<bool> flipped;               // row was multiplied by -1

  void pivot(size_t pr, size_t pc) {
    const Rational piv = tab[pr][pc];
    if (piv == 0) throw std::logic_error("simplex: zero pivot");
    for (auto& v : tab[pr]) v /= piv;
    rhs[pr] /= piv;
    tab[pr][pc] = 1;
    for (size_t r = 0; r < m; ++r) {
      if (r == pr || row_deleted[r]) continue;
      const Rational factor = tab[r][pc];
      if (factor == 0) continue;
      for (size_t j = 0; j < ncols; ++j) {
        if (tab[pr][j] == 0) continue;
        tab[r][j] -= factor * tab[pr][j];
      }
      rhs[r] -= factor * rhs[pr];
      tab[r][pc] = 0;
    }
    const Rational ofactor = objrow[pc];
    if (ofactor != 0) {
      for (size_t j = 0; j < ncols; ++j) {
        if (tab[pr][j] == 0) continue;
        objrow[j] -= ofactor * tab[pr][j];
      }
      objrhs -= ofactor * rhs[pr];
      objrow[pc] = 0;
    }
    basis[pr] = pc;
  }

  // Recompute the reduced-cost row for the given per-column costs.
  void load_objective(const std::vector<Rational>& cost) {
    objrow = cost;
    objrhs = 0;
    for (size_t r = 0; r < m; ++r) {
      if (row_deleted[r]) continue;
      const Rational cb = cost[basis[r]];
      if (cb == 0) continue;
      for (size_t j = 0; j < ncols; ++j) {
        if (tab[r][j] == 0) continue;
        objrow[j] -= cb * tab[r][j];
      }
      objrhs -= cb * rhs[r];
    }
  }

  // Bland's rule iteration until optimal or unbounded.
  // Returns the entering column on unboundedness, or SIZE_MAX when optimal.
  size_t run(bool allow_artificials) {
    for (;;) {
      size_t enter = SIZE_MAX;
      const size_t limit = allow_artificials ? ncols : art0;
      for (size_t j = 0; j < limit; ++j) {
        if (objrow[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) return SIZE_MAX;  // optimal

      size_t leave = SIZE_MAX;
      Rational best_ratio;
      for (size_t r = 0; r < m; ++r) {
        if (row_deleted[r]) continue;
        if (tab[r][enter] <= 0) continue;
        Rational ratio = rhs[r] / tab[r][enter];
        if (leave == SIZE_MAX || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == SIZE_MAX) return enter;  // unbounded along 'enter'
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const size_t m = p.A.size();
  const size_t n = p.c.size();
  for (const auto& row : p.A) {
    if (row.size() != n) throw std::invalid_argument("solve_lp: ragged constraint matrix");
  }
  if (p.b.size() != m) throw std::invalid_argument("solve_lp: |b| != #rows");

  Tableau T;
  T.m = m;
  T.n = n;
  T.surplus0 = n;
  T.art0 = n + m;
  T.ncols = n + 2 * m;
  T.tab.assign(m, std::vector<Rational>(T.ncols, Rational(0)));
  T.rhs.assign(m, Rational(0));
  T.basis.assign(m, 0);
  T.row_deleted.assign(m, false);
  T.flipped.assign(m, false);

  for (size_t r = 0; r < m; ++r) {
    const bool flip = p.b[r] < 0;
    T.flipped[r] = flip;
    for (size_t j = 0; j < n; ++j) T.tab[r][j] = flip ? -p.A[r][j] : p.A[r][j];
    T.tab[r][T.surplus0 + r] = flip ? Rational(1) : Rational(-1);
    T.tab[r][T.art0 + r] = 1;
    T.rhs[r] = flip ? -p.b[r] : p.b[r];
    T.basis[r] = T.art0 + r;
  }

  // Phase 1: minimize the sum of artificials.
  {
    std::vector<Rational> cost(T.ncols, Rational(0));
    for (size_t r = 0; r < m; ++r) cost[T.art0 + r] = 1;
    T.load_objective(cost);
    const size_t res = T.run(/*allow_artificials=*/true);
    if (res != SIZE_MAX) throw std::logic_error("simplex: phase 1 unbounded");
    if (-T.objrhs > 0) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Pivot remaining artificials out of the basis; fully zero rows are
    // redundant constraints.
    for (size_t r = 0; r < m; ++r) {
      if (T.row_deleted[r] || T.basis[r] < T.art0) continue;
      size_t pc = SIZE_MAX;
      for (size_t j = 0; j < T.art0; ++j) {
        if (T.tab[r][j] != 0) {
          pc = j;
          break;
        }
      }
      if (pc == SIZE_MAX) {
        T.row_deleted[r] = true;
      } else {
        T.pivot(r, pc);
      }
    }
  }

  // Phase 2: original objective.
  {
    std::vector<Rational> cost(T.ncols, Rational(0));
    for (size_t j = 0; j < n; ++j) cost[j] = p.c[j];
    T.load_objective(cost);
    const size_t res = T.run(/*allow_artificials=*/false);

    LpSolution sol;
    sol.x.assign(n, Rational(0));
    for (size_t r = 0; r < m; ++r) {
      if (T.row_deleted[r]) continue;
      if (T.basis[r] < n) sol.x[T.basis[r]] = T.rhs[r];
    }

    if (res != SIZE_MAX) {
      sol.status = LpStatus::Unbounded;
      sol.ray.assign(n, Rational(0));
      if (res < n) sol.ray[res] = 1;
      for (size_t r = 0; r < m; ++r) {
        if (T.row_deleted[r]) continue;
        if (T.basis[r] < n) sol.ray[T.basis[r]] = -T.tab[r][res];
      }
      return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.value = -T.objrhs;
    sol.duals.assign(m, Rational(0));
    for (size_t r = 0; r < m; ++r) {
      if (T.row_deleted[r]) continue;  // redundant rows keep multiplier 0
      Rational y = -T.objrow[T.art0 + r];
      sol.duals[r] = T.flipped[r] ? -y : y;
    }
    return sol;
  }
}

}  // namespace mfpos
