#pragma once

#include <vector>

#include "mfpos/exact.hpp"

namespace mfpos {

// Exact rational LP:  min c.x  subject to  A x >= b, x >= 0.
struct LpProblem {
  std::vector<std::vector<Rational>> A;  // m rows, n columns
  std::vector<Rational> b;               // m
  std::vector<Rational> c;               // n
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;      // Optimal: minimizer; Unbounded: a feasible point
  Rational value;               // Optimal: c.x at the minimizer
  std::vector<Rational> duals;  // Optimal: y >= 0 with A^T y <= c and y.b = value
  std::vector<Rational> ray;    // Unbounded: r >= 0 with A r >= 0 and c.r < 0
};

// Two-phase primal simplex with Bland's rule; all arithmetic exact.
LpSolution solve_lp(const LpProblem& p);

}  // namespace mfpos
