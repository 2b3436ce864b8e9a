#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfpos/qseries.hpp"
#include "mfpos/simplex.hpp"

namespace mfpos {

// Encodes "constant + sum coeffs[m-1] * a(m) >= 0" over a(1..ell);
// n records the coefficient index the inequality came from.
struct LinearInequality {
  unsigned n = 0;
  Rational constant;
  std::vector<Rational> coeffs;

  Rational eval(const std::vector<Rational>& a) const;
};

// Exact extraction of (c_0(n), c_1(n), ..., c_ell(n)).
LinearInequality inequality_for(const CanonicalBasis& basis, unsigned n);

// Inequalities for n = 1..limit.
std::vector<LinearInequality> inequalities_upto(const CanonicalBasis& basis, unsigned limit);

// Nonnegative multipliers exhibiting the target as premise combination:
//   target = sum_i premise_multipliers[i] * premise_i
//          + sum_m bound_multipliers[m] * (a(m) >= 0) + slack,  slack >= 0.
struct FarkasCertificate {
  std::vector<Rational> premise_multipliers;
  std::vector<Rational> bound_multipliers;
  Rational slack;
};

struct WitnessPoint {
  std::vector<Rational> values;  // a(1), ..., a(ell)
};

struct ImplicationResult {
  bool implied = false;
  bool vacuous = false;  // premise region (with a >= 0) is empty
  std::optional<FarkasCertificate> certificate;
  std::optional<WitnessPoint> witness;
};

// Decides whether the premises (plus the implicit a(m) >= 0 bounds) imply the
// target, via exact LP.  YES carries a verified Farkas certificate, NO a
// verified witness satisfying every premise and strictly violating the target.
ImplicationResult implies(const std::vector<LinearInequality>& premises,
                          const LinearInequality& target);

bool verify_certificate(const std::vector<LinearInequality>& premises,
                        const LinearInequality& target, const FarkasCertificate& cert);
bool verify_witness(const std::vector<LinearInequality>& premises,
                    const LinearInequality& target, const WitnessPoint& w);

struct AkResult {
  unsigned A = 0;
  WitnessPoint witness;  // satisfies inequalities 1..A-1, violates A
};

// Smallest N such that inequalities 1..N imply inequalities N+1..Bk.
// The witness is re-verified by expanding the exact q-series.
AkResult compute_A(unsigned k, const CanonicalBasis& basis, unsigned Bk);

struct PolytopeSummary {
  unsigned ell = 0;
  std::vector<unsigned> active;  // minimal irredundant constraint set
  bool touches_horizon = false;  // max(active) == Bk
  std::vector<std::vector<Rational>> vertices;  // populated for ell <= 2
};

// Irredundant description of S = intersection of S_n, n = 1..Bk, with vertex
// enumeration in dimensions 1 and 2.  The redundancy tests here run over the
// half-space family alone (no implicit bounds): S_1..S_ell are members.
PolytopeSummary polytope_summary(unsigned k, const CanonicalBasis& basis, unsigned Bk);

// Independent deciders used as cross-check oracles.
bool fm_implies(const std::vector<LinearInequality>& premises, const LinearInequality& target);
bool vertex_implies(const std::vector<LinearInequality>& premises,
                    const LinearInequality& target);  // ell == 2 only

}  // namespace mfpos
