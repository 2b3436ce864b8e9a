#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mfpos/enclosure.hpp"
#include "mfpos/qseries.hpp"

namespace mfpos {

// The coefficient-bound theorem is printed with e^{18.72} in one place and
// e^{18.74} in another; the exponent is a knob so either can be evaluated.
struct CuspBoundOptions {
  double jr_exponent = 18.72;
};

// Rigorous bound data for one weight.
struct BoundReport {
  unsigned weight = 0;
  unsigned ell = 0;
  unsigned t = 0;
  UpperReal C2;
  Integer Bk;  // max{ell, t, floor((-C2 B_k / k)^{1/(k/2-1)}) + 1}
  Integer L;   // ceil((k-1)^2 / 16 pi^2)
  Integer U;   // floor(k^4 (log k + log log k)^2 / 7316)
  UpperReal thm3_constant;             // multiplier of d(n) n^{(k-1)/2}
  std::optional<UpperReal> C_cap;      // k >= 64 only
  UpperReal y;                         // (k/2pi)(log k + log log k)
  Integer s;                           // ceil(k^2 (log k + log log k)^2)
  std::vector<Rational> coeff_caps;    // exact |c(m)| caps, m = 1..ell
  mpfr_prec_t prec_bits = kDefaultPrec;
};

// Minimal t >= 1 with c_m(t) < 0 for every 1 <= m <= ell.
// Throws NotFoundError when no such t <= search_limit exists.
unsigned find_t(const CanonicalBasis& basis, unsigned search_limit);

// Multiplier of d(n) n^{(k-1)/2} in the cusp-coefficient bound, evaluated
// with outward rounding from upper bounds on |c(1)|..|c(ell)|.
UpperReal cusp_bound_constant(const std::vector<UpperReal>& coeff_bounds, unsigned k,
                              mpfr_prec_t prec = kDefaultPrec,
                              const CuspBoundOptions& opts = {});
UpperReal cusp_bound_constant(const std::vector<Rational>& coeff_bounds, unsigned k,
                              mpfr_prec_t prec = kDefaultPrec,
                              const CuspBoundOptions& opts = {});

// Exact |c(m)| caps from the column-negative index t:
//   max{ F sigma_{k-1}(m),  -c_0(t)/c_m(t) - F sigma_{k-1}(m) },  F = -2k/B_k.
std::vector<Rational> coefficient_caps(unsigned k, const CanonicalBasis& basis, unsigned t);

// C2 and B(k) (plus L, U, thm3 constant, C cap, y, s) for one weight.
BoundReport c2_and_Bk(unsigned k, const CanonicalBasis& basis, unsigned t,
                      mpfr_prec_t prec = kDefaultPrec, const CuspBoundOptions& opts = {});

// (L(k), U(k)); integer parts taken only when the enclosure does not
// straddle an integer, retrying at doubled precision.
std::pair<Integer, Integer> theorem1_bounds(unsigned k, mpfr_prec_t prec = kDefaultPrec);

// Upper bound for sum_{n=s}^inf n^alpha e^{n beta}, alpha > 0 > beta,
// requiring s*beta < -alpha (HypothesisError otherwise).
UpperReal tail_bound(std::uint64_t s, double alpha, double beta,
                     mpfr_prec_t prec = kDefaultPrec);

// 12 (C + 1.5^k) sqrt(log k) d(n) n^{(k-1)/2}; requires k >= 64.
UpperReal smallC_bound(unsigned k, const UpperReal& C, std::uint64_t n,
                       mpfr_prec_t prec = kDefaultPrec);

// 1.806 (k/2pi)^k (log k + log log k)^k; requires k >= 64.
UpperReal prop53_C_cap(unsigned k, mpfr_prec_t prec = kDefaultPrec);

// Upper bound on a(n) for a nonnegative-coefficient form:
//   k >= 16: -2k/B_k sigma_{k-1}(n) + 1.07e-10 (k/2pi)^k (log k)^{1.5k} d(n) n^{(k-1)/2}
//   k == 12: -24/B_12 sigma_11(n) + 8096 d(n) n^{11/2}
UpperReal theorem3_bound(unsigned k, std::uint64_t n, mpfr_prec_t prec = kDefaultPrec);

// (ceil(k^2 (log k + log log k)^2), ceil(k^4 (log k + log log k)^2 / 7316));
// requires k >= 92.
std::pair<Integer, Integer> thm54_threshold(unsigned k, mpfr_prec_t prec = kDefaultPrec);

}  // namespace mfpos
