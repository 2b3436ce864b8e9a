#include <stdexcept>

#include "mfpos/poincare.hpp"

namespace mfpos {

// Ascending series J_nu(x) = sum_j (-1)^j (x/2)^{nu+2j} / (j! (nu+j)!).
// Term magnitudes follow the exact recurrence
//   t_{j+1} = t_j * (x/2)^2 / ((j+1)(nu+j+1)),
// so once the ratio's upper bound drops below 1 the magnitudes decrease
// monotonically; the signs alternate exactly, and the remainder after
// truncation is bounded by the first omitted term.
BesselEval bessel_j(unsigned nu, const Interval& x) {
  if (nu < 1) throw std::invalid_argument("bessel_j: order must be >= 1");
  if (!(mpfr_sgn(x.lo().get()) > 0)) {
    throw std::invalid_argument("bessel_j: argument must be positive");
  }
  const mpfr_prec_t p = x.prec();

  const Interval half_x = x / Interval::exact_ui(2, p);
  const Interval half_sq = pow_ui_i(half_x, 2);

  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), nu);
  Interval term = pow_ui_i(half_x, nu) / Interval::from_integer(fact, p);  // |t_0|

  Interval sum(p);
  Real max_term(p);  // largest |t_j| upper bound seen (cancellation scale)
  int sign = 1;
  const unsigned long max_terms = 64 * (nu + 64);
  bool done = false;
  for (unsigned long j = 0; j < max_terms; ++j) {
    sum = (sign > 0) ? (sum + term) : (sum - term);
    mpfr_max(max_term.get(), max_term.get(), term.hi().get(), MPFR_RNDU);

    Interval denom = Interval::exact_ui(j + 1, p) * Interval::exact_ui(nu + j + 1, p);
    Interval ratio = half_sq / denom;
    term = term * ratio;  // |t_{j+1}|
    sign = -sign;

    if (mpfr_cmp_ui(ratio.hi().get(), 1) < 0) {
      Real threshold(p);
      mpfr_mul_2si(threshold.get(), max_term.get(), -static_cast<long>(p) - 8, MPFR_RNDU);
      if (mpfr_cmp(term.hi().get(), threshold.get()) <= 0) {
        done = true;
        break;
      }
    }
  }
  if (!done) throw Error("bessel_j: series did not reach the tail-bound regime");

  // |remainder| <= |t_{j+1}|.
  Real pad_hi = term.hi();
  Real pad_lo(p);
  mpfr_neg(pad_lo.get(), pad_hi.get(), MPFR_RNDD);
  sum = sum + Interval::from_endpoints(std::move(pad_lo), std::move(pad_hi));

  BesselEval out;
  out.order = nu;
  out.argument = x;
  out.value = sum;
  return out;
}

}  // namespace mfpos
