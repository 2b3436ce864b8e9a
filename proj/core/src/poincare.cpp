#include <stdexcept>
#include <string>

#include "mfpos/poincare.hpp"

namespace mfpos {

namespace {

void check_weight(unsigned k) {
  if (k % 4 != 0 || k < 12) {
    throw std::invalid_argument("poincare: weight must be a multiple of 4, >= 12 (i^{-k} = 1)");
  }
}

// Upper bound on 2 pi sum_{c > c0} |K(1,n;c)/c J_{k-1}(4 pi sqrt(n)/c)|:
// Weil bound (gcd(1,n,c) = 1), |J_{k-1}(z)| <= (z/2)^{k-1}/(k-1)!, and
//   sum_{c > c0} d(c) c^{-(k-1/2)} <= 2 sum_{c > c0} c^{-(k-1)}
//                                  <= 2 (c0+1)^{-(k-1)} (1 + (c0+1)/(k-2)).
UpperReal c_sum_tail(unsigned k, std::uint64_t n, std::uint64_t c0, mpfr_prec_t p) {
  const Interval pi = Interval::pi(p);
  Interval base = Interval::exact_ui(2, p) * pi * sqrt_i(Interval::exact_ui(n, p));
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), k - 1);
  Interval bessel_cap = pow_ui_i(base, k - 1) / Interval::from_integer(fact, p);

  Interval c1 = Interval::exact_ui(c0 + 1, p);
  Interval divisor_sum = Interval::exact_ui(2, p) / pow_ui_i(c1, k - 1) *
                         (Interval::exact_ui(1, p) + c1 / Interval::exact_ui(k - 2, p));

  Interval total = Interval::exact_ui(2, p) * pi * bessel_cap * divisor_sum;
  return UpperReal::from_interval(total);
}

// Bracket of b(n): delta_{n,1} + 2 pi sum_{c=1}^{c_max} K(1,n;c)/c J_{k-1}(...),
// with the discarded tail returned separately.
struct BracketEval {
  Interval numeric;
  UpperReal tail;

  BracketEval() : numeric(kDefaultPrec) {}
};

BracketEval bracket_eval(unsigned k, std::uint64_t n, std::uint64_t c_max, mpfr_prec_t p) {
  const Interval pi = Interval::pi(p);
  const Interval sqrt_n = sqrt_i(Interval::exact_ui(n, p));
  Interval sum = (n == 1) ? Interval::exact_ui(1, p) : Interval(p);
  for (std::uint64_t c = 1; c <= c_max; ++c) {
    Interval arg = Interval::exact_ui(4, p) * pi * sqrt_n / Interval::exact_ui(c, p);
    Interval J = bessel_j(k - 1, arg).value;
    Interval K = kloosterman(1, n, c, p);
    sum = sum + Interval::exact_ui(2, p) * pi * K * J / Interval::exact_ui(c, p);
  }
  BracketEval out;
  out.tail = c_sum_tail(k, n, c_max, p);
  Real pad_lo(p);
  mpfr_neg(pad_lo.get(), out.tail.value().get(), MPFR_RNDD);
  Real pad_hi = out.tail.value();
  out.numeric = sum + Interval::from_endpoints(std::move(pad_lo), std::move(pad_hi));
  return out;
}

// n^{(k-1)/2} * bracket.
Interval scale_to_coefficient(unsigned k, std::uint64_t n, const Interval& bracket,
                              mpfr_prec_t p) {
  Interval root = sqrt_i(Interval::exact_ui(n, p));
  return pow_ui_i(root, k - 1) * bracket;
}

}  // namespace

PoincareCoeff poincare_coeff(unsigned k, std::uint64_t n, double target_width,
                             const PoincareOptions& opts) {
  check_weight(k);
  if (n == 0) throw std::invalid_argument("poincare_coeff: n must be >= 1");
  if (!(target_width > 0)) throw std::invalid_argument("poincare_coeff: width must be positive");

  mpfr_prec_t p = opts.prec_bits;
  std::uint64_t c_max = opts.cmax_start;
  double achieved = 0.0;
  for (;;) {
    BracketEval be = bracket_eval(k, n, c_max, p);
    Interval value = scale_to_coefficient(k, n, be.numeric, p);
    achieved = value.width().to_double(MPFR_RNDU);
    if (achieved <= target_width) {
      PoincareCoeff out;
      out.n = n;
      out.value = value;
      out.c_max = c_max;
      out.tail = be.tail;
      out.prec_bits = p;
      return out;
    }
    // Attribute the width: if the analytic tail alone exceeds half the
    // budget, more terms are needed; otherwise more precision.
    Interval scale = pow_ui_i(sqrt_i(Interval::exact_ui(n, p)), k - 1);
    Real tail_scaled(p);
    mpfr_mul(tail_scaled.get(), be.tail.value().get(), scale.hi().get(), MPFR_RNDU);
    mpfr_mul_2ui(tail_scaled.get(), tail_scaled.get(), 1, MPFR_RNDU);
    const bool tail_dominates = tail_scaled.to_double(MPFR_RNDU) > 0.5 * target_width;
    if (tail_dominates && c_max < opts.cmax_cap) {
      c_max = c_max ? 2 * c_max : 1;
    } else if (p < opts.prec_cap) {
      p *= 2;
    } else if (c_max < opts.cmax_cap) {
      c_max = c_max ? 2 * c_max : 1;
    } else {
      throw WidthNotReachedError(
          "poincare_coeff: width " + std::to_string(achieved) + " > target " +
              std::to_string(target_width) + " at c_max/precision caps",
          achieved);
    }
  }
}

PoincareSplit poincare_c1_split(unsigned k, std::uint64_t n, mpfr_prec_t prec) {
  check_weight(k);
  if (n == 0) throw std::invalid_argument("poincare_c1_split: n must be >= 1");
  const Interval pi = Interval::pi(prec);
  Interval arg = Interval::exact_ui(4, prec) * pi * sqrt_i(Interval::exact_ui(n, prec));
  PoincareSplit out;
  out.c1_term = Interval::exact_ui(2, prec) * pi * bessel_j(k - 1, arg).value;
  out.rest_bound = c_sum_tail(k, n, 1, prec);
  return out;
}

std::vector<SignReport> sign_scan(unsigned k, std::uint64_t n_limit,
                                  const PoincareOptions& opts) {
  check_weight(k);
  std::vector<SignReport> rows;
  for (std::uint64_t n = 1; n <= n_limit; ++n) {
    mpfr_prec_t p = opts.prec_bits;
    std::uint64_t c_max = opts.cmax_start;
    SignReport row;
    row.n = n;
    for (;;) {
      BracketEval be = bracket_eval(k, n, c_max, p);
      Interval value = scale_to_coefficient(k, n, be.numeric, p);
      row.lo = value.lo().to_double(MPFR_RNDD);
      row.hi = value.hi().to_double(MPFR_RNDU);
      row.c_max = c_max;
      if (value.is_positive()) {
        row.verdict = SignVerdict::Positive;
        break;
      }
      if (value.is_negative()) {
        row.verdict = SignVerdict::Negative;
        break;
      }
      // The bracket straddles zero: tighten whichever source is coarser.
      Real float_width = be.numeric.width();
      Real tail_width(p);
      mpfr_mul_2ui(tail_width.get(), be.tail.value().get(), 1, MPFR_RNDU);
      const bool tail_dominates = mpfr_cmp(tail_width.get(), float_width.get()) > 0;
      if (tail_dominates && c_max < opts.cmax_cap) {
        c_max = c_max ? 2 * c_max : 1;
      } else if (p < opts.prec_cap) {
        p *= 2;
      } else if (c_max < opts.cmax_cap) {
        c_max = c_max ? 2 * c_max : 1;
      } else {
        row.verdict = SignVerdict::Undecided;
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<std::uint64_t> first_sign_change(unsigned k, std::uint64_t n_limit,
                                               const PoincareOptions& opts) {
  std::vector<SignReport> rows = sign_scan(k, n_limit, opts);
  for (const auto& row : rows) {
    if (row.verdict == SignVerdict::Negative) return row.n;
    if (row.verdict == SignVerdict::Undecided) {
      throw UndecidedError("first_sign_change: sign of coefficient " + std::to_string(row.n) +
                               " undecided at caps",
                           row.n, row.lo, row.hi);
    }
  }
  return std::nullopt;
}

}  // namespace mfpos
