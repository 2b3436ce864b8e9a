#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfpos/enclosure.hpp"

namespace mfpos {

// Enclosure of K(m,n;c) = sum over units x mod c of cos(2 pi (m x + n x^{-1}) / c).
Interval kloosterman(std::uint64_t m, std::uint64_t n, std::uint64_t c,
                     mpfr_prec_t prec = kDefaultPrec);

struct BesselEval {
  unsigned order = 0;
  Interval argument;
  Interval value;

  BesselEval() : argument(kDefaultPrec), value(kDefaultPrec) {}
};

// J_nu(x) for integer nu >= 1, x > 0, by the ascending series with a
// certified alternating tail bound.
BesselEval bessel_j(unsigned nu, const Interval& x);

struct PoincareOptions {
  mpfr_prec_t prec_bits = 256;
  mpfr_prec_t prec_cap = 1 << 13;
  std::uint64_t cmax_start = 8;
  std::uint64_t cmax_cap = 1 << 14;
};

// Certified interval for the n-th coefficient b(n) of the index-1 Poincare
// series of weight k (k = 0 mod 4): the c-sum is truncated at c_max and the
// discarded tail is bounded analytically.
struct PoincareCoeff {
  std::uint64_t n = 0;
  Interval value;          // [lo, hi] containing b(n)
  std::uint64_t c_max = 0;
  UpperReal tail;          // bound on the discarded part of the c-sum
  mpfr_prec_t prec_bits = 0;

  PoincareCoeff() : value(kDefaultPrec) {}
};

// Interval for b(n) with width at most target_width; raises c_max and the
// working precision as needed and throws WidthNotReachedError at the caps.
PoincareCoeff poincare_coeff(unsigned k, std::uint64_t n, double target_width,
                             const PoincareOptions& opts = {});

// The c = 1 term of the bracket (2 pi J_{k-1}(4 pi sqrt n)) and a certified
// upper bound on the absolute sum of every term with c >= 2.
struct PoincareSplit {
  Interval c1_term;
  UpperReal rest_bound;

  PoincareSplit() : c1_term(kDefaultPrec) {}
};
PoincareSplit poincare_c1_split(unsigned k, std::uint64_t n, mpfr_prec_t prec = 256);

enum class SignVerdict { Positive, Negative, Undecided };

struct SignReport {
  std::uint64_t n = 0;
  SignVerdict verdict = SignVerdict::Undecided;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t c_max = 0;
};

// Per-coefficient sign verdicts for n = 1..n_limit (never throws on
// undecided rows; they are reported as such).
std::vector<SignReport> sign_scan(unsigned k, std::uint64_t n_limit,
                                  const PoincareOptions& opts = {});

// Least n <= n_limit with certified b(n) < 0, or nullopt when every
// coefficient up to n_limit is certified positive.  Throws UndecidedError
// when a sign cannot be resolved at the caps.
std::optional<std::uint64_t> first_sign_change(unsigned k, std::uint64_t n_limit,
                                               const PoincareOptions& opts = {});

}  // namespace mfpos
