#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace mfpos {

using Integer = mpz_class;
using Rational = mpq_class;

// B_k in the convention B_0 = 1, B_1 = -1/2, B_2 = 1/6, B_12 = -691/2730.
// Odd k > 1 (which would give zero) are rejected as a caller bug.
Rational bernoulli(unsigned k);

// Sum of the e-th powers of the divisors of n, n >= 1.
Integer sigma(unsigned e, std::uint64_t n);

// d(n), the number of divisors of n, n >= 1.
std::uint64_t divisor_count(std::uint64_t n);

// Divisors of n in increasing order.
std::vector<std::uint64_t> divisors_of(std::uint64_t n);

// -2k/B_k for k = 0 mod 4, k >= 4.  Strictly positive on that domain.
Rational eisenstein_factor(unsigned k);

// -2k/B_k for any even k >= 4 (weight 6 is needed internally for the
// E4^3 - E6^2 = 1728*Delta cross-check).
Rational eisenstein_factor_even(unsigned k);

Integer binomial(unsigned n, unsigned k);

// Canonical "p/q" (or "p" when q == 1) exact decimal-free string.
std::string to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace mfpos
