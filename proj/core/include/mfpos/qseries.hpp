#pragma once

#include <vector>

#include "mfpos/exact.hpp"

namespace mfpos {

// Truncated q-expansion with exact rational coefficients.
//
// c[i] holds the coefficient of q^(lead+i); coefficients are known exactly
// for every exponent < prec, and are zero (known, not unknown) below lead.
// Invariant: c.size() == prec - lead.
struct QExpansion {
  long lead = 0;
  long prec = 0;
  std::vector<Rational> c;

  static QExpansion zero(long prec);
  static QExpansion one(long prec);

  // Coefficient of q^n.  Exact zero below lead; throws at or beyond prec.
  const Rational& coeff(long n) const;
  bool knows(long n) const { return n < prec; }
  long terms() const { return prec - lead; }
};

QExpansion add(const QExpansion& a, const QExpansion& b);
QExpansion sub(const QExpansion& a, const QExpansion& b);
QExpansion neg(const QExpansion& a);
QExpansion scale(const QExpansion& a, const Rational& r);

// Product truncated to the min valid precision of the factors.
QExpansion mul(const QExpansion& a, const QExpansion& b);
QExpansion pow_ui(const QExpansion& a, unsigned e);

// Multiplicative inverse; requires a nonzero coefficient at a.lead.
QExpansion inverse(const QExpansion& a);

// Multiply by q^d.
QExpansion shift(const QExpansion& a, long d);

// Reduce the precision to new_prec <= a.prec.
QExpansion truncate(const QExpansion& a, long new_prec);

// Re-index so storage starts at new_lead <= a.lead (padding explicit zeros).
QExpansion with_lead(const QExpansion& a, long new_lead);

inline QExpansion operator+(const QExpansion& a, const QExpansion& b) { return add(a, b); }
inline QExpansion operator-(const QExpansion& a, const QExpansion& b) { return sub(a, b); }
inline QExpansion operator*(const QExpansion& a, const QExpansion& b) { return mul(a, b); }

// Delta = q prod (1-q^n)^24 = sum tau(n) q^n; exact integer coefficients,
// known for 1 <= n < precision.
QExpansion delta_qexp(long precision);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 4.
QExpansion eisenstein_qexp(unsigned k, long precision);

// j = E_4^3 / Delta = q^-1 + 744 + 196884 q + ...; Laurent expansion from q^-1.
QExpansion j_qexp(long precision);

// Echelonized basis F_{k,0..l} of M_k with F_{k,m} = q^m + O(q^{l+1}),
// l = floor(k/12).  Forms are stored from exponent 0 with integer entries.
struct CanonicalBasis {
  unsigned weight = 0;
  unsigned ell = 0;
  long prec = 0;
  std::vector<QExpansion> forms;  // forms[m] = F_{k,m}
};

CanonicalBasis miller_basis(unsigned k, long precision);

}  // namespace mfpos
