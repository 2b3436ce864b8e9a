#include "mfpos/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfpos {

namespace {

const Rational kZero(0);

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

QExpansion QExpansion::zero(long prec) {
  QExpansion s;
  s.lead = 0;
  s.prec = prec;
  s.c.assign(static_cast<size_t>(std::max(0L, prec)), Rational(0));
  return s;
}

QExpansion QExpansion::one(long prec) {
  QExpansion s = zero(prec);
  require(prec >= 1, "QExpansion::one: empty precision range");
  s.c[0] = 1;
  return s;
}

const Rational& QExpansion::coeff(long n) const {
  if (n >= prec) throw std::out_of_range("QExpansion::coeff: exponent beyond precision");
  if (n < lead) return kZero;
  return c[static_cast<size_t>(n - lead)];
}

QExpansion add(const QExpansion& a, const QExpansion& b) {
  QExpansion r;
  r.lead = std::min(a.lead, b.lead);
  r.prec = std::min(a.prec, b.prec);
  require(r.prec > r.lead, "add: empty valid range");
  r.c.resize(static_cast<size_t>(r.prec - r.lead));
  for (long n = r.lead; n < r.prec; ++n) {
    r.c[static_cast<size_t>(n - r.lead)] = a.coeff(n) + b.coeff(n);
  }
  return r;
}

QExpansion sub(const QExpansion& a, const QExpansion& b) {
  QExpansion r;
  r.lead = std::min(a.lead, b.lead);
  r.prec = std::min(a.prec, b.prec);
  require(r.prec > r.lead, "sub: empty valid range");
  r.c.resize(static_cast<size_t>(r.prec - r.lead));
  for (long n = r.lead; n < r.prec; ++n) {
    r.c[static_cast<size_t>(n - r.lead)] = a.coeff(n) - b.coeff(n);
  }
  return r;
}

QExpansion neg(const QExpansion& a) {
  QExpansion r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

QExpansion scale(const QExpansion& a, const Rational& s) {
  QExpansion r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

QExpansion mul(const QExpansion& a, const QExpansion& b) {
  QExpansion r;
  r.lead = a.lead + b.lead;
  r.prec = std::min(a.prec + b.lead, b.prec + a.lead);
  require(r.prec > r.lead, "mul: empty valid range");
  r.c.assign(static_cast<size_t>(r.prec - r.lead), Rational(0));
  Rational term;
  const long na = a.prec - a.lead;
  const long nb = b.prec - b.lead;
  const long nr = r.prec - r.lead;
  for (long i = 0; i < na; ++i) {
    if (a.c[static_cast<size_t>(i)] == 0) continue;
    const long jmax = std::min(nb, nr - i);
    for (long j = 0; j < jmax; ++j) {
      if (b.c[static_cast<size_t>(j)] == 0) continue;
      term = a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
      r.c[static_cast<size_t>(i + j)] += term;
    }
  }
  return r;
}

QExpansion pow_ui(const QExpansion& a, unsigned e) {
  if (e == 0) return QExpansion::one(std::max(a.prec - a.lead, 1L));
  QExpansion result;
  QExpansion base = a;
  unsigned rest = e;
  bool result_set = false;
  while (rest > 0) {
    if (rest & 1u) {
      result = result_set ? mul(result, base) : base;
      result_set = true;
    }
    rest >>= 1;
    if (rest > 0) base = mul(base, base);
  }
  return result;
}

QExpansion inverse(const QExpansion& a) {
  require(a.prec > a.lead, "inverse: empty valid range");
  require(a.c[0] != 0, "inverse: leading coefficient is zero");
  const long n = a.prec - a.lead;
  QExpansion r;
  r.lead = -a.lead;
  r.prec = r.lead + n;
  r.c.assign(static_cast<size_t>(n), Rational(0));
  const Rational inv0 = Rational(1) / a.c[0];
  r.c[0] = inv0;
  for (long m = 1; m < n; ++m) {
    Rational acc(0);
    for (long j = 1; j <= m; ++j) {
      if (a.c[static_cast<size_t>(j)] == 0) continue;
      acc += a.c[static_cast<size_t>(j)] * r.c[static_cast<size_t>(m - j)];
    }
    r.c[static_cast<size_t>(m)] = -acc * inv0;
  }
  return r;
}

QExpansion shift(const QExpansion& a, long d) {
  QExpansion r = a;
  r.lead += d;
  r.prec += d;
  return r;
}

QExpansion truncate(const QExpansion& a, long new_prec) {
  require(new_prec <= a.prec, "truncate: cannot extend precision");
  require(new_prec > a.lead, "truncate: empty valid range");
  QExpansion r;
  r.lead = a.lead;
  r.prec = new_prec;
  r.c.assign(a.c.begin(), a.c.begin() + (new_prec - a.lead));
  return r;
}

QExpansion with_lead(const QExpansion& a, long new_lead) {
  require(new_lead <= a.lead, "with_lead: cannot drop known coefficients");
  QExpansion r;
  r.lead = new_lead;
  r.prec = a.prec;
  r.c.assign(static_cast<size_t>(a.prec - new_lead), Rational(0));
  std::copy(a.c.begin(), a.c.end(), r.c.begin() + (a.lead - new_lead));
  return r;
}

QExpansion delta_qexp(long precision) {
  require(precision >= 2, "delta_qexp: precision must be >= 2");
  // Euler product prod (1-q^n) via the pentagonal number expansion.
  const long p = precision - 1;  // terms of the weight-0 unit part
  QExpansion euler = QExpansion::zero(p);
  euler.c[0] = 1;
  for (long g = 1;; ++g) {
    const long e1 = g * (3 * g - 1) / 2;
    const long e2 = g * (3 * g + 1) / 2;
    if (e1 >= p && e2 >= p) break;
    const int sign = (g % 2 == 0) ? 1 : -1;
    if (e1 < p) euler.c[static_cast<size_t>(e1)] += sign;
    if (e2 < p) euler.c[static_cast<size_t>(e2)] += sign;
  }
  QExpansion e24 = pow_ui(euler, 24);
  return shift(e24, 1);
}

QExpansion eisenstein_qexp(unsigned k, long precision) {
  require(k >= 4 && k % 2 == 0, "eisenstein_qexp: weight must be even and >= 4");
  require(precision >= 1, "eisenstein_qexp: empty precision range");
  const Rational factor = eisenstein_factor_even(k);
  QExpansion s = QExpansion::zero(precision);
  s.c[0] = 1;
  for (long n = 1; n < precision; ++n) {
    s.c[static_cast<size_t>(n)] = factor * Rational(sigma(k - 1, static_cast<std::uint64_t>(n)));
  }
  return s;
}

QExpansion j_qexp(long precision) {
  require(precision >= 2, "j_qexp: precision must be >= 2");
  const long p = precision + 2;
  QExpansion e4 = eisenstein_qexp(4, p);
  QExpansion e4cubed = pow_ui(e4, 3);
  QExpansion delta = delta_qexp(p);
  QExpansion unit = shift(delta, -1);  // 1 - 24q + ...
  QExpansion inv = inverse(unit);
  QExpansion t = mul(e4cubed, inv);
  return truncate(shift(t, -1), precision);
}

CanonicalBasis miller_basis(unsigned k, long precision) {
  if (k % 4 != 0 || k < 4) {
    throw std::invalid_argument("miller_basis: weight " + std::to_string(k) +
                                " is not a positive multiple of 4");
  }
  const unsigned ell = k / 12;
  const unsigned rem = k - 12 * ell;  // 0, 4 or 8
  require(precision > static_cast<long>(ell) + 1, "miller_basis: precision must exceed ell+1");

  QExpansion e4 = eisenstein_qexp(4, precision);
  QExpansion delta = delta_qexp(precision);

  // Powers of E4 up to 3*ell + rem/4 and of Delta up to ell.
  std::vector<QExpansion> e4pow;  // e4pow[e] = E4^e
  e4pow.push_back(QExpansion::one(precision));
  const unsigned max_e4 = 3 * ell + rem / 4;
  for (unsigned e = 1; e <= max_e4; ++e) e4pow.push_back(mul(e4pow[e - 1], e4));

  std::vector<QExpansion> dpow;  // dpow[m] = Delta^m
  dpow.push_back(QExpansion::one(precision));
  for (unsigned m = 1; m <= ell; ++m) dpow.push_back(mul(dpow[m - 1], delta));

  // G_m = Delta^m E4^{3(l-m)+rem/4} = q^m + O(q^{m+1}), weight k.
  std::vector<QExpansion> forms;
  for (unsigned m = 0; m <= ell; ++m) {
    QExpansion g = mul(dpow[m], e4pow[3 * (ell - m) + rem / 4]);
    forms.push_back(truncate(with_lead(g, 0), precision));
  }

  // Echelon reduction: clear columns m+1..ell of F_m using F_{m+1}..F_ell.
  for (int m = static_cast<int>(ell) - 1; m >= 0; --m) {
    for (unsigned r = static_cast<unsigned>(m) + 1; r <= ell; ++r) {
      const Rational coef = forms[static_cast<size_t>(m)].coeff(static_cast<long>(r));
      if (coef == 0) continue;
      forms[static_cast<size_t>(m)] =
          sub(forms[static_cast<size_t>(m)], scale(forms[r], coef));
    }
  }

  for (unsigned m = 0; m <= ell; ++m) {
    for (unsigned r = 0; r <= ell; ++r) {
      const Rational expected((m == r) ? 1 : 0);
      if (forms[m].coeff(static_cast<long>(r)) != expected) {
        throw std::logic_error("miller_basis: echelon property failed");
      }
    }
    for (const Rational& x : forms[m].c) {
      if (x.get_den() != 1) {
        throw std::logic_error("miller_basis: non-integral coefficient");
      }
    }
  }

  CanonicalBasis basis;
  basis.weight = k;
  basis.ell = ell;
  basis.prec = precision;
  basis.forms = std::move(forms);
  return basis;
}

}  // namespace mfpos
