#include "mfpos/bounds.hpp"

#include <stdexcept>
#include <string>

namespace mfpos {

namespace {

constexpr mpfr_prec_t kPrecCap = 1 << 16;

Interval log_k(unsigned k, mpfr_prec_t p) { return log_i(Interval::exact_ui(k, p)); }

// log k + log log k
Interval loglog_sum(unsigned k, mpfr_prec_t p) {
  Interval lk = log_k(k, p);
  return lk + log_i(lk);
}

// n^{(k-1)/2} for odd k-1 via sqrt(n)^{k-1}
Interval half_power(std::uint64_t n, unsigned expo_twice, mpfr_prec_t p) {
  Interval root = sqrt_i(Interval::exact_ui(n, p));
  return pow_ui_i(root, expo_twice);
}

Rational rational_of_upper(const UpperReal& u) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), u.value().get());
  return q;
}

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

template <typename MakeInterval>
Integer floor_with_retry(MakeInterval make, mpfr_prec_t prec0, const char* what) {
  for (mpfr_prec_t p = prec0; p <= kPrecCap; p *= 2) {
    if (auto z = enclosed_floor(make(p))) return *z;
  }
  throw EnclosureTooWideError(std::string(what) + ": floor undetermined at precision cap");
}

template <typename MakeInterval>
Integer ceil_with_retry(MakeInterval make, mpfr_prec_t prec0, const char* what) {
  for (mpfr_prec_t p = prec0; p <= kPrecCap; p *= 2) {
    if (auto z = enclosed_ceil(make(p))) return *z;
  }
  throw EnclosureTooWideError(std::string(what) + ": ceil undetermined at precision cap");
}

// Multiplier of d(n) n^{(k-1)/2} in the nonnegative-form coefficient bound.
Interval theorem3_multiplier(unsigned k, mpfr_prec_t p) {
  if (k == 12) return Interval::exact_ui(8096, p);
  Interval base = Interval::exact_ui(k, p) / (Interval::exact_ui(2, p) * Interval::pi(p));
  return Interval::from_rational(Rational(107, Integer("1000000000000")), p) *
         pow_ui_i(base, k) * pow_ui_i(log_k(k, p), 3 * k / 2);
}

}  // namespace

unsigned find_t(const CanonicalBasis& basis, unsigned search_limit) {
  if (basis.prec <= static_cast<long>(search_limit)) {
    throw std::invalid_argument("find_t: basis precision must exceed search_limit");
  }
  for (unsigned t = 1; t <= search_limit; ++t) {
    bool all_negative = true;
    for (unsigned m = 1; m <= basis.ell; ++m) {
      if (basis.forms[m].coeff(static_cast<long>(t)) >= 0) {
        all_negative = false;
        break;
      }
    }
    if (all_negative) return t;
  }
  throw NotFoundError("find_t: no column-negative index t <= " + std::to_string(search_limit) +
                      " for weight " + std::to_string(basis.weight));
}

UpperReal cusp_bound_constant(const std::vector<Rational>& coeff_bounds, unsigned k,
                              mpfr_prec_t prec, const CuspBoundOptions& opts) {
  const Rational c4141 = make_rational(4141, 100);
  const Rational c7288 = make_rational(7288, 1000);

  Interval sum_sq(prec);       // sum |c(m)|^2 / m^{k-1}
  Interval sum_decay(prec);    // sum |c(m)| e^{-7.288 m}
  for (size_t i = 0; i < coeff_bounds.size(); ++i) {
    const unsigned long m = static_cast<unsigned long>(i + 1);
    const Rational& b = coeff_bounds[i];
    if (b < 0) throw std::invalid_argument("cusp_bound_constant: negative coefficient bound");
    Interval bi = Interval::from_rational(b, prec);
    sum_sq = sum_sq + pow_ui_i(bi, 2) / pow_ui_i(Interval::exact_ui(m, prec), k - 1);
    Interval expo = neg(Interval::from_rational(c7288 * Rational(static_cast<long>(m)), prec));
    sum_decay = sum_decay + bi * exp_i(expo);
  }

  Interval first = Interval::exact_ui(11, prec) * sqrt_i(sum_sq);

  Interval e_pow = exp_i(Interval::exact_double(opts.jr_exponent, prec));
  Interval pow4141 = pow_ui_i(Interval::from_rational(c4141, prec), k / 2);
  Interval k_pow = half_power(k, k - 1, prec);  // k^{(k-1)/2}
  Interval second = e_pow * pow4141 / k_pow * sum_decay;

  Interval total = sqrt_i(log_k(k, prec)) * (first + second);
  return UpperReal::from_interval(total);
}

UpperReal cusp_bound_constant(const std::vector<UpperReal>& coeff_bounds, unsigned k,
                              mpfr_prec_t prec, const CuspBoundOptions& opts) {
  std::vector<Rational> caps;
  caps.reserve(coeff_bounds.size());
  for (const UpperReal& u : coeff_bounds) caps.push_back(rational_of_upper(u));
  return cusp_bound_constant(caps, k, prec, opts);
}

std::vector<Rational> coefficient_caps(unsigned k, const CanonicalBasis& basis, unsigned t) {
  const Rational F = eisenstein_factor(k);
  const Rational c0t = basis.forms[0].coeff(static_cast<long>(t));
  std::vector<Rational> caps;
  for (unsigned m = 1; m <= basis.ell; ++m) {
    const Rational cmt = basis.forms[m].coeff(static_cast<long>(t));
    if (cmt >= 0) {
      throw std::invalid_argument("coefficient_caps: c_m(t) not negative; t is not column-negative");
    }
    const Rational eis = F * Rational(sigma(k - 1, m));
    Rational arm2 = -c0t / cmt - eis;
    arm2.canonicalize();
    caps.push_back(eis > arm2 ? eis : arm2);
  }
  return caps;
}

std::pair<Integer, Integer> theorem1_bounds(unsigned k, mpfr_prec_t prec) {
  if (k % 4 != 0 || k < 12) {
    throw std::invalid_argument("theorem1_bounds: weight must be a multiple of 4, >= 12");
  }
  Integer L = ceil_with_retry(
      [&](mpfr_prec_t p) {
        Interval num = Interval::exact_ui((k - 1) * static_cast<unsigned long>(k - 1), p);
        Interval den = Interval::exact_ui(16, p) * pow_ui_i(Interval::pi(p), 2);
        return num / den;
      },
      prec, "L(k)");
  Integer U = floor_with_retry(
      [&](mpfr_prec_t p) {
        Interval k4 = pow_ui_i(Interval::exact_ui(k, p), 4);
        Interval l2 = pow_ui_i(loglog_sum(k, p), 2);
        return k4 * l2 / Interval::exact_ui(7316, p);
      },
      prec, "U(k)");
  return {L, U};
}

BoundReport c2_and_Bk(unsigned k, const CanonicalBasis& basis, unsigned t,
                      mpfr_prec_t prec, const CuspBoundOptions& opts) {
  if (k % 4 != 0 || k < 12) {
    throw std::invalid_argument("c2_and_Bk: weight must be a multiple of 4, >= 12");
  }
  BoundReport rep;
  rep.weight = k;
  rep.ell = basis.ell;
  rep.t = t;
  rep.prec_bits = prec;
  rep.coeff_caps = coefficient_caps(k, basis, t);
  rep.C2 = cusp_bound_constant(rep.coeff_caps, k, prec, opts);

  // B(k) = max{ell, t, floor((-C2 B_k / k)^{1/(k/2-1)}) + 1}, with the
  // reported (dyadic) C2 treated as exact so the floor is well defined.
  Rational base = rational_of_upper(rep.C2) * (-bernoulli(k)) / Rational(static_cast<long>(k));
  base.canonicalize();
  if (base <= 0) throw std::logic_error("c2_and_Bk: nonpositive Eisenstein-dominance base");
  Integer third = floor_with_retry(
                      [&](mpfr_prec_t p) {
                        Interval b = Interval::from_rational(base, p);
                        Interval e = Interval::from_rational(make_rational(2, static_cast<long>(k) - 2), p);
                        return pow_i(b, e);
                      },
                      prec, "B(k)") +
                  1;
  Integer Bk = Integer(basis.ell);
  if (Integer(t) > Bk) Bk = Integer(t);
  if (third > Bk) Bk = third;
  rep.Bk = Bk;

  auto lu = theorem1_bounds(k, prec);
  rep.L = lu.first;
  rep.U = lu.second;

  rep.thm3_constant = UpperReal::from_interval(theorem3_multiplier(k, prec));
  if (k >= 64) rep.C_cap = prop53_C_cap(k, prec);

  {
    Interval y = Interval::exact_ui(k, prec) /
                 (Interval::exact_ui(2, prec) * Interval::pi(prec)) * loglog_sum(k, prec);
    rep.y = UpperReal::from_interval(y);
  }
  rep.s = ceil_with_retry(
      [&](mpfr_prec_t p) {
        return pow_ui_i(Interval::exact_ui(k, p), 2) * pow_ui_i(loglog_sum(k, p), 2);
      },
      prec, "s");
  return rep;
}

UpperReal tail_bound(std::uint64_t s, double alpha, double beta, mpfr_prec_t prec) {
  if (s == 0 || !(alpha > 0) || !(beta < 0)) {
    throw std::invalid_argument("tail_bound: need s >= 1, alpha > 0, beta < 0");
  }
  Rational alpha_q, beta_q;
  mpq_set_d(alpha_q.get_mpq_t(), alpha);
  mpq_set_d(beta_q.get_mpq_t(), beta);
  if (!(Rational(Integer(s)) * beta_q < -alpha_q)) {
    throw HypothesisError("tail_bound: hypothesis s*beta < -alpha violated");
  }
  for (mpfr_prec_t p = prec; p <= kPrecCap; p *= 2) {
    Interval a = Interval::exact_double(alpha, p);
    Interval b = Interval::exact_double(beta, p);
    Interval si = Interval::exact_ui(s, p);
    Interval ratio_exp = exp_i(a / si + b);
    Interval denom = Interval::exact_ui(1, p) - ratio_exp;
    if (!denom.is_positive()) continue;  // 1 - e^{alpha/s+beta} not yet separated from 0
    Interval head = pow_i(si, a) * exp_i(si * b);
    return UpperReal::from_interval(head / denom);
  }
  throw EnclosureTooWideError("tail_bound: denominator not separated from zero at precision cap");
}

UpperReal smallC_bound(unsigned k, const UpperReal& C, std::uint64_t n, mpfr_prec_t prec) {
  if (k < 64) throw std::invalid_argument("smallC_bound: requires k >= 64");
  if (n == 0) throw std::invalid_argument("smallC_bound: n must be >= 1");
  Interval c_iv = C.as_exact_interval(prec);
  if (!(mpfr_sgn(c_iv.lo().get()) >= 0)) {
    throw std::invalid_argument("smallC_bound: C must be nonnegative");
  }
  Interval growth = pow_ui_i(Interval::from_rational(make_rational(3, 2), prec), k);
  Interval out = Interval::exact_ui(12, prec) * (c_iv + growth) * sqrt_i(log_k(k, prec)) *
                 Interval::exact_ui(divisor_count(n), prec) * half_power(n, k - 1, prec);
  return UpperReal::from_interval(out);
}

UpperReal prop53_C_cap(unsigned k, mpfr_prec_t prec) {
  if (k < 64) throw std::invalid_argument("prop53_C_cap: requires k >= 64");
  Interval base = Interval::exact_ui(k, prec) /
                  (Interval::exact_ui(2, prec) * Interval::pi(prec));
  Interval out = Interval::from_rational(make_rational(1806, 1000), prec) *
                 pow_ui_i(base, k) * pow_ui_i(loglog_sum(k, prec), k);
  return UpperReal::from_interval(out);
}

UpperReal theorem3_bound(unsigned k, std::uint64_t n, mpfr_prec_t prec) {
  if (!(k == 12 || (k >= 16 && k % 4 == 0))) {
    throw std::invalid_argument("theorem3_bound: weight must be 12 or a multiple of 4 >= 16");
  }
  if (n == 0) throw std::invalid_argument("theorem3_bound: n must be >= 1");
  const Rational eisenstein = eisenstein_factor(k) * Rational(sigma(k - 1, n));
  Interval out = Interval::from_rational(eisenstein, prec) +
                 theorem3_multiplier(k, prec) *
                     Interval::exact_ui(divisor_count(n), prec) * half_power(n, k - 1, prec);
  return UpperReal::from_interval(out);
}

std::pair<Integer, Integer> thm54_threshold(unsigned k, mpfr_prec_t prec) {
  if (k < 92) throw std::invalid_argument("thm54_threshold: requires k >= 92");
  Integer hypothesis = ceil_with_retry(
      [&](mpfr_prec_t p) {
        return pow_ui_i(Interval::exact_ui(k, p), 2) * pow_ui_i(loglog_sum(k, p), 2);
      },
      prec, "thm54 hypothesis bound");
  Integer conclusion = ceil_with_retry(
      [&](mpfr_prec_t p) {
        return pow_ui_i(Interval::exact_ui(k, p), 4) * pow_ui_i(loglog_sum(k, p), 2) /
               Interval::exact_ui(7316, p);
      },
      prec, "thm54 conclusion bound");
  return {hypothesis, conclusion};
}

}  // namespace mfpos
