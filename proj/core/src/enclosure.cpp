#include "mfpos/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfpos {

std::string Real::str(size_t digits, mpfr_rnd_t rnd) const {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*R*g", static_cast<int>(digits), rnd, v_) < 0) {
    throw std::runtime_error("Real::str: mpfr_asprintf failed");
  }
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

Interval Interval::exact_ui(unsigned long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_ui(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_ui(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::exact_si(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::exact_double(double v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_integer(const Integer& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(Real lo, Real hi) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) {
    throw std::invalid_argument("Interval::from_endpoints: lo > hi");
  }
  Interval r(lo.prec());
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::euler_e(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_t one;
  mpfr_init2(one, prec);
  mpfr_set_ui(one, 1, MPFR_RNDN);
  mpfr_exp(r.lo_.get(), one, MPFR_RNDD);
  mpfr_exp(r.hi_.get(), one, MPFR_RNDU);
  mpfr_clear(one);
  return r;
}

bool Interval::contains(const Rational& r) const {
  return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), r.get_mpq_t()) >= 0;
}

bool Interval::inside(const Interval& b) const {
  return mpfr_cmp(b.lo().get(), lo_.get()) <= 0 && mpfr_cmp(hi_.get(), b.hi().get()) <= 0;
}

Real Interval::width() const {
  Real w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double Interval::mid_double() const {
  return 0.5 * (lo_.to_double(MPFR_RNDN) + hi_.to_double(MPFR_RNDN));
}

namespace {

mpfr_prec_t join_prec(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_add(const_cast<Real&>(r.lo()).get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(const_cast<Real&>(r.hi()).get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_sub(const_cast<Real&>(r.lo()).get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(const_cast<Real&>(r.hi()).get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = join_prec(a, b);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_ptr lo = const_cast<Real&>(r.lo()).get();
  mpfr_ptr hi = const_cast<Real&>(r.hi()).get();

  mpfr_mul(lo, a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_mul(t, a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_min(lo, lo, t, MPFR_RNDD);
  mpfr_mul(t, a.hi().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(lo, lo, t, MPFR_RNDD);
  mpfr_mul(t, a.hi().get(), b.hi().get(), MPFR_RNDD);
  mpfr_min(lo, lo, t, MPFR_RNDD);

  mpfr_mul(hi, a.lo().get(), b.lo().get(), MPFR_RNDU);
  mpfr_mul(t, a.lo().get(), b.hi().get(), MPFR_RNDU);
  mpfr_max(hi, hi, t, MPFR_RNDU);
  mpfr_mul(t, a.hi().get(), b.lo().get(), MPFR_RNDU);
  mpfr_max(hi, hi, t, MPFR_RNDU);
  mpfr_mul(t, a.hi().get(), b.hi().get(), MPFR_RNDU);
  mpfr_max(hi, hi, t, MPFR_RNDU);

  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) {
    throw std::domain_error("Interval division: denominator encloses zero");
  }
  const mpfr_prec_t p = join_prec(a, b);
  Interval inv(p);
  // 1/b with b of constant sign: endpoints swap.
  mpfr_ui_div(const_cast<Real&>(inv.lo()).get(), 1, b.hi().get(), MPFR_RNDD);
  mpfr_ui_div(const_cast<Real&>(inv.hi()).get(), 1, b.lo().get(), MPFR_RNDU);
  return a * inv;
}

Interval neg(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(const_cast<Real&>(r.lo()).get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(const_cast<Real&>(r.hi()).get(), a.lo().get(), MPFR_RNDU);
  return r;
}

Interval abs_i(const Interval& a) {
  if (a.is_positive() || (mpfr_sgn(a.lo().get()) >= 0)) return a;
  if (mpfr_sgn(a.hi().get()) <= 0) return neg(a);
  Interval r(a.prec());
  mpfr_set_zero(const_cast<Real&>(r.lo()).get(), 1);
  mpfr_neg(const_cast<Real&>(r.hi()).get(), a.lo().get(), MPFR_RNDU);
  mpfr_max(const_cast<Real&>(r.hi()).get(), r.hi().get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval exp_i(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(const_cast<Real&>(r.lo()).get(), a.lo().get(), MPFR_RNDD);
  mpfr_exp(const_cast<Real&>(r.hi()).get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval log_i(const Interval& a) {
  if (mpfr_sgn(a.lo().get()) <= 0) {
    throw std::domain_error("Interval log: argument not strictly positive");
  }
  Interval r(a.prec());
  mpfr_log(const_cast<Real&>(r.lo()).get(), a.lo().get(), MPFR_RNDD);
  mpfr_log(const_cast<Real&>(r.hi()).get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval sqrt_i(const Interval& a) {
  if (mpfr_sgn(a.lo().get()) < 0) {
    throw std::domain_error("Interval sqrt: argument negative");
  }
  Interval r(a.prec());
  mpfr_sqrt(const_cast<Real&>(r.lo()).get(), a.lo().get(), MPFR_RNDD);
  mpfr_sqrt(const_cast<Real&>(r.hi()).get(), a.hi().get(), MPFR_RNDU);
  return r;
}

Interval pow_i(const Interval& base, const Interval& expo) {
  return exp_i(expo * log_i(base));
}

Interval pow_ui_i(const Interval& base, unsigned long e) {
  if (mpfr_sgn(base.lo().get()) < 0) {
    throw std::domain_error("Interval pow_ui: negative base unsupported");
  }
  Interval r(base.prec());
  mpfr_pow_ui(const_cast<Real&>(r.lo()).get(), base.lo().get(), e, MPFR_RNDD);
  mpfr_pow_ui(const_cast<Real&>(r.hi()).get(), base.hi().get(), e, MPFR_RNDU);
  return r;
}

Interval max_i(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_max(const_cast<Real&>(r.lo()).get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(const_cast<Real&>(r.hi()).get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return r;
}

std::optional<Integer> enclosed_floor(const Interval& a) {
  Integer flo, fhi;
  mpfr_get_z(flo.get_mpz_t(), a.lo().get(), MPFR_RNDD);
  mpfr_get_z(fhi.get_mpz_t(), a.hi().get(), MPFR_RNDD);
  if (flo == fhi) return flo;
  return std::nullopt;
}

std::optional<Integer> enclosed_ceil(const Interval& a) {
  Integer clo, chi;
  mpfr_get_z(clo.get_mpz_t(), a.lo().get(), MPFR_RNDU);
  mpfr_get_z(chi.get_mpz_t(), a.hi().get(), MPFR_RNDU);
  if (clo == chi) return clo;
  return std::nullopt;
}

UpperReal UpperReal::from_rational(const Rational& r, mpfr_prec_t prec) {
  Real v(prec);
  mpfr_set_q(v.get(), r.get_mpq_t(), MPFR_RNDU);
  return UpperReal(std::move(v));
}

UpperReal UpperReal::from_double(double d, mpfr_prec_t prec) {
  Real v(prec);
  mpfr_set_d(v.get(), d, MPFR_RNDU);
  return UpperReal(std::move(v));
}

Interval UpperReal::as_exact_interval(mpfr_prec_t prec) const {
  Interval r(prec);
  mpfr_set(const_cast<Real&>(r.lo()).get(), v_.get(), MPFR_RNDD);
  mpfr_set(const_cast<Real&>(r.hi()).get(), v_.get(), MPFR_RNDU);
  return r;
}

UpperReal operator+(const UpperReal& a, const UpperReal& b) {
  Real v(std::max(a.prec(), b.prec()));
  mpfr_add(v.get(), a.value().get(), b.value().get(), MPFR_RNDU);
  return UpperReal(std::move(v));
}

UpperReal max(const UpperReal& a, const UpperReal& b) {
  Real v(std::max(a.prec(), b.prec()));
  mpfr_max(v.get(), a.value().get(), b.value().get(), MPFR_RNDU);
  return UpperReal(std::move(v));
}

bool UpperReal::dominates(const Rational& r) const {
  return mpfr_cmp_q(v_.get(), r.get_mpq_t()) >= 0;
}

bool UpperReal::dominates(const Real& lower) const {
  return mpfr_cmp(v_.get(), lower.get()) >= 0;
}

}  // namespace mfpos
