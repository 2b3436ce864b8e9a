#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "mfpos/errors.hpp"
#include "mfpos/exact.hpp"

namespace mfpos {

inline constexpr mpfr_prec_t kDefaultPrec = 128;

// RAII wrapper around a single mpfr value.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  int sign() const { return mpfr_sgn(v_); }
  std::string str(size_t digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t v_;
};

int cmp(const Real& a, const Real& b);

// Outward-rounded interval [lo, hi]: the true value of the represented real
// is certified to lie inside.  Every operation rounds lo toward -inf and hi
// toward +inf.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrec) : lo_(prec), hi_(prec) {}

  static Interval exact_ui(unsigned long v, mpfr_prec_t prec);
  static Interval exact_si(long v, mpfr_prec_t prec);
  static Interval exact_double(double v, mpfr_prec_t prec);
  static Interval from_rational(const Rational& r, mpfr_prec_t prec);
  static Interval from_integer(const Integer& z, mpfr_prec_t prec);
  static Interval from_endpoints(Real lo, Real hi);
  static Interval pi(mpfr_prec_t prec);
  static Interval euler_e(mpfr_prec_t prec);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }

  bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
  bool contains_zero() const { return !is_positive() && !is_negative(); }
  bool contains(const Rational& r) const;
  // a is contained in b
  bool inside(const Interval& b) const;

  Real width() const;  // hi - lo, rounded up
  double mid_double() const;

 private:
  Real lo_, hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);  // b must not contain 0
Interval neg(const Interval& a);
Interval abs_i(const Interval& a);
Interval exp_i(const Interval& a);
Interval log_i(const Interval& a);    // requires a.lo > 0
Interval sqrt_i(const Interval& a);   // requires a.lo >= 0
Interval pow_i(const Interval& base, const Interval& expo);  // base.lo > 0
Interval pow_ui_i(const Interval& base, unsigned long e);    // base.lo >= 0
Interval max_i(const Interval& a, const Interval& b);

// floor/ceil of the represented real; nullopt when the enclosure straddles
// an integer boundary (caller raises precision).
std::optional<Integer> enclosed_floor(const Interval& a);
std::optional<Integer> enclosed_ceil(const Interval& a);

// Certified upper bound of a real quantity.
class UpperReal {
 public:
  UpperReal() : v_(kDefaultPrec) {}
  explicit UpperReal(Real v) : v_(std::move(v)) {}

  static UpperReal from_interval(const Interval& iv) { return UpperReal(iv.hi()); }
  static UpperReal from_rational(const Rational& r, mpfr_prec_t prec);
  static UpperReal from_double(double d, mpfr_prec_t prec);

  const Real& value() const { return v_; }
  mpfr_prec_t prec() const { return v_.prec(); }
  double to_double() const { return v_.to_double(MPFR_RNDU); }

  // The stored bound reinterpreted as an exact dyadic number, for feeding
  // an upper bound back into two-sided arithmetic.
  Interval as_exact_interval(mpfr_prec_t prec) const;

  // Monotone combinations preserve the upper-bound invariant.
  friend UpperReal operator+(const UpperReal& a, const UpperReal& b);
  friend UpperReal max(const UpperReal& a, const UpperReal& b);

  bool operator<(const UpperReal& o) const { return cmp(v_, o.v_) < 0; }
  bool dominates(const Rational& r) const;       // bound >= r
  bool dominates(const Real& lower) const;       // bound >= lower

  std::string str(size_t digits = 20) const { return v_.str(digits, MPFR_RNDU); }

 private:
  Real v_;
};

}  // namespace mfpos
