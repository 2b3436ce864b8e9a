#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "mfpos/poincare.hpp"

namespace mfpos {

namespace {

// cos(2 pi r / c) for exact 0 <= r < c.  The angle is known exactly as a
// rational multiple of pi, so extrema can be excluded exactly: the image is
// monotone on (0, pi) and (pi, 2 pi), and r = 0 / 2r = c hit the endpoints.
Interval cos_of_fraction(std::uint64_t r, std::uint64_t c, mpfr_prec_t prec) {
  if (r == 0) return Interval::exact_si(1, prec);
  if (2 * r == c) return Interval::exact_si(-1, prec);

  const Interval pi = Interval::pi(prec);
  Rational f(2 * static_cast<long>(r), static_cast<long>(c));
  f.canonicalize();
  Interval theta = Interval::from_rational(f, prec) * pi;  // in (0, 2 pi), != pi

  Interval out(prec);
  const bool below_pi = 2 * r < c;
  bool monotone_ok;
  if (below_pi) {
    // decreasing on (0, pi): need theta.hi < pi.lo
    monotone_ok = mpfr_cmp(theta.hi().get(), pi.lo().get()) < 0 &&
                  mpfr_sgn(theta.lo().get()) > 0;
    if (monotone_ok) {
      mpfr_cos(const_cast<Real&>(out.lo()).get(), theta.hi().get(), MPFR_RNDD);
      mpfr_cos(const_cast<Real&>(out.hi()).get(), theta.lo().get(), MPFR_RNDU);
      return out;
    }
  } else {
    // increasing on (pi, 2 pi): need pi.hi < theta.lo and theta.hi < 2 pi.lo
    Interval two_pi = Interval::exact_ui(2, prec) * pi;
    monotone_ok = mpfr_cmp(pi.hi().get(), theta.lo().get()) < 0 &&
                  mpfr_cmp(theta.hi().get(), two_pi.lo().get()) < 0;
    if (monotone_ok) {
      mpfr_cos(const_cast<Real&>(out.lo()).get(), theta.lo().get(), MPFR_RNDD);
      mpfr_cos(const_cast<Real&>(out.hi()).get(), theta.hi().get(), MPFR_RNDU);
      return out;
    }
  }
  // Monotone region could not be certified (only possible at very low
  // precision); [-1, 1] is always sound.
  mpfr_set_si(const_cast<Real&>(out.lo()).get(), -1, MPFR_RNDD);
  mpfr_set_si(const_cast<Real&>(out.hi()).get(), 1, MPFR_RNDU);
  return out;
}

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t c) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(c), new_r = static_cast<std::int64_t>(x);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: not a unit");
  if (t < 0) t += static_cast<std::int64_t>(c);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

namespace {

// The cosine table for modulus c is the expensive part and is shared by
// every (m, n) pair and by all Poincare coefficients at the same c.
using CosTable = std::vector<Interval>;

std::shared_ptr<const CosTable> cos_table(std::uint64_t c, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, mpfr_prec_t>, std::shared_ptr<const CosTable>> cache;
  const auto key = std::make_pair(c, prec);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<CosTable>();
  table->reserve(c);
  for (std::uint64_t r = 0; r < c; ++r) table->push_back(cos_of_fraction(r, c, prec));
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(key, table);
  return cache[key];
}

}  // namespace

Interval kloosterman(std::uint64_t m, std::uint64_t n, std::uint64_t c, mpfr_prec_t prec) {
  if (c == 0) throw std::invalid_argument("kloosterman: c must be >= 1");
  if (c == 1) return Interval::exact_si(1, prec);

  std::shared_ptr<const CosTable> table_ptr = cos_table(c, prec);
  const CosTable& table = *table_ptr;

  Interval sum(prec);
  for (std::uint64_t x = 1; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    const std::uint64_t xinv = inverse_mod(x, c);
    // (m x + n x^{-1}) mod c without overflow for the sizes used here.
    const std::uint64_t rx = (m % c) * x % c;
    const std::uint64_t ry = (n % c) * xinv % c;
    sum = sum + table[(rx + ry) % c];
  }
  return sum;
}

}  // namespace mfpos
