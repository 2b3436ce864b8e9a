#include "mfpos/exact.hpp"

#include <mutex>
#include <stdexcept>

namespace mfpos {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rational> g_bernoulli_cache;  // B_0, B_1, ...

// Extends the cache through index k using
//   sum_{j=0}^{m} C(m+1, j) B_j = 0   for m >= 1.
void extend_bernoulli_cache(unsigned k) {
  if (g_bernoulli_cache.empty()) {
    g_bernoulli_cache.emplace_back(1);             // B_0
    g_bernoulli_cache.emplace_back(Rational(-1, 2));  // B_1
  }
  while (g_bernoulli_cache.size() <= k) {
    const unsigned m = static_cast<unsigned>(g_bernoulli_cache.size());
    if (m % 2 == 1) {
      g_bernoulli_cache.emplace_back(0);
      continue;
    }
    Rational acc(0);
    for (unsigned j = 0; j < m; ++j) {
      acc += Rational(binomial(m + 1, j)) * g_bernoulli_cache[j];
    }
    Rational bm = -acc / Rational(m + 1);
    bm.canonicalize();
    g_bernoulli_cache.push_back(bm);
  }
}

}  // namespace

Rational bernoulli(unsigned k) {
  if (k > 1 && k % 2 == 1) {
    throw std::invalid_argument("bernoulli: odd index " + std::to_string(k) +
                                " rejected (value would be zero)");
  }
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  extend_bernoulli_cache(k);
  return g_bernoulli_cache[k];
}

Integer sigma(unsigned e, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sigma: n must be >= 1");
  Integer total(0);
  Integer power;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(power.get_mpz_t(), d, e);
    total += power;
    const std::uint64_t q = n / d;
    if (q != d) {
      mpz_ui_pow_ui(power.get_mpz_t(), q, e);
      total += power;
    }
  }
  return total;
}

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisor_count: n must be >= 1");
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    count += (d * d == n) ? 1 : 2;
  }
  return count;
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisors_of: n must be >= 1");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

Rational eisenstein_factor(unsigned k) {
  if (k % 4 != 0 || k < 4) {
    throw std::invalid_argument("eisenstein_factor: weight " + std::to_string(k) +
                                " is not a positive multiple of 4");
  }
  return eisenstein_factor_even(k);
}

Rational eisenstein_factor_even(unsigned k) {
  if (k % 2 != 0 || k < 4) {
    throw std::invalid_argument("eisenstein_factor_even: weight must be even and >= 4");
  }
  Rational f = Rational(-2 * static_cast<long>(k)) / bernoulli(k);
  f.canonicalize();
  return f;
}

Integer binomial(unsigned n, unsigned k) {
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
  }
  r.canonicalize();
  return r;
}

}  // namespace mfpos
