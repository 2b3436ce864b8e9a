#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mfpos/polytope.hpp>
#include <mfpos/qseries.hpp>
#include <mfpos/serialize.hpp>

#include <cstdint>
#include <vector>

using namespace mfpos;

namespace {

QExpansion monomials(std::vector<long> coeffs, long prec) {
  QExpansion s = QExpansion::zero(prec);
  for (size_t i = 0; i < coeffs.size(); ++i) s.c[i] = coeffs[i];
  return s;
}

// Brute-force q prod_{n<=N} (1-q^n)^24 on plain integers, independent of the
// series machinery under test.
std::vector<long long> tau_brute(long order) {
  std::vector<long long> poly{1};
  poly.resize(static_cast<size_t>(order), 0);
  for (long n = 1; n < order; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      std::vector<long long> next(poly.size(), 0);
      for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        next[i] += poly[i];
        if (i + static_cast<size_t>(n) < poly.size()) {
          next[i + static_cast<size_t>(n)] -= poly[i];
        }
      }
      poly = std::move(next);
    }
  }
  std::vector<long long> tau(poly.size() + 1, 0);
  for (size_t i = 0; i + 1 < tau.size(); ++i) tau[i + 1] = poly[i];
  return tau;
}

}  // namespace

TEST_CASE("series_mul basics") {
  QExpansion a = monomials({1, 1}, 8);   // 1 + q
  QExpansion b = monomials({1, -1}, 8);  // 1 - q
  QExpansion p = mul(a, b);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 0);
  CHECK(p.coeff(2) == -1);

  QExpansion degenerate;  // zero known terms
  degenerate.lead = 0;
  degenerate.prec = 0;
  CHECK_THROWS_AS(mul(a, degenerate), std::invalid_argument);
  CHECK_THROWS_AS(truncate(a, 0), std::invalid_argument);
}

TEST_CASE("delta squared matches the published expansion") {
  QExpansion d = delta_qexp(12);
  QExpansion d2 = mul(d, d);
  CHECK(d2.coeff(2) == 1);
  CHECK(d2.coeff(3) == -48);
  CHECK(d2.coeff(4) == 1080);
  CHECK(d2.coeff(5) == -15040);
}

TEST_CASE("series multiplication is associative on E4 powers") {
  QExpansion e4 = eisenstein_qexp(4, 24);
  QExpansion left = mul(e4, mul(e4, e4));
  QExpansion right = mul(mul(e4, e4), e4);
  for (long n = 0; n < 24; ++n) CHECK(left.coeff(n) == right.coeff(n));
}

TEST_CASE("delta coefficients against brute force") {
  QExpansion d = delta_qexp(8);
  auto tau = tau_brute(8);
  CHECK(d.coeff(1) == 1);
  CHECK(d.coeff(2) == -24);
  CHECK(d.coeff(3) == 252);
  for (long n = 1; n < 7; ++n) CHECK(d.coeff(n) == Rational(static_cast<long>(tau[n])));
}

TEST_CASE("eisenstein expansions") {
  QExpansion e4 = eisenstein_qexp(4, 10);
  CHECK(e4.coeff(0) == 1);
  CHECK(e4.coeff(1) == 240);
  QExpansion e12 = eisenstein_qexp(12, 10);
  CHECK(e12.coeff(0) == 1);
  CHECK(e12.coeff(1) == rational_from_string("65520/691"));
}

TEST_CASE("j expansion") {
  QExpansion j = j_qexp(6);
  CHECK(j.lead == -1);
  CHECK(j.coeff(-1) == 1);
  CHECK(j.coeff(0) == 744);
  CHECK(j.coeff(1) == 196884);
}

TEST_CASE("j times delta equals E4 cubed") {
  const long p = 40;
  QExpansion prod = mul(j_qexp(p), delta_qexp(p + 2));
  QExpansion e4cubed = pow_ui(eisenstein_qexp(4, p + 2), 3);
  for (long n = 0; n < p - 2; ++n) CHECK(prod.coeff(n) == e4cubed.coeff(n));
}

TEST_CASE("E4^3 - E6^2 = 1728 Delta") {
  const long p = 60;
  QExpansion lhs = sub(pow_ui(eisenstein_qexp(4, p), 3), pow_ui(eisenstein_qexp(6, p), 2));
  QExpansion rhs = scale(delta_qexp(p), Rational(1728));
  for (long n = 0; n < p; ++n) CHECK(lhs.coeff(n) == rhs.coeff(n));
}

TEST_CASE("weight 12 basis") {
  CanonicalBasis b = miller_basis(12, 30);
  REQUIRE(b.ell == 1);
  QExpansion d = delta_qexp(30);
  for (long n = 0; n < 30; ++n) CHECK(b.forms[1].coeff(n) == d.coeff(n));
  CHECK(b.forms[0].coeff(0) == 1);
  CHECK(b.forms[0].coeff(1) == 0);
  CHECK(b.forms[0].coeff(2) == 196560);
}

TEST_CASE("weight 24 basis matches the published rows") {
  CanonicalBasis b = miller_basis(24, 30);
  REQUIRE(b.ell == 2);
  CHECK(b.forms[2].coeff(3) == -48);
  CHECK(b.forms[2].coeff(4) == 1080);
  CHECK(b.forms[2].coeff(5) == -15040);
  CHECK(b.forms[1].coeff(1) == 1);
  CHECK(b.forms[1].coeff(2) == 0);
  CHECK(b.forms[1].coeff(3) == 195660);
  CHECK(b.forms[1].coeff(4) == 12080128);
  CHECK(b.forms[0].coeff(3) == 52416000);
  CHECK(b.forms[0].coeff(4) == rational_from_string("39007332000"));
}

TEST_CASE("echelon property for all weights up to 120") {
  for (unsigned k = 12; k <= 120; k += 4) {
    const unsigned ell = k / 12;
    CanonicalBasis b = miller_basis(k, static_cast<long>(ell) + 10);
    for (unsigned m = 0; m <= ell; ++m) {
      for (unsigned r = 0; r <= ell; ++r) {
        CHECK(b.forms[m].coeff(static_cast<long>(r)) == Rational((m == r) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("integrality at precision 200 for all weights up to 120") {
  for (unsigned k = 12; k <= 120; k += 4) {
    CanonicalBasis b = miller_basis(k, 200);
    for (const auto& f : b.forms) {
      for (const auto& c : f.c) CHECK(c.get_den() == 1);
    }
  }
}

TEST_CASE("basis JSON round-trip preserves exact rationals") {
  CanonicalBasis b = miller_basis(24, 40);
  Json j = basis_to_json(b);
  CanonicalBasis back = basis_from_json(j);
  REQUIRE(back.forms.size() == b.forms.size());
  CHECK(back.weight == b.weight);
  CHECK(back.ell == b.ell);
  CHECK(back.prec == b.prec);
  for (size_t m = 0; m < b.forms.size(); ++m) {
    for (long n = 0; n < b.prec; ++n) {
      CHECK(back.forms[m].coeff(n) == b.forms[m].coeff(n));
    }
  }

  QExpansion e12 = eisenstein_qexp(12, 25);
  QExpansion e12_back = qexpansion_from_json(qexpansion_to_json(e12));
  for (long n = 0; n < 25; ++n) CHECK(e12_back.coeff(n) == e12.coeff(n));
}

TEST_CASE("inequality, certificate, witness and upper-bound JSON round-trips") {
  LinearInequality q;
  q.n = 6;
  q.constant = rational_from_string("437824977408000");
  q.coeffs = {rational_from_string("-982499328"), rational_from_string("143820")};
  LinearInequality q2 = inequality_from_json(inequality_to_json(q));
  CHECK(q2.n == q.n);
  CHECK(q2.constant == q.constant);
  CHECK(q2.coeffs == q.coeffs);

  FarkasCertificate cert;
  cert.premise_multipliers = {Rational(1, 3), Rational(0)};
  cert.bound_multipliers = {rational_from_string("5/7")};
  cert.slack = rational_from_string("19/2");
  FarkasCertificate c2 = certificate_from_json(certificate_to_json(cert));
  CHECK(c2.premise_multipliers == cert.premise_multipliers);
  CHECK(c2.bound_multipliers == cert.bound_multipliers);
  CHECK(c2.slack == cert.slack);

  WitnessPoint w{{rational_from_string("196561/24"), Rational(-1)}};
  WitnessPoint w2 = witness_from_json(witness_to_json(w));
  CHECK(w2.values == w.values);

  // the hex field reproduces the upper bound bit-for-bit
  UpperReal u = UpperReal::from_interval(log_i(Interval::exact_ui(24, 128)));
  UpperReal u2 = upper_from_json(upper_to_json(u));
  CHECK(mpfr_cmp(u.value().get(), u2.value().get()) == 0);
  CHECK(u2.prec() == u.prec());
}

TEST_CASE("coefficients at or beyond the precision are never reported") {
  QExpansion d = delta_qexp(10);
  CHECK_THROWS_AS(d.coeff(10), std::out_of_range);
  CHECK_THROWS_AS(d.coeff(11), std::out_of_range);
  CHECK(d.coeff(0) == 0);  // below the leading exponent: known zero
}
