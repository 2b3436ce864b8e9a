#include "mfpos/serialize.hpp"

#include <stdexcept>

namespace mfpos {

namespace {

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  std::vector<Rational> out;
  for (const auto& s : j) out.push_back(rational_from_string(s.get<std::string>()));
  return out;
}

Json coeff_pairs(const QExpansion& s) {
  Json arr = Json::array();
  for (long n = s.lead; n < s.prec; ++n) {
    arr.push_back(Json::array({n, to_string(s.coeff(n))}));
  }
  return arr;
}

std::string real_hex(const Real& v) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%Ra", v.get()) < 0) {
    throw std::runtime_error("real_hex: mpfr_asprintf failed");
  }
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

Json qexpansion_to_json(const QExpansion& s) {
  return Json{{"leading_exponent", s.lead},
              {"precision", s.prec},
              {"coeffs", coeff_pairs(s)}};
}

QExpansion qexpansion_from_json(const Json& j) {
  QExpansion s;
  s.lead = j.at("leading_exponent").get<long>();
  s.prec = j.at("precision").get<long>();
  s.c.assign(static_cast<size_t>(s.prec - s.lead), Rational(0));
  for (const auto& pair : j.at("coeffs")) {
    const long n = pair.at(0).get<long>();
    s.c.at(static_cast<size_t>(n - s.lead)) =
        rational_from_string(pair.at(1).get<std::string>());
  }
  return s;
}

Json basis_to_json(const CanonicalBasis& b) {
  Json forms = Json::array();
  for (const auto& f : b.forms) forms.push_back(coeff_pairs(f));
  return Json{{"weight", b.weight}, {"ell", b.ell}, {"precision", b.prec}, {"forms", forms}};
}

CanonicalBasis basis_from_json(const Json& j) {
  CanonicalBasis b;
  b.weight = j.at("weight").get<unsigned>();
  b.ell = j.at("ell").get<unsigned>();
  b.prec = j.at("precision").get<long>();
  for (const auto& form : j.at("forms")) {
    QExpansion s;
    s.lead = 0;
    s.prec = b.prec;
    s.c.assign(static_cast<size_t>(b.prec), Rational(0));
    for (const auto& pair : form) {
      const long n = pair.at(0).get<long>();
      s.c.at(static_cast<size_t>(n)) = rational_from_string(pair.at(1).get<std::string>());
    }
    b.forms.push_back(std::move(s));
  }
  return b;
}

Json upper_to_json(const UpperReal& u) {
  return Json{{"semantics", "upper_bound"},
              {"decimal", u.str(24)},
              {"hex", real_hex(u.value())},
              {"prec_bits", static_cast<long>(u.prec())}};
}

UpperReal upper_from_json(const Json& j) {
  Real v(static_cast<mpfr_prec_t>(j.at("prec_bits").get<long>()));
  const std::string hex = j.at("hex").get<std::string>();
  if (mpfr_set_str(v.get(), hex.c_str(), 0, MPFR_RNDU) != 0) {
    throw std::invalid_argument("upper_from_json: cannot parse hex value '" + hex + "'");
  }
  return UpperReal(std::move(v));
}

Json bound_report_to_json(const BoundReport& r) {
  Json j{{"weight", r.weight},
         {"ell", r.ell},
         {"t", r.t},
         {"C2", upper_to_json(r.C2)},
         {"Bk", r.Bk.get_str()},
         {"L", r.L.get_str()},
         {"U", r.U.get_str()},
         {"thm3_constant", upper_to_json(r.thm3_constant)},
         {"y", upper_to_json(r.y)},
         {"s", r.s.get_str()},
         {"coeff_caps", rationals_to_json(r.coeff_caps)},
         {"prec_bits", static_cast<long>(r.prec_bits)}};
  j["C_cap"] = r.C_cap ? upper_to_json(*r.C_cap) : Json(nullptr);
  return j;
}

Json inequality_to_json(const LinearInequality& q) {
  return Json{{"n", q.n},
              {"constant", to_string(q.constant)},
              {"coeffs", rationals_to_json(q.coeffs)}};
}

LinearInequality inequality_from_json(const Json& j) {
  LinearInequality q;
  q.n = j.at("n").get<unsigned>();
  q.constant = rational_from_string(j.at("constant").get<std::string>());
  q.coeffs = rationals_from_json(j.at("coeffs"));
  return q;
}

Json certificate_to_json(const FarkasCertificate& c) {
  return Json{{"premise_multipliers", rationals_to_json(c.premise_multipliers)},
              {"bound_multipliers", rationals_to_json(c.bound_multipliers)},
              {"slack", to_string(c.slack)}};
}

FarkasCertificate certificate_from_json(const Json& j) {
  FarkasCertificate c;
  c.premise_multipliers = rationals_from_json(j.at("premise_multipliers"));
  c.bound_multipliers = rationals_from_json(j.at("bound_multipliers"));
  c.slack = rational_from_string(j.at("slack").get<std::string>());
  return c;
}

Json witness_to_json(const WitnessPoint& w) {
  return Json{{"values", rationals_to_json(w.values)}};
}

WitnessPoint witness_from_json(const Json& j) {
  WitnessPoint w;
  w.values = rationals_from_json(j.at("values"));
  return w;
}

Json sign_report_to_json(const SignReport& r) {
  const char* verdict = r.verdict == SignVerdict::Positive   ? "positive"
                        : r.verdict == SignVerdict::Negative ? "negative"
                                                             : "undecided";
  return Json{{"n", r.n}, {"lo", r.lo}, {"hi", r.hi}, {"c_max", r.c_max}, {"verdict", verdict}};
}

Json poincare_coeff_to_json(const PoincareCoeff& c) {
  return Json{{"n", c.n},
              {"lo", c.value.lo().str(24, MPFR_RNDD)},
              {"hi", c.value.hi().str(24, MPFR_RNDU)},
              {"c_max", c.c_max},
              {"tail", upper_to_json(c.tail)},
              {"prec_bits", static_cast<long>(c.prec_bits)}};
}

}  // namespace mfpos
