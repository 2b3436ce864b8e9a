#pragma once

#include <json.hpp>

#include "mfpos/bounds.hpp"
#include "mfpos/poincare.hpp"
#include "mfpos/polytope.hpp"
#include "mfpos/qseries.hpp"

namespace mfpos {

using Json = nlohmann::json;

// Rationals travel as exact decimal-free "p/q" strings; UpperReal carries an
// upper-rounded decimal for display plus an exact hex form for round-trips.

Json qexpansion_to_json(const QExpansion& s);
QExpansion qexpansion_from_json(const Json& j);

Json basis_to_json(const CanonicalBasis& b);
CanonicalBasis basis_from_json(const Json& j);

Json upper_to_json(const UpperReal& u);
UpperReal upper_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& r);

Json inequality_to_json(const LinearInequality& q);
LinearInequality inequality_from_json(const Json& j);

Json certificate_to_json(const FarkasCertificate& c);
FarkasCertificate certificate_from_json(const Json& j);

Json witness_to_json(const WitnessPoint& w);
WitnessPoint witness_from_json(const Json& j);

Json sign_report_to_json(const SignReport& r);
Json poincare_coeff_to_json(const PoincareCoeff& c);

}  // namespace mfpos
