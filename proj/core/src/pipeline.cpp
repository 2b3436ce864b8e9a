#include "mfpos/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfpos {

WeightResult run_weight(unsigned k, const PipelineOptions& opts) {
  if (k % 4 != 0 || k < 12) {
    throw std::invalid_argument("run_weight: weight must be a multiple of 4, >= 12");
  }
  long precision = std::max({opts.precision, static_cast<long>(k / 12) + 3, 140L});
  CanonicalBasis basis = miller_basis(k, precision);

  unsigned t;
  try {
    t = find_t(basis, static_cast<unsigned>(precision - 1));
  } catch (const NotFoundError&) {
    if (precision >= 2048) throw;
    precision = 2048;
    basis = miller_basis(k, precision);
    t = find_t(basis, static_cast<unsigned>(precision - 1));
  }

  BoundReport rep = c2_and_Bk(k, basis, t, opts.prec_bits, opts.cusp);
  if (rep.Bk > 1000000) {
    throw Error("run_weight: B(k) too large for the q-expansion pipeline");
  }
  const unsigned Bk = static_cast<unsigned>(rep.Bk.get_ui());
  if (static_cast<long>(Bk) >= precision) {
    precision = static_cast<long>(Bk) + 60;
    basis = miller_basis(k, precision);
  }

  AkResult ak = compute_A(k, basis, Bk);

  WeightResult out;
  out.k = k;
  out.ell = basis.ell;
  out.t = t;
  out.C2 = rep.C2;
  out.Bk = rep.Bk;
  out.L = rep.L;
  out.U = rep.U;
  out.A = ak.A;
  out.witness = ak.witness;
  out.precision_used = precision;
  return out;
}

}  // namespace mfpos
