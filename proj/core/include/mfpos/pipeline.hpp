#pragma once

#include "mfpos/bounds.hpp"
#include "mfpos/polytope.hpp"

namespace mfpos {

struct PipelineOptions {
  long precision = 200;             // q-expansion terms
  mpfr_prec_t prec_bits = kDefaultPrec;
  CuspBoundOptions cusp;
};

// Everything the tables need for one weight.
struct WeightResult {
  unsigned k = 0;
  unsigned ell = 0;
  unsigned t = 0;
  UpperReal C2;
  Integer Bk;
  Integer L;
  Integer U;
  unsigned A = 0;
  WitnessPoint witness;
  long precision_used = 0;
};

// Basis -> t -> C2/B(k) -> A(k), growing the series precision when B(k)
// exceeds it.
WeightResult run_weight(unsigned k, const PipelineOptions& opts = {});

}  // namespace mfpos
