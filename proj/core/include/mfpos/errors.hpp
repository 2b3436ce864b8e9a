#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfpos {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// find_t exhausted its search limit without finding a column-negative index.
struct NotFoundError : Error {
  explicit NotFoundError(const std::string& what) : Error(what) {}
};

// An integer threshold could not be pinned down because the enclosure
// straddles an integer even at the precision cap.
struct EnclosureTooWideError : Error {
  explicit EnclosureTooWideError(const std::string& what) : Error(what) {}
};

// poincare_coeff hit its c_max / precision caps before reaching the
// requested interval width.  achieved_width is the width it got to.
struct WidthNotReachedError : Error {
  WidthNotReachedError(const std::string& what, double achieved)
      : Error(what), achieved_width(achieved) {}
  double achieved_width;
};

// A coefficient interval straddles zero at the caps, so its sign is unknown.
struct UndecidedError : Error {
  UndecidedError(const std::string& what, std::uint64_t index, double lo, double hi)
      : Error(what), n(index), interval_lo(lo), interval_hi(hi) {}
  std::uint64_t n;
  double interval_lo;
  double interval_hi;
};

// A lemma hypothesis (e.g. s*beta < -alpha for the tail bound) failed.
struct HypothesisError : Error {
  explicit HypothesisError(const std::string& what) : Error(what) {}
};

}  // namespace mfpos
