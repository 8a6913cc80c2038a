#pragma once

#include <stdexcept>
#include <string>

namespace tcsm {

// Base class for all domain errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TCSM_DEFINE_ERROR(Name)                       \
  class Name : public Error {                         \
   public:                                            \
    explicit Name(const std::string& msg)             \
        : Error(std::string(#Name) + ": " + msg) {}   \
  }

// model-core
TCSM_DEFINE_ERROR(RangeOutOfBounds);
TCSM_DEFINE_ERROR(NegativeCoupling);

// wavefunction
TCSM_DEFINE_ERROR(CoincidentCoordinates);
TCSM_DEFINE_ERROR(InvalidLabel);

// sampler
TCSM_DEFINE_ERROR(AdaptationFailed);
TCSM_DEFINE_ERROR(NonFiniteAmplitude);
TCSM_DEFINE_ERROR(InsufficientSamples);

// estimators
TCSM_DEFINE_ERROR(GridTooNarrow);
TCSM_DEFINE_ERROR(InsufficientBinCounts);
TCSM_DEFINE_ERROR(AsymmetricGrid);
TCSM_DEFINE_ERROR(NonPositiveData);
TCSM_DEFINE_ERROR(WindowTooSmall);

// sympoly
TCSM_DEFINE_ERROR(LengthExceedsN);
TCSM_DEFINE_ERROR(OutOfRegime);
TCSM_DEFINE_ERROR(ConstraintViolation);

// operator-algebra
TCSM_DEFINE_ERROR(TruncationTooSmall);

#undef TCSM_DEFINE_ERROR

}  // namespace tcsm
