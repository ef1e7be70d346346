#pragma once

#include <stdexcept>
#include <string>

namespace mgs {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: malformed files, out-of-range ids, unsupported surfaces.
class InputError : public Error {
 public:
  using Error::Error;
};

// A theorem-backed invariant failed; indicates a bug or an undetected bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define MGS_DEFINE_ERROR(name, base) \
  class name : public base {         \
   public:                           \
    using base::base;                \
  };

MGS_DEFINE_ERROR(FrozenVertexMutation, InputError)
MGS_DEFINE_ERROR(AlreadyFramed, InputError)
MGS_DEFINE_ERROR(SignIncoherent, InputError)
MGS_DEFINE_ERROR(FormatError, InputError)
MGS_DEFINE_ERROR(InvariantViolation, InputError)
MGS_DEFINE_ERROR(MultiplicityOverflow, InputError)
MGS_DEFINE_ERROR(InvalidTriangulation, InputError)
MGS_DEFINE_ERROR(InvalidArc, InputError)
MGS_DEFINE_ERROR(NotALoop, InputError)
MGS_DEFINE_ERROR(NotADisk, InputError)
MGS_DEFINE_ERROR(NotABoundedSurface, InputError)
MGS_DEFINE_ERROR(UnsupportedSurface, InputError)
MGS_DEFINE_ERROR(NoEligiblePuncture, InputError)
MGS_DEFINE_ERROR(RadialPuncture, InputError)
MGS_DEFINE_ERROR(LoopAtPuncture, InputError)
MGS_DEFINE_ERROR(UnknownSeed, InputError)
MGS_DEFINE_ERROR(ClassSizeCapExceeded, InputError)
MGS_DEFINE_ERROR(IncompleteCatalog, InputError)
MGS_DEFINE_ERROR(NoIndependencePath, InternalError)
MGS_DEFINE_ERROR(ConstructionError, InternalError)
MGS_DEFINE_ERROR(VerificationFailure, InternalError)

#undef MGS_DEFINE_ERROR

}  // namespace mgs
