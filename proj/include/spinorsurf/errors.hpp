#pragma once

#include <stdexcept>
#include <string>

namespace spinorsurf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPINORSURF_DEFINE_ERROR(Name)          \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  };

SPINORSURF_DEFINE_ERROR(JacobiViolation)
SPINORSURF_DEFINE_ERROR(DegeneratePlane)
SPINORSURF_DEFINE_ERROR(NonUnitNormal)
SPINORSURF_DEFINE_ERROR(SingularElement)
SPINORSURF_DEFINE_ERROR(ShapeMismatch)
SPINORSURF_DEFINE_ERROR(InsufficientLevels)
SPINORSURF_DEFINE_ERROR(DegenerateImmersion)
SPINORSURF_DEFINE_ERROR(NonConformal)
SPINORSURF_DEFINE_ERROR(BranchInconsistency)
SPINORSURF_DEFINE_ERROR(GroupUnsupported)
SPINORSURF_DEFINE_ERROR(ChartBlowup)
SPINORSURF_DEFINE_ERROR(UnknownSurface)
SPINORSURF_DEFINE_ERROR(DomainViolation)
SPINORSURF_DEFINE_ERROR(InvalidGrid)

#undef SPINORSURF_DEFINE_ERROR

}  // namespace spinorsurf
