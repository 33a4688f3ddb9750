#pragma once

#include <stdexcept>
#include <string>

namespace conefort {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CONEFORT_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what = #Name) : Error(what) {}     \
    };

CONEFORT_DEFINE_ERROR(DimensionMismatch)
CONEFORT_DEFINE_ERROR(NotASublattice)
CONEFORT_DEFINE_ERROR(NotFinite)
CONEFORT_DEFINE_ERROR(NotPrime)
CONEFORT_DEFINE_ERROR(SingularMatrix)
CONEFORT_DEFINE_ERROR(InvalidFan)
CONEFORT_DEFINE_ERROR(SingularGenerator)
CONEFORT_DEFINE_ERROR(HypothesisViolated)
CONEFORT_DEFINE_ERROR(NotSmooth)
CONEFORT_DEFINE_ERROR(NotTopDimensional)
CONEFORT_DEFINE_ERROR(NotFiniteIndex)
CONEFORT_DEFINE_ERROR(NotSupported)
CONEFORT_DEFINE_ERROR(InvalidRank)
CONEFORT_DEFINE_ERROR(InvalidLevel)
CONEFORT_DEFINE_ERROR(UnsupportedFamily)
CONEFORT_DEFINE_ERROR(ParseError)
CONEFORT_DEFINE_ERROR(DepthExceeded)

#undef CONEFORT_DEFINE_ERROR

}  // namespace conefort
