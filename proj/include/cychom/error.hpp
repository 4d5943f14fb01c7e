#pragma once

#include <stdexcept>
#include <string>

namespace cychom {

/// Base of every error the library raises.  `kind()` is the stable name
/// used in reports and by the CLI exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define CYCHOM_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name, what) {}             \
  };

CYCHOM_DEFINE_ERROR(DivisionByZero)
CYCHOM_DEFINE_ERROR(FieldMismatch)
CYCHOM_DEFINE_ERROR(AmbientMismatch)
CYCHOM_DEFINE_ERROR(NotContained)
CYCHOM_DEFINE_ERROR(ParseError)
CYCHOM_DEFINE_ERROR(ValidationError)
CYCHOM_DEFINE_ERROR(ClosureOverflow)
CYCHOM_DEFINE_ERROR(NotAutomorphism)
CYCHOM_DEFINE_ERROR(NotMultiplicative)
CYCHOM_DEFINE_ERROR(NonUnital)
CYCHOM_DEFINE_ERROR(SizeOverflow)
CYCHOM_DEFINE_ERROR(DegreeTooLow)
CYCHOM_DEFINE_ERROR(NotStabilized)
CYCHOM_DEFINE_ERROR(SplittingFieldTooLarge)
CYCHOM_DEFINE_ERROR(FiltrationNotStandard)
CYCHOM_DEFINE_ERROR(FiltrationNotRespected)
CYCHOM_DEFINE_ERROR(EmptyTarget)
CYCHOM_DEFINE_ERROR(DegreePositive)
CYCHOM_DEFINE_ERROR(NotIdempotent)
CYCHOM_DEFINE_ERROR(NotInvertible)
CYCHOM_DEFINE_ERROR(OrderUnbounded)
CYCHOM_DEFINE_ERROR(InvalidArgument)

#undef CYCHOM_DEFINE_ERROR

}  // namespace cychom
