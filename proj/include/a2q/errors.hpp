#pragma once

#include <stdexcept>
#include <string>

namespace a2q {

// Violated precondition of a library operation. The CLI maps every
// DomainError to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define A2Q_DEFINE_ERROR(Name)                  \
  class Name : public DomainError {             \
   public:                                      \
    using DomainError::DomainError;             \
  }

A2Q_DEFINE_ERROR(ParseError);
A2Q_DEFINE_ERROR(FieldMismatch);
A2Q_DEFINE_ERROR(DegenerateInput);
A2Q_DEFINE_ERROR(Singular);
A2Q_DEFINE_ERROR(IterationLimit);
A2Q_DEFINE_ERROR(NotAdjacent);
A2Q_DEFINE_ERROR(InvalidVertex);
A2Q_DEFINE_ERROR(DimensionMismatch);
A2Q_DEFINE_ERROR(ZeroFunction);
A2Q_DEFINE_ERROR(NotInS);
A2Q_DEFINE_ERROR(InvalidEpsilon);
A2Q_DEFINE_ERROR(TruncationTooCoarse);
A2Q_DEFINE_ERROR(RangeError);

#undef A2Q_DEFINE_ERROR

}  // namespace a2q
