#pragma once

#include <stdexcept>
#include <string>

namespace g2nil {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NotNondegenerate : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
// exact arithmetic cannot represent the result (irrational root etc.)
struct InexactValue : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace g2nil
