#pragma once

#include <stdexcept>

namespace nclp {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositive : Error { using Error::Error; };
struct NotFaithful : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ExponentMismatch : Error { using Error::Error; };
struct DegenerateBasis : Error { using Error::Error; };
struct NotSubalgebra : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct AmbiguousBlock : Error { using Error::Error; };
struct OutsideBicommutant : Error { using Error::Error; };
struct SingularLambda : Error { using Error::Error; };
struct ReconstructionMismatch : Error { using Error::Error; };
struct InvalidTriple : Error { using Error::Error; };
struct NotIsometry : Error { using Error::Error; };
struct DecompositionFailure : Error { using Error::Error; };
struct NotAntiauto : Error { using Error::Error; };
struct NotIncreasing : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NoWitnessFound : Error { using Error::Error; };
struct WrongAlgebra : Error { using Error::Error; };

}  // namespace nclp
