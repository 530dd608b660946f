#pragma once

#include <stdexcept>
#include <string>

namespace gmhd {

// Base class for every failure the library reports deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A field was asked for a representation it does not carry.
struct MissingRepresentationError : Error { using Error::Error; };

// Two fields living on different grids were combined.
struct GridMismatchError : Error { using Error::Error; };

// An operation requiring a mean-free input saw a nonzero mean mode.
struct NonzeroMeanError : Error { using Error::Error; };

// A vector field that must be solenoidal is not, beyond tolerance.
struct NotDivergenceFreeError : Error { using Error::Error; };

// A state coefficient became NaN or infinite during time stepping.
struct NonFiniteStateError : Error { using Error::Error; };

// Scalar parameters outside their documented domain.
struct ParameterOutOfRangeError : Error { using Error::Error; };

// The moment-inequality check needs an even integer exponent.
struct OddPError : Error { using Error::Error; };

// A requested exponent pair does not belong to the admissible window.
struct RegimeMismatchError : Error { using Error::Error; };

// Ratio diagnostics cannot divide by a vanishing norm.
struct ZeroDenominatorError : Error { using Error::Error; };

// Lebesgue exponents fed to the commutator check fail the Hoelder relation.
struct ExponentMismatchError : Error { using Error::Error; };

// Time-series diagnostics need at least two samples.
struct InsufficientSamplesError : Error { using Error::Error; };

// Malformed configuration file or inconsistent run parameters.
struct BadSpecError : Error { using Error::Error; };

// Filesystem-level read/write failure.
struct IoError : Error { using Error::Error; };

// Checkpoint file carries an unsupported format version.
struct VersionMismatchError : Error { using Error::Error; };

// Checkpoint header fails validation before any state is constructed.
struct CorruptHeaderError : Error { using Error::Error; };

}  // namespace gmhd
