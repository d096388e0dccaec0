#pragma once

#include <stdexcept>
#include <string>

namespace qot {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TailTruncationError : Error { using Error::Error; };
struct GridMismatchError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct OffGridError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct NoBoundStatesError : Error { using Error::Error; };
struct NegativeSymbolError : Error { using Error::Error; };
struct ZeroSymbolError : Error { using Error::Error; };
struct DimensionTooLargeError : Error { using Error::Error; };
struct NonzeroMeanError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct NonConvergenceError : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };

}  // namespace qot
