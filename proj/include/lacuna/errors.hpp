#ifndef LACUNA_ERRORS_HPP
#define LACUNA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lacuna {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct DimensionTooLarge : Error {
  explicit DimensionTooLarge(const std::string& msg) : Error(msg) {}
};

struct PatternMismatch : Error {
  explicit PatternMismatch(const std::string& msg) : Error(msg) {}
};

struct UnsupportedKind : Error {
  explicit UnsupportedKind(const std::string& msg) : Error(msg) {}
};

struct SizeExceeded : Error {
  explicit SizeExceeded(const std::string& msg) : Error(msg) {}
};

struct ZeroPolynomial : Error {
  explicit ZeroPolynomial(const std::string& msg) : Error(msg) {}
};

struct ZeroVector : Error {
  explicit ZeroVector(const std::string& msg) : Error(msg) {}
};

struct TooManyIndices : Error {
  explicit TooManyIndices(const std::string& msg) : Error(msg) {}
};

struct WeightTooLarge : Error {
  explicit WeightTooLarge(const std::string& msg) : Error(msg) {}
};

struct BoundViolated : Error {
  explicit BoundViolated(const std::string& msg) : Error(msg) {}
};

struct ConditionFailed : Error {
  explicit ConditionFailed(const std::string& msg) : Error(msg) {}
};

struct IrrationalData : Error {
  explicit IrrationalData(const std::string& msg) : Error(msg) {}
};

struct HorizonExhausted : Error {
  explicit HorizonExhausted(const std::string& msg) : Error(msg) {}
};

}  // namespace lacuna

#endif
