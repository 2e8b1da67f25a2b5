#pragma once

#include <stdexcept>
#include <string>

namespace cosrig {

/// A comparison or width target could not be certified below the precision cap.
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// The requested threshold is not strictly below the supremum it is compared against.
struct ThresholdAboveSup : std::runtime_error {
  explicit ThresholdAboveSup(const std::string& what) : std::runtime_error(what) {}
};

/// The threshold is too high for the requested enumeration to be finite.
struct ThresholdTooHigh : std::runtime_error {
  explicit ThresholdTooHigh(const std::string& what) : std::runtime_error(what) {}
};

/// The common period of a cyclic scan exceeds the enumeration guard.
struct PeriodOverflow : std::runtime_error {
  explicit PeriodOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// A spectral family violates the idempotent invariants beyond tolerance.
struct InvalidIdempotents : std::runtime_error {
  explicit InvalidIdempotents(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix cannot be decomposed as a cosine generator (bad spectrum or eigenbasis).
struct NotCosineGenerator : std::runtime_error {
  explicit NotCosineGenerator(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cosrig
