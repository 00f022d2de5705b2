// Error taxonomy shared by all pgrav modules.
#pragma once

#include <stdexcept>
#include <string>

namespace pgrav {

// Input data violates a documented invariant (worldline ordering, speed
// bounds, schema constraints, ...). The message names the failed invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structured-text input could not be parsed; message carries location info.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// The past light cone of the requested event is not covered by the stored
// worldline span.
class NotCoveredError : public std::runtime_error {
 public:
  explicit NotCoveredError(const std::string& msg) : std::runtime_error(msg) {}
};

// Field evaluation requested closer to the worldline than the configured
// minimum separation; retarded denominators are about to blow up.
class SingularError : public std::runtime_error {
 public:
  explicit SingularError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical precondition failed (e.g. clock rate below the horizon-like
// radius, non-timelike four-velocity).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive integrator could not reach the requested local error even after
// the configured number of step halvings.
class StepRejected : public std::runtime_error {
 public:
  explicit StepRejected(const std::string& msg) : std::runtime_error(msg) {}
};

// Unit conversion asked for a dimension tag the converter does not know.
class UnknownDimensionError : public std::runtime_error {
 public:
  explicit UnknownDimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pgrav
