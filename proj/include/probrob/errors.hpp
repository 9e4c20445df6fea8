#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace probrob {

// Base class for all toolkit errors. Every error is attributed to the
// pipeline stage that raised it so the driver can report where a run died.
class Error : public std::runtime_error {
  public:
    Error(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

// Malformed input text (network file, config file, report file).
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& message) : Error("parse", message) {}
};

// Structurally well-formed input that violates a documented invariant.
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& message) : Error("validate", message) {}
};

// Vector/matrix dimensions do not chain.
class DimensionError : public Error {
  public:
    explicit DimensionError(const std::string& message) : Error("dimension", message) {}
};

// The LP solver finished in a state other than optimal/infeasible.
// Feasibility answers must never be fabricated from a failed solve.
class LpIndeterminateError : public Error {
  public:
    explicit LpIndeterminateError(const std::string& message) : Error("lp", message) {}
};

// The closeness event has (estimated) zero mass; the conditional verdict
// cannot be computed.
class DegenerateConditioningError : public Error {
  public:
    explicit DegenerateConditioningError(const std::string& message)
        : Error("estimate", message) {}
};

// Rejection sampling starved and the fallback chain failed to move.
class SamplingFailureError : public Error {
  public:
    SamplingFailureError(int poly_index, const std::string& message)
        : Error("estimate", message), poly_index_(poly_index) {}

    int poly_index() const { return poly_index_; }

  private:
    int poly_index_;
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class IoError : public Error {
  public:
    explicit IoError(const std::string& message) : Error("io", message) {}
};

} // namespace probrob
