#pragma once

#include <stdexcept>
#include <string>

namespace apgroup {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (wrong dimension, non-triangular
/// input, asymmetric set where symmetry is required, division by zero, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A computed set would exceed its GrowthCap, or a work budget ran out.
/// The partial result is discarded.
class CapExceeded : public Error {
public:
    CapExceeded(std::string stage, std::size_t limit)
        : Error("cap exceeded at " + stage + " (limit " + std::to_string(limit) + ")"),
          stage_(std::move(stage)),
          limit_(limit) {}

    const std::string& stage() const noexcept { return stage_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::string stage_;
    std::size_t limit_;
};

/// Malformed wire input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace apgroup
