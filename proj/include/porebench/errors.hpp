#pragma once

#include <stdexcept>
#include <string>

namespace porebench {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// File system or stream failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed request whose data fails a consistency check
// (key mismatch, malformed record, bad manifest, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input. `row` is 1-based; 0 when unknown.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t row = 0)
        : ValidationError(row ? what + " (row " + std::to_string(row) + ")" : what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

// Generated trace violates a physical bound; never silently clamped.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace porebench
