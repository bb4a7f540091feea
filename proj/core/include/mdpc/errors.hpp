#pragma once

#include <stdexcept>
#include <string>

namespace mdpc {

// Base for all library errors so callers can map them to a single exit path.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad parameters, unsorted/duplicate supports, file contents
// that do not match the documented formats.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Rejection sampling ran out of attempts before hitting the target.
struct BudgetExhausted : Error {
    explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

// An exhaustive enumeration would exceed the configured pattern budget.
struct EnumerationBudgetExceeded : Error {
    explicit EnumerationBudgetExceeded(const std::string& msg) : Error(msg) {}
};

// An asymptotic formula was evaluated outside its validity regime
// (e.g. tau <= p for an upper tail, eps underflowed to zero).
struct RegimeViolation : Error {
    explicit RegimeViolation(const std::string& msg) : Error(msg) {}
};

// Filesystem / serialization failure.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace mdpc
