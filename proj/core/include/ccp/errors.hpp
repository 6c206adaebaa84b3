#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ccp {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (bad weights, index out of
/// range, value outside a function's domain).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A subset enumeration or permutation recursion would exceed the configured
/// work limit. Never raised silently: callers either raise the limit or fall
/// back to an approximation.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
        : Error(what), requested_(requested), limit_(limit) {}

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t requested_;
    std::uint64_t limit_;
};

/// An internal numeric consistency check failed (e.g. a float pdf entry far
/// below zero). Signals a bug rather than bad input.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace ccp
