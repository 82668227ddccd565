#pragma once

#include <stdexcept>
#include <string>

namespace budq {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad parameters or malformed/inconsistent input data.
struct InputError : Error {
    using Error::Error;
};

// A resource guard tripped (operator-group cap, enumeration bound).
struct CapExceeded : Error {
    using Error::Error;
};

} // namespace budq
