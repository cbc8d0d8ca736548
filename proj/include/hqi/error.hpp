#pragma once

#include <stdexcept>
#include <string>

namespace hqi {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on sizes, degrees, orders or evaluation domain was violated.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Malformed input: unreadable file, bad JSON, bad CSV, inconsistent payload.
class ParseError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& msg)
{
    if(!cond)
        throw ConstraintError(msg);
}

}  // namespace hqi
