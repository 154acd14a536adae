#pragma once

#include <stdexcept>
#include <string>

namespace ahmd {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: a violated invariant on user-supplied data, a mismatched
/// complex, an out-of-range index. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The requested computation needs a finer subdivision level.
class SubdivisionRequired : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An internal consistency check failed. The CLI maps these to exit code 3.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw ValidationError(message);
}

inline void ensure(bool condition, const std::string& message)
{
    if (!condition)
        throw InvariantViolation(message);
}

}  // namespace ahmd
