#pragma once

#include <stdexcept>
#include <string>

namespace argconf {

/// Base of every error raised by the library. `code()` is a stable
/// upper-case token suitable for scripting (e.g. "SIMPLEX_VIOLATION").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Numeric errors raised by the opinion kernel.
class NumericError : public Error {
public:
    using Error::Error;
};

class SimplexViolation : public NumericError {
public:
    explicit SimplexViolation(const std::string& msg) : NumericError("SIMPLEX_VIOLATION", msg) {}
};

class BaseRateRange : public NumericError {
public:
    explicit BaseRateRange(const std::string& msg) : NumericError("BASE_RATE_RANGE", msg) {}
};

class DogmaticOpinion : public NumericError {
public:
    explicit DogmaticOpinion(const std::string& msg) : NumericError("DOGMATIC_OPINION", msg) {}
};

class DivergentEndpoint : public NumericError {
public:
    explicit DivergentEndpoint(const std::string& msg) : NumericError("DIVERGENT_ENDPOINT", msg) {}
};

class BaseRateDegenerate : public NumericError {
public:
    explicit BaseRateDegenerate(const std::string& msg)
        : NumericError("BASE_RATE_DEGENERATE", msg) {}
};

class DegenerateConditionals : public NumericError {
public:
    explicit DegenerateConditionals(const std::string& msg)
        : NumericError("DEGENERATE_CONDITIONALS", msg) {}
};

class InvalidArgument : public NumericError {
public:
    explicit InvalidArgument(const std::string& msg) : NumericError("INVALID_ARGUMENT", msg) {}
};

}  // namespace argconf
