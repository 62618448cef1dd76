#pragma once

#include <stdexcept>
#include <string>

namespace fj {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (system files, expressions, CLI values).
class InputError : public Error {
public:
    using Error::Error;
};

/// A pivot or sample whose vanishing could not be decided by the zero-test oracle.
class DegenerateStratumError : public Error {
public:
    DegenerateStratumError(const std::string& what, std::string expression)
        : Error(what), expression_(std::move(expression)) {}

    const std::string& expression() const noexcept { return expression_; }

private:
    std::string expression_;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class IterationLimitError : public Error {
public:
    using Error::Error;
};

/// Broken internal invariant. Always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Exact evaluation failed: unbound symbol or a vanishing denominator.
class EvaluationError : public Error {
public:
    enum class Kind { UnboundSymbol, ZeroDenominator };

    EvaluationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace fj
