#pragma once

#include <stdexcept>
#include <string>

namespace clusteraf {

/// Broad failure categories; the CLI maps each to its own exit code.
enum class ErrorKind {
    Parse,       ///< malformed input text or JSON
    Validation,  ///< input parsed but violates an invariant
    Budget,      ///< node or level cap exceeded
    Degenerate,  ///< non-generic input, e.g. a Jacobi-Perron division stall
    Internal     ///< a mathematical invariant failed inside the engine
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& what) : Error(ErrorKind::Degenerate, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

}  // namespace clusteraf
