#pragma once

#include <stdexcept>
#include <string>

namespace zetagaps {

// Failure categories, grouped by the process exit code they map to:
// bad input or arguments (2), insufficient table coverage (3), and
// numeric/operational failures (4).
enum class ErrorKind {
    argument,     // parameter outside its contract
    domain,       // math-domain violation (non-finite, negative, pole, ...)
    parse,        // malformed input text
    validation,   // well-formed input violating a data invariant
    coverage,     // query outside the range the table can answer exactly
    convergence,  // iteration budget exhausted before tolerance
    numeric,      // solver/eigensolver failure
    fetch,        // remote source unreachable and no cache
    integrity,    // cache/file checksum or magic mismatch
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ArgumentError : Error {
    explicit ArgumentError(const std::string& w) : Error(ErrorKind::argument, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
// Evaluation point collides with a pole of the summand.
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::parse, w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct CoverageError : Error {
    explicit CoverageError(const std::string& w) : Error(ErrorKind::coverage, w) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error(ErrorKind::convergence, w) {}
};
struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(ErrorKind::numeric, w) {}
};
struct FetchError : Error {
    explicit FetchError(const std::string& w) : Error(ErrorKind::fetch, w) {}
};
struct IntegrityError : Error {
    explicit IntegrityError(const std::string& w) : Error(ErrorKind::integrity, w) {}
};

// CLI exit-code contract: 0 success, 2 validation, 3 coverage, 4 numeric.
inline int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::argument:
        case ErrorKind::domain:
        case ErrorKind::parse:
        case ErrorKind::validation:
            return 2;
        case ErrorKind::coverage:
            return 3;
        case ErrorKind::convergence:
        case ErrorKind::numeric:
        case ErrorKind::fetch:
        case ErrorKind::integrity:
            return 4;
    }
    return 4;
}

}  // namespace zetagaps
