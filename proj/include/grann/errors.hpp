#pragma once

#include <stdexcept>
#include <string>

namespace grann {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& what = "operands belong to different fields")
        : Error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

struct WrongField : Error {
    explicit WrongField(const std::string& what = "operation not defined over this field")
        : Error(what) {}
};

struct ZeroPolynomial : Error {
    explicit ZeroPolynomial(const std::string& what = "zero polynomial not allowed here")
        : Error(what) {}
};

struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& what = "point arity does not match") : Error(what) {}
};

struct OrderingMismatch : Error {
    explicit OrderingMismatch(const std::string& what = "operands use different basis orderings")
        : Error(what) {}
};

struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& what = "denominator polynomial is zero")
        : Error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what = "matrix shape not as required")
        : Error(what) {}
};

// Carries a 0-based byte offset into the parsed text.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnknownVariable : SyntaxError {
    UnknownVariable(const std::string& name, std::size_t pos)
        : SyntaxError("unknown variable '" + name + "'", pos) {}
};

struct OracleFailure : Error {
    explicit OracleFailure(const std::string& what = "oracle returned too many undefined points")
        : Error(what) {}
};

struct DegenerateProbe : Error {
    explicit DegenerateProbe(const std::string& what =
                                 "no probe tuple with a non-zero cofactor vector found")
        : Error(what) {}
};

struct VerificationFailed : Error {
    std::string failing_point;
    explicit VerificationFailed(const std::string& what, std::string point = {})
        : Error(what), failing_point(std::move(point)) {}
};

struct AllUnbounded : Error {
    explicit AllUnbounded(const std::string& what = "every slice reported an unbounded c")
        : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace grann
