#pragma once

#include <stdexcept>
#include <string>

namespace residua {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input: syntax errors, type errors, broken invariants.
/// Carries a 1-based line/column when the source position is known
/// (0 means "no position").
class SpecError : public Error {
public:
    SpecError(std::string msg, int line = 0, int column = 0)
        : Error(format(msg, line, column)), line_(line), column_(column),
          message_(std::move(msg)) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    static std::string format(const std::string& msg, int line, int column) {
        if (line <= 0) return msg;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    }

    int line_;
    int column_;
    std::string message_;
};

/// Two transitions enabled at once. The automaton was declared
/// deterministic; this is a specification bug surfaced at run time.
class NondeterminismError : public Error {
public:
    explicit NondeterminismError(const std::string& msg) : Error(msg) {}
};

/// Inputs to a component-wise union were not derived from one parent DATE.
class IncompatibleUnion : public Error {
public:
    explicit IncompatibleUnion(const std::string& msg) : Error(msg) {}
};

/// A pair was declared must-alias and explicitly not-may-alias.
class ContradictoryAliases : public Error {
public:
    explicit ContradictoryAliases(const std::string& msg) : Error(msg) {}
};

/// An enumeration or fixpoint exceeded its configured cap.
class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& msg) : Error(msg) {}
};

/// Resource caps, overridable via the RESIDUA_LIMIT environment variable.
std::size_t trace_limit();
std::size_t product_limit();

} // namespace residua
