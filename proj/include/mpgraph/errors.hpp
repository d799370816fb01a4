#pragma once

/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every mpgraph module.
 *
 * Each error carries a stable kind name; the CLI prints it in its
 * machine-readable error object and maps it to an exit code.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpgraph {

class Error : public std::runtime_error {
public:
    Error(const char* kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    /// Stable identifier, e.g. "SingularMatrix".
    const char* kind() const noexcept { return kind_; }

    /// True for malformed input (shapes, bytes, non-graphs) as opposed to
    /// well-formed input that lies outside an operation's domain.
    virtual bool is_input_error() const noexcept { return false; }

private:
    const char* kind_;
};

#define MPGRAPH_DEFINE_ERROR(Name, InputError)                          \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name, what) {}  \
        bool is_input_error() const noexcept override { return InputError; } \
    };

MPGRAPH_DEFINE_ERROR(DivisionByZero, false)
MPGRAPH_DEFINE_ERROR(ShapeError, true)
MPGRAPH_DEFINE_ERROR(SingularMatrix, false)
MPGRAPH_DEFINE_ERROR(NotSignable, false)
MPGRAPH_DEFINE_ERROR(IncompatibleBlocks, false)
MPGRAPH_DEFINE_ERROR(PreconditionFailed, false)
MPGRAPH_DEFINE_ERROR(NoPositiveEigenvalue, false)
MPGRAPH_DEFINE_ERROR(NoNegativeEigenvalue, false)
MPGRAPH_DEFINE_ERROR(NotAGraph, true)

#undef MPGRAPH_DEFINE_ERROR

/// Malformed text input. `position` is a byte offset for single-line
/// parsers and a 1-based line number for stream readers.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error("ParseError", what), position_(position) {}

    std::size_t position() const noexcept { return position_; }
    bool is_input_error() const noexcept override { return true; }

private:
    std::size_t position_;
};

}  // namespace mpgraph
