#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abrv {

/// Malformed input. `line` is 1-based; 0 when the position is unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that is inconsistent with the model (unknown names,
/// mismatched alphabets, and so on).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A verdict query that is undefined for the current session state.
class QueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace abrv
