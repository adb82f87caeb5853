#pragma once

#include <stdexcept>
#include <string>

namespace intent {

// Parse errors carry a 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + msg),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_;
    int col_;
};

// Raised by domain validation/grounding (unknown sort, arity mismatch, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string &msg) : std::runtime_error(msg) {}
};

// Raised when a narrative or question refers to things the domain lacks.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace intent
