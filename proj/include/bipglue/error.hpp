#pragma once

#include <stdexcept>
#include <string>

namespace bipglue {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input text that cannot be parsed. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

    int line() const { return line_; }

private:
    int line_ = 0;
};

// A structurally readable value that violates a model invariant or an
// operation precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A combinatorial enumeration exceeded its configured budget.
class EnumerationLimitError : public Error {
public:
    using Error::Error;
};

} // namespace bipglue
