#pragma once

#include <stdexcept>
#include <string>

namespace qk {

// Base for everything thrown on purpose by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input text (diagram files, polynomial strings).  Carries a position.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

// Structurally well-formed input that violates a data invariant.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

// Wrong argument for an operation (mismatched rings, unknown ids, non-units...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A search or enumeration hit its configured limit.  Deliberately distinct
// from "no result": callers map this to its own exit code.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error("budget exceeded: " + msg) {}
};

}  // namespace qk
