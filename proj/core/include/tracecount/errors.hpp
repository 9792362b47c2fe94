#ifndef TRACECOUNT_ERRORS_HPP
#define TRACECOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tracecount {

/// Malformed input file or word (unknown letters, bad JSON, bad DNF).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structural validation failure (bad independence relation, bad parameters).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration guard was exceeded.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A value left the range of acceptable rounded estimates.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested slice of the language is empty where a nonempty one is required.
struct EmptyLanguageError : std::runtime_error {
    explicit EmptyLanguageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tracecount

#endif
