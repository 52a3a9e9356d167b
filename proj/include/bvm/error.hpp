#pragma once

#include <stdexcept>
#include <string>

namespace bvm {

/// Base class of every error this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration or tabulation would exceed its configured budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, std::string computed_count, std::size_t budget)
        : Error(what + " (needs " + computed_count + ", budget " + std::to_string(budget) + ")"),
          computed_count_(std::move(computed_count)),
          budget_(budget) {}

    /// Decimal count, or "2^k" when it does not fit in 64 bits.
    const std::string& computed_count() const { return computed_count_; }
    std::size_t budget() const { return budget_; }

private:
    std::string computed_count_;
    std::size_t budget_;
};

/// Syntax error with a 1-based source position. Parsing aborts at the first error.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw Error(msg);
}
} // namespace detail

} // namespace bvm
