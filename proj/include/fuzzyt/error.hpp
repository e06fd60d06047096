#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzyt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text in the `.kb` / concept language.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// T(...) appearing inside another T(...).
class NestedTypicalityError : public Error {
public:
    NestedTypicalityError() : Error("nested typicality operator is not allowed") {}
};

/// A concept, role or individual name the interpretation does not define.
class UnknownNameError : public Error {
public:
    explicit UnknownNameError(const std::string& what) : Error(what) {}
};

/// Structurally invalid input: bad file shape, out-of-range degree, cyclic network.
class InputError : public Error {
public:
    using Error::Error;
};

/// The entailment search hit its configured valuation budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(unsigned long long budget, unsigned long long explored, double partial_bound)
        : Error("search budget of " + std::to_string(budget) + " valuations exceeded"),
          budget_(budget),
          explored_(explored),
          partial_bound_(partial_bound) {}

    unsigned long long budget() const noexcept { return budget_; }
    unsigned long long explored() const noexcept { return explored_; }
    /// Best value of the maximized concept seen before the abort (-1 when none).
    double partial_bound() const noexcept { return partial_bound_; }

private:
    unsigned long long budget_;
    unsigned long long explored_;
    double partial_bound_;
};

}  // namespace fuzzyt
