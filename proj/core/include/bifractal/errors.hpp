#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bifractal {

/// Base of every error thrown by the library. `category()` is the stable
/// machine-readable tag used in CLI error reports.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    [[nodiscard]] virtual std::string_view category() const noexcept { return "error"; }
};

#define BIFRACTAL_ERROR_TYPE(Name, tag)                                          \
    class Name : public Error {                                                  \
    public:                                                                      \
        using Error::Error;                                                      \
        [[nodiscard]] std::string_view category() const noexcept override        \
        {                                                                        \
            return tag;                                                          \
        }                                                                        \
    };

BIFRACTAL_ERROR_TYPE(DomainError, "domain")
BIFRACTAL_ERROR_TYPE(ArgumentError, "argument")
BIFRACTAL_ERROR_TYPE(AdmissibilityError, "admissibility")
BIFRACTAL_ERROR_TYPE(PreconditionError, "precondition")
BIFRACTAL_ERROR_TYPE(ApproximationError, "approximation")
BIFRACTAL_ERROR_TYPE(UnboundedError, "unbounded")
BIFRACTAL_ERROR_TYPE(InfeasibleError, "infeasible")
BIFRACTAL_ERROR_TYPE(ParseError, "parse")
BIFRACTAL_ERROR_TYPE(IoError, "io")

#undef BIFRACTAL_ERROR_TYPE

/// Raised when a field evaluates to a non-finite value; carries the point.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double x, double y)
        : Error(what), x_(x), y_(y)
    {
    }
    [[nodiscard]] std::string_view category() const noexcept override { return "numeric"; }
    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }

private:
    double x_;
    double y_;
};

/// Out-of-range parameter in a spec document; names the offending key.
class ValidationError : public Error {
public:
    ValidationError(std::string key, const std::string& what)
        : Error(key + ": " + what), key_(std::move(key))
    {
    }
    [[nodiscard]] std::string_view category() const noexcept override { return "validation"; }
    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Fixed-point iteration ran out of sweeps. Keeps the per-sweep residuals.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history))
    {
    }
    [[nodiscard]] std::string_view category() const noexcept override { return "convergence"; }
    [[nodiscard]] const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

} // namespace bifractal
