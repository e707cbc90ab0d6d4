#pragma once

#include <stdexcept>
#include <string>

namespace absf {

/// Argument outside the mathematical domain of an operation (negative distance, alpha <= 2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation called on the wrong scenario kind or with unsupported parameter combination.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine did not reach the requested accuracy. Carries the best estimate it had.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Monte Carlo estimator produced too few samples to be meaningful.
class InsufficientDataError : public std::runtime_error {
public:
    InsufficientDataError(const std::string& what, long long samples)
        : std::runtime_error(what), samples_(samples)
    {
    }

    long long samples() const noexcept { return samples_; }

private:
    long long samples_;
};

} // namespace absf
