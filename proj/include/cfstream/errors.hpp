#pragma once

#include <stdexcept>
#include <string>

namespace cfstream {

// Base of all library errors. kind() is a stable machine-readable class
// name; the CLI prints it and maps it to an exit code.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Bad arguments: dimension mismatches, invalid parameter ranges.
class InputError : public Error {
public:
    explicit InputError(const std::string& m) : Error("input_error", m) {}
};

// Infeasible (p, d): the monomial count does not fit the representation.
class SizeError : public Error {
public:
    explicit SizeError(const std::string& m) : Error("size_error", m) {}
};

// Moment-matrix factorization failed even after regularization. Carries
// an estimate of the smallest eigenvalue of the offending matrix.
class SingularityError : public Error {
public:
    SingularityError(const std::string& m, double smallest_eigen)
        : Error("numerical_singularity", m), smallest_eigen_(smallest_eigen) {}

    double smallest_eigen_estimate() const noexcept { return smallest_eigen_; }

private:
    double smallest_eigen_;
};

// Operation requires a fitted model / non-empty window.
class NotFittedError : public Error {
public:
    explicit NotFittedError(const std::string& m) : Error("not_fitted", m) {}
};

// Broken cross-model invariant, e.g. DyCG sub-models with unequal counts.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& m) : Error("contract_violation", m) {}
};

// Metric undefined on the given inputs (single-class labels, degenerate box).
class MetricError : public Error {
public:
    explicit MetricError(const std::string& m) : Error("undefined_metric", m) {}
};

// Unreadable or invalid config / run spec; messages name the offending field.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& m) : Error("config_error", m) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& m) : Error("io_error", m) {}
};

}  // namespace cfstream
