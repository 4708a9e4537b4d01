#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nicholson {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A hypothesis of the existence theorem fails for the given parameters.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(std::string condition, const std::string& what)
        : std::runtime_error(what), condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

/// Derivative requested exactly at a non-differentiable point.
class KinkError : public std::domain_error {
public:
    KinkError(double t, const std::string& what) : std::domain_error(what), t_(t) {}
    double where() const noexcept { return t_; }

private:
    double t_;
};

/// An iterate left the order interval it is required to stay in.
class MonotonicityBreach : public std::runtime_error {
public:
    MonotonicityBreach(std::size_t step, std::size_t node, double t, const std::string& what)
        : std::runtime_error(what), step_(step), node_(node), t_(t) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t node() const noexcept { return node_; }
    double time() const noexcept { return t_; }

private:
    std::size_t step_;
    std::size_t node_;
    double t_;
};

/// Forward integration produced a non-finite state.
class BlowUpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nicholson
