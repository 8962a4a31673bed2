#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point lies outside the domain (or a domain parameter is invalid).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what, std::ptrdiff_t index = -1)
        : Error(what), index_(index) {}
    /// Offending slot of a configuration, or -1 when not applicable.
    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// Reflection or collar-based formula requested outside the collar.
class CollarError : public Error {
public:
    explicit CollarError(const std::string& what, std::ptrdiff_t index = -1)
        : Error(what), index_(index) {}
    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// Kernel evaluated at coincident points.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Line chart with non-monotone parameters.
class ChartError : public Error {
public:
    using Error::Error;
};

/// Configuration not in the configuration space (coincident, outside, wrong size).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Enumeration size exceeds the supported bound.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Requested operation is not available for this domain model.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Finite-difference step is not resolvable near a singularity.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Rejection sampler could not place a configuration.
class SamplingError : public Error {
public:
    using Error::Error;
};

/// Malformed seed specification.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Newton refinement diverged; carries the last iterate.
class RefinementError : public Error {
public:
    RefinementError(const std::string& what, std::vector<std::complex<double>> last)
        : Error(what), last_(std::move(last)) {}
    const std::vector<std::complex<double>>& last_iterate() const noexcept { return last_; }

private:
    std::vector<std::complex<double>> last_;
};

}  // namespace vortex
