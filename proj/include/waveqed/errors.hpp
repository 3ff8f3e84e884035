#pragma once

#include <stdexcept>
#include <string>

namespace waveqed {

/// Raised when a quantity is requested exactly at a mode cutoff, where the
/// density of states (and hence the decay rate) diverges. Callers that need
/// band-edge behaviour must use limit evaluation instead of arithmetic.
class BandEdgeError : public std::domain_error {
public:
    explicit BandEdgeError(const std::string& what) : std::domain_error(what) {}
};

/// Adaptive quadrature failed to reach the requested tolerance. The message
/// carries the achieved error estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved(achieved_error) {}
    double achieved;
};

/// Invalid user-supplied configuration (geometry, CLI flags, config file).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace waveqed
