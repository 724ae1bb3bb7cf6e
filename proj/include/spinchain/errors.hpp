#pragma once

#include <stdexcept>
#include <string>

namespace spinchain {

// Density matrix failed a Hermiticity/trace sanity check.
struct InvalidStateError : std::runtime_error {
    explicit InvalidStateError(const std::string& what) : std::runtime_error(what) {}
};

// Pulse is inconsistent with the spin system it is applied to.
struct InvalidPulseError : std::runtime_error {
    explicit InvalidPulseError(const std::string& what) : std::runtime_error(what) {}
};

// Preparation-pulse population crossing was not found inside the search window.
struct NoCrossingError : std::runtime_error {
    explicit NoCrossingError(const std::string& what) : std::runtime_error(what) {}
};

// A configuration value violates a structural constraint (step control,
// overlapping integration windows, malformed config file, ...).
struct ConfigurationError : std::runtime_error {
    explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinchain
