#pragma once

#include <stdexcept>
#include <string>

namespace dqw {

// Input outside an operation's domain (bad parameter, invalid coin, parity
// violation, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Total probability drifted past the allowed floating-point budget.
class NumericalDriftError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact enumeration requested for an ensemble whose support is continuous or
// whose sequence count exceeds the enumeration guard.
class InfeasibleEnumerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unknown experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dqw
