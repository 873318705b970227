#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Bad user-facing configuration (rejected before any numerics run). CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical precondition does not hold for otherwise-valid inputs
/// (grid truncation, edge energy, lobe overlap, kernel too wide). CLI exit code 3.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Violated API contract (dimension mismatch, negative Poisson mean, ...). CLI exit code 3.
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

/// Filesystem / format failures. CLI exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace biphoton
