#pragma once

#include <stdexcept>
#include <string>

namespace qrfsim {

/// Bad user-supplied configuration (grids, params, config files). CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Violation of an API contract (basis mismatch, unknown axis). Programming error,
/// never downgraded to a silent fix.
struct ContractError : std::logic_error {
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// The requested configuration leaves the validity regime (weak field bound,
/// non-terminating flow series). CLI exit code 1.
struct RegimeError : std::runtime_error {
  explicit RegimeError(const std::string& what) : std::runtime_error(what) {}
};

/// A runtime diagnostic failed (edge leakage above threshold). CLI exit code 1.
struct DiagnosticError : std::runtime_error {
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

/// Resource limits (memory cap, oracle dimension). CLI exit code 3.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qrfsim
