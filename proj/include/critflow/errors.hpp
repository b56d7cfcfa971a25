#pragma once

#include <stdexcept>
#include <string>

namespace critflow {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid mesh/scenario configuration (mesh too small, bad parameters in
/// config files, malformed dump files).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A call that violates an interface contract (mesh mismatch, wrong branch).
class UsageError : public Error {
public:
  using Error::Error;
};

/// An iterative solver failed to converge; carries the final residual.
class SolverError : public Error {
public:
  SolverError(const std::string& what, double residual)
      : Error(what + " (final residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_ = 0.0;
};

/// The weighted critical integral is non-positive: the field lies outside
/// the cone on which the energy quotient is defined.
class ConeError : public Error {
public:
  using Error::Error;
};

/// No admissible initial datum could be produced.
class AdmissibilityError : public Error {
public:
  using Error::Error;
};

/// An internal consistency identity failed beyond tolerance, or a computed
/// object violates one of its declared invariants.
class InvariantError : public Error {
public:
  using Error::Error;
};

/// A requested scale is below what the mesh can resolve.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// Domain-specific parameter violation (coefficient construction, geometry,
/// unsupported dimension).
class ParamError : public Error {
public:
  using Error::Error;
};

}  // namespace critflow
