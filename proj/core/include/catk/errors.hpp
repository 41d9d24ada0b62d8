#pragma once

#include <stdexcept>
#include <string>

namespace catk {

/// Caller broke a documented precondition (dimension mismatch, bad parameter range).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A direction vector that is not a unit vector within tolerance.
class InvalidPointError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Geometric input outside the regime where the operation is defined
/// (geodesic not unique, curvature bound exceeded, point outside domain).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class DegenerateTriangleError : public DomainError {
public:
  using DomainError::DomainError;
};

class InfeasibleTriangleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A query whose answer the closed catalog cannot provide analytically.
class UnsupportedAnalysisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach the requested tolerance within its cap.
class NonconvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A search exhausted the supplied data (e.g. resolvent family too short).
class ExhaustedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace catk
