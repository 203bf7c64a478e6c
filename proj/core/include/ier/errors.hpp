#pragma once

#include <stdexcept>
#include <string>

namespace ier {

enum class ErrorKind { domain, resource, config, convergence };

/// Base class for every error raised by the library. The kind maps onto the
/// command line exit codes (see exit_code()).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

/// A size or work cap was exceeded.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// An iterative solver failed to converge; carries the last residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(ErrorKind::convergence, what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// 2 for config and domain errors, 3 for convergence, 4 for resource caps.
int exit_code(ErrorKind kind) noexcept;

}  // namespace ier
