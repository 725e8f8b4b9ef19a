#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace tailineq {

template <typename Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ArrayXd = ArrayX<double>;
using VectorXd = VectorX<double>;

// Error hierarchy. Every failure the library reports derives from Error so
// callers that render per-cell results can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Argument outside a function's domain, or parameters that violate a
// family's invariants.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

// Data carries no dispersion (all values equal, too few points, ...).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate_data"; }
};

// The fitted extreme value index is >= 1, so the tail mean does not exist.
class InfiniteMeanError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "infinite_mean"; }
};

// A tail fit does not belong to the sample it is combined with.
class InconsistentFitError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "inconsistent_fit"; }
};

class IngestError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ingest"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

}  // namespace tailineq
