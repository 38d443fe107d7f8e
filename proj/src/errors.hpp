#pragma once

#include <stdexcept>
#include <string>

namespace isolens {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParam : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically at) a pole of the lens map.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The query point lies on the curve, so the winding number is undefined.
class OnCurveError : public Error {
 public:
  explicit OnCurveError(const std::string& what, double distance = 0.0)
      : Error(what), distance_(distance) {}
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

/// Critical-curve quadratic has both roots on the imaginary axis.
class BoundaryCase : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace isolens
