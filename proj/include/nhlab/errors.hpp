#pragma once

#include <stdexcept>
#include <string>

namespace nhlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or parameter lies outside the chart or parameter domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integration left the chart domain part-way through; `time` is where it stopped.
class DomainExit : public DomainError {
 public:
  DomainExit(const std::string& what, double time)
      : DomainError(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// sigma(a^t, t) vanished: the event is sent to infinity.
class SingularTransform : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ResampleError : public Error {
 public:
  using Error::Error;
};

/// Probability mass reached the outer shell of a periodic box.
class BoundaryLeak : public Error {
 public:
  using Error::Error;
};

class CollisionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nhlab
