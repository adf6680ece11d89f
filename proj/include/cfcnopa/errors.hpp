#pragma once

#include <stdexcept>
#include <string>

namespace cfcnopa {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its physical bounds.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A stand-alone NOPA transfer denominator vanished (oscillation threshold).
class ThresholdReached : public Error {
 public:
  using Error::Error;
};

/// The coherent feedback loop denominator vanished.
class LoopUnstable : public Error {
 public:
  using Error::Error;
};

/// A generic linear solve hit a singular matrix.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Two reports from different mode counts were compared.
class MismatchedContext : public Error {
 public:
  using Error::Error;
};

/// A sweep produced no evaluable sample.
class EmptyResult : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfcnopa
