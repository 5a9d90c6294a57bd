#pragma once

#include <stdexcept>
#include <string>

namespace mgnet {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Graph is structurally unusable for the requested operation.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

/// No graph with the requested connectivity can be built from the allowed links.
class InfeasibleTopology : public Error {
 public:
  using Error::Error;
};

/// Weight sampling exhausted its retry budget without meeting the rank condition.
class SynthesisFailure : public Error {
 public:
  using Error::Error;
};

/// Observations are not explained by the declared fault set.
class DecodeInconsistency : public Error {
 public:
  using Error::Error;
};

/// No candidate fault set within the bound explains the observations.
class DecodeFailure : public Error {
 public:
  using Error::Error;
};

/// A condition that the algorithms guarantee did not hold.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgnet
