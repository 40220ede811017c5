#pragma once

#include <stdexcept>
#include <string>

namespace combench {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownVariable : Error {
  using Error::Error;
};
struct UnsupportedConstraint : Error {
  using Error::Error;
};
struct DomainTooLarge : Error {
  using Error::Error;
};
struct InconsistentModel : Error {
  using Error::Error;
};
struct UnknownFamily : Error {
  using Error::Error;
};
struct NoSampler : Error {
  using Error::Error;
};
struct NotSatisfiable : Error {
  using Error::Error;
};
struct BackendFailure : Error {
  using Error::Error;
};
struct EmptyCohort : Error {
  using Error::Error;
};
struct EmptyRun : Error {
  using Error::Error;
};
struct MissingTraces : Error {
  using Error::Error;
};
struct UnknownAxis : Error {
  using Error::Error;
};
struct DataError : Error {
  using Error::Error;
};

}  // namespace combench
