#pragma once

#include <stdexcept>
#include <string>

namespace cmclab {

/// Failure categories. Each maps onto one CLI exit code.
enum class ErrorKind {
  InvalidInput,       ///< bad argument to a library operation
  Configuration,      ///< bad run configuration or input file
  NotFound,           ///< missing input file
  Normalization,      ///< data violates H = 2Q
  IncompatibleData,   ///< Gauss equation violated beyond tolerance
  IntegrationBlowup,  ///< ODE solution left the representable range
  IntegrationFailure, ///< frame lost unimodularity
  InternalConsistency,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cmclab
