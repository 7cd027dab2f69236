#include "cmclab/error.hpp"

namespace cmclab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::NotFound: return "file-not-found";
    case ErrorKind::Normalization: return "normalization";
    case ErrorKind::IncompatibleData: return "incompatible-data";
    case ErrorKind::IntegrationBlowup: return "integration-blowup";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::InternalConsistency: return "internal-consistency";
  }
  return "unknown";
}

}  // namespace cmclab
