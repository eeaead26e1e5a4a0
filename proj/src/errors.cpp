#include "wpa/errors.hpp"

namespace wpa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::precision: return "precision";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::scale: return "scale";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace wpa
