#pragma once

#include <stdexcept>
#include <string>

namespace wpa {

enum class ErrorKind {
  configuration,
  domain,
  degeneracy,
  conditioning,
  precision,
  infeasible,
  scale,
  unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define WPA_DEFINE_ERROR(Name, Kind) \
  class Name : public Error {        \
   public:                           \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

WPA_DEFINE_ERROR(ConfigurationError, configuration)
WPA_DEFINE_ERROR(DomainError, domain)
WPA_DEFINE_ERROR(DegeneracyError, degeneracy)
WPA_DEFINE_ERROR(ConditioningError, conditioning)
WPA_DEFINE_ERROR(PrecisionError, precision)
WPA_DEFINE_ERROR(InfeasibleError, infeasible)
WPA_DEFINE_ERROR(ScaleError, scale)
WPA_DEFINE_ERROR(UnsupportedError, unsupported)

#undef WPA_DEFINE_ERROR

}  // namespace wpa
