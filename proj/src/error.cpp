#include "qmetro/error.hpp"

namespace qmetro {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::TruncationOverflow: return "truncation-overflow";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::UnsupportedClosedForm: return "unsupported-closed-form";
    case ErrorKind::QuadratureNonconvergence: return "quadrature-nonconvergence";
    case ErrorKind::ResolutionError: return "resolution-error";
    case ErrorKind::ConfigError: return "config-error";
    case ErrorKind::ToleranceBreach: return "tolerance-breach";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, Eigen::Index suggested_dim)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(message),
      suggested_dim_(suggested_dim) {}

void fail(ErrorKind kind, const std::string& message, Eigen::Index suggested_dim) {
  throw Error(kind, message, suggested_dim);
}

}  // namespace qmetro
