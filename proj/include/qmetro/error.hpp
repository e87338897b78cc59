#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace qmetro {

enum class ErrorKind {
  InvalidDimension,
  InvalidInput,
  TruncationOverflow,
  ResourceLimit,
  UnsupportedClosedForm,
  QuadratureNonconvergence,
  ResolutionError,
  ConfigError,
  ToleranceBreach,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; the kind selects the failure class
/// and, for truncation overflows, `suggested_dim()` carries a cutoff that
/// would satisfy the tail bound.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, Eigen::Index suggested_dim = 0);

  ErrorKind kind() const noexcept { return kind_; }
  Eigen::Index suggested_dim() const noexcept { return suggested_dim_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
  Eigen::Index suggested_dim_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message, Eigen::Index suggested_dim = 0);

}  // namespace qmetro
