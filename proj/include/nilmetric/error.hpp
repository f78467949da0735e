#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilmetric {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  DimensionParity,
  NotNilpotent,
  NotLie,
  SingularMap,
  NotTwoStep,
  WrongTag,
  IncompatibleMetric,
  SplitMismatch,
  ZeroTensor,
  NotApplicable,
  NotClosed,
  NotCertified,
  StepCollapse,
  Parse,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nilmetric
