#include "nilmetric/error.hpp"

namespace nilmetric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionParity: return "DimensionParity";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotLie: return "NotLie";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::NotTwoStep: return "NotTwoStep";
    case ErrorKind::WrongTag: return "WrongTag";
    case ErrorKind::IncompatibleMetric: return "IncompatibleMetric";
    case ErrorKind::SplitMismatch: return "SplitMismatch";
    case ErrorKind::ZeroTensor: return "ZeroTensor";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace nilmetric
