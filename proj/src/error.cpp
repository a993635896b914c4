#include "compknn/error.hpp"

namespace compknn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NegativeComponent: return "NegativeComponent";
    case ErrorKind::ZeroUnderNegativePower: return "ZeroUnderNegativePower";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroInAitchison: return "ZeroInAitchison";
    case ErrorKind::InsufficientTraining: return "InsufficientTraining";
    case ErrorKind::InfeasibleStratification: return "InfeasibleStratification";
    case ErrorKind::UndefinedRoc: return "UndefinedRoc";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace compknn
