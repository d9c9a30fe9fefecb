#include "padereg/error.hpp"

namespace padereg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DenominatorZero: return "DenominatorZero";
    case ErrorKind::UnsupportedSubstitution: return "UnsupportedSubstitution";
    case ErrorKind::NormalizationImpossible: return "NormalizationImpossible";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorKind::NegativeAbscissa: return "NegativeAbscissa";
    case ErrorKind::NoFeasibleModel: return "NoFeasibleModel";
    case ErrorKind::EmptySweep: return "EmptySweep";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DegenerateAbscissae: return "DegenerateAbscissae";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NonconvergentTail: return "NonconvergentTail";
    case ErrorKind::PoleOnRange: return "PoleOnRange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what,
             std::optional<double> where)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind),
      where_(where) {}

}  // namespace padereg
