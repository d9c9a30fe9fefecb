#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padereg {

enum class ErrorKind {
  DenominatorZero,
  UnsupportedSubstitution,
  NormalizationImpossible,
  InvalidModel,
  InvalidArgument,
  InsufficientData,
  NegativeWeight,
  SingularSystem,
  InconsistentSystem,
  CountMismatch,
  DuplicateAbscissa,
  NegativeAbscissa,
  NoFeasibleModel,
  EmptySweep,
  LengthMismatch,
  EmptyInput,
  DegenerateAbscissae,
  NoBracket,
  NonconvergentTail,
  PoleOnRange,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<double> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }

  /// Abscissa at which the failure occurred, when meaningful.
  std::optional<double> where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<double> where_;
};

}  // namespace padereg
