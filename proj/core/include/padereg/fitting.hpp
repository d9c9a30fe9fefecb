#pragma once

#include <optional>
#include <span>
#include <vector>

#include "padereg/dataset.hpp"
#include "padereg/linsys.hpp"
#include "padereg/rational.hpp"

namespace padereg {

/// Fitted model and its error figures.
///
/// `s` is the true squared-residual sum of the rational function on the
/// data; `s0` is the linearized surrogate that was minimized. `s` is +inf
/// when the fitted denominator vanishes at a data abscissa.
struct FitReport {
  RationalModel model = RationalModel::constant(0.0);
  FitConfig config;
  double s = 0.0;
  double s0 = 0.0;
  double d = 0.0;
  std::optional<double> d0;
  std::optional<double> d1;
  std::optional<double> d_der;
  PoleReport poles;
  SolveDiagnostics diagnostics;
  bool denominator_zero_at_data = false;
};

/// Linearized least squares (regularized when the config weights are > 0).
FitReport fit_linearized(const Dataset& data, const FitConfig& config);

/// As fit_linearized, and always evaluates D_der (on `config.der_grid`, or
/// 40 right-endpoint points over the data interval when unset).
FitReport fit_regularized(const Dataset& data, const FitConfig& config);

/// Exact interpolation through `refpoints`. Error figures are computed on
/// `evaluation` when given, otherwise on the reference points.
FitReport interpolate_reference(const Dataset& refpoints, int n, int m,
                                const ZeroMask& zero_mask = {},
                                const Dataset* evaluation = nullptr);

/// Sorted copy of `data` without points sitting on an anchor abscissa,
/// averaged in consecutive groups of `group_size`, with anchors merged in.
/// A trailing partial group is averaged as-is.
Dataset build_reference_points(const Dataset& data, int group_size,
                               std::span<const Point> anchors = {});

/// Fills s, s0, d, d0, d1 and the pole report for `model` on `data`.
void evaluate_errors(FitReport& report, const Dataset& data);

}  // namespace padereg
