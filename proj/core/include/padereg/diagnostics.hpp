#pragma once

#include <functional>
#include <span>
#include <vector>

#include "padereg/rational.hpp"

namespace padereg {

enum class GridPlacement {
  /// x_i = a + i (b - a) / N, i = 1..N (left end excluded).
  RightEndpoint,
  /// x_i = a + (i - 0.5) (b - a) / N.
  Midpoint,
  /// x_i = a + i (b - a) / (N + 1); both ends excluded.
  OpenUniform,
  /// N points from a to b inclusive.
  ClosedUniform,
};

struct DerivativeGridSpec {
  double a = 0.0;
  double b = 2.0;
  int count = 40;
  GridPlacement placement = GridPlacement::RightEndpoint;

  std::vector<double> points() const;
};

/// sqrt(sum (pred - target)^2 / M).
double rmse(std::span<const double> pred, std::span<const double> target);

/// RMS of R'(x) over the grid; throws DenominatorZero on a grid pole.
double oscillation_measure(const RationalModel& model,
                           const DerivativeGridSpec& grid);

/// Same measure for an arbitrary derivative function.
double oscillation_measure(const std::function<double(double)>& derivative,
                           const DerivativeGridSpec& grid);

/// Central difference with h = 1e-6 max(1, |x|).
double central_difference(const std::function<double(double)>& f, double x);

}  // namespace padereg
