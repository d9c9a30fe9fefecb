#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "padereg/diagnostics.hpp"
#include "padereg/rational.hpp"

namespace padereg {

struct Point {
  double x = 0.0;
  double f = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

using UnderlyingFunction = std::function<double(double)>;

/// Ordered sample points (x_k, F_k), optionally tagged with the exact
/// function they were generated from.
class Dataset {
 public:
  Dataset() = default;
  /// Throws InvalidArgument on non-finite coordinates.
  explicit Dataset(std::vector<Point> points, UnderlyingFunction underlying = {});

  const std::vector<Point>& points() const noexcept { return points_; }
  const UnderlyingFunction& underlying() const noexcept { return underlying_; }
  bool has_underlying() const noexcept { return static_cast<bool>(underlying_); }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  std::vector<double> xs() const;
  std::vector<double> fs() const;
  double min_x() const;
  double max_x() const;

  /// Copy with every abscissa mapped to x^q; throws NegativeAbscissa when
  /// q is non-integer and some x < 0.
  Dataset substituted(double q) const;

 private:
  std::vector<Point> points_;
  UnderlyingFunction underlying_;
};

/// Orders, structural constraints and penalty weights of one fit.
struct FitConfig {
  int n = 0;
  int m = 0;
  std::optional<int> tail_l;
  double q = 1.0;
  double lambda = 0.0;
  double lambda1 = 0.0;
  ZeroMask zero_mask;
  /// When set, D_der is evaluated on this grid.
  std::optional<DerivativeGridSpec> der_grid;
  /// Pole-scan interval; defaults to [min x, max x].
  std::optional<std::pair<double, double>> pole_interval;
  int pole_points = 1000;

  /// CDF form: alpha_0 pinned to 0 and a shared tail at power l.
  static FitConfig cdf(int n, int m, int l);

  /// Throws InvalidArgument when an invariant fails.
  void validate() const;
};

}  // namespace padereg
