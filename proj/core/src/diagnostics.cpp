#include "padereg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "padereg/error.hpp"

namespace padereg {

std::vector<double> DerivativeGridSpec::points() const {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "grid count must be >= 1");
  if (!(b > a)) throw Error(ErrorKind::InvalidArgument, "grid needs b > a");
  std::vector<double> xs(static_cast<std::size_t>(count));
  const double width = b - a;
  for (int i = 1; i <= count; ++i) {
    double x = 0.0;
    switch (placement) {
      case GridPlacement::RightEndpoint: x = a + width * i / count; break;
      case GridPlacement::Midpoint: x = a + width * (i - 0.5) / count; break;
      case GridPlacement::OpenUniform: x = a + width * i / (count + 1); break;
      case GridPlacement::ClosedUniform:
        x = count == 1 ? a : a + width * (i - 1) / (count - 1);
        break;
    }
    xs[static_cast<std::size_t>(i - 1)] = x;
  }
  return xs;
}

double rmse(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size())
    throw Error(ErrorKind::LengthMismatch, "rmse inputs differ in length");
  if (pred.empty()) throw Error(ErrorKind::EmptyInput, "rmse of empty input");
  double s = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const double r = pred[k] - target[k];
    s += r * r;
  }
  return std::sqrt(s / static_cast<double>(pred.size()));
}

double oscillation_measure(const std::function<double(double)>& derivative,
                           const DerivativeGridSpec& grid) {
  const auto xs = grid.points();
  double s = 0.0;
  for (double x : xs) {
    const double d = derivative(x);
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(xs.size()));
}

double oscillation_measure(const RationalModel& model,
                           const DerivativeGridSpec& grid) {
  return oscillation_measure(
      [&model](double x) { return padereg::derivative(model, x); }, grid);
}

double central_difference(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace padereg
