#include "padereg/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "padereg/error.hpp"

namespace padereg {

double DeviateStream::uniform() {
  const std::uint64_t w = engine_() >> 11;
  return (static_cast<double>(w) + 0.5) * 0x1.0p-53;
}

double DeviateStream::normal(double mu, double sigma) {
  double z;
  if (spare_) {
    z = *spare_;
    spare_.reset();
  } else {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    z = r * std::cos(phi);
    spare_ = r * std::sin(phi);
  }
  return mu + sigma * z;
}

Dataset sample_noisy(const UnderlyingFunction& f, std::span<const double> xs,
                     const NoiseSpec& noise) {
  if (noise.sigma < 0.0) throw Error(ErrorKind::InvalidArgument, "sigma must be >= 0");
  DeviateStream stream(noise.seed);
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (double x : xs) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite abscissa");
    const double exact = f(x);
    const double z = stream.normal(noise.mu, noise.sigma);
    pts.push_back({x, exact * (1.0 + z)});
  }
  return Dataset(std::move(pts), f);
}

std::vector<double> uniform_grid(double a, double b, int subintervals) {
  if (subintervals < 1) throw Error(ErrorKind::InvalidArgument, "subintervals must be >= 1");
  std::vector<double> xs(static_cast<std::size_t>(subintervals) + 1);
  for (int i = 0; i <= subintervals; ++i)
    xs[static_cast<std::size_t>(i)] = a + (b - a) * i / subintervals;
  xs.back() = b;
  return xs;
}

std::vector<double> simulate_weibull_failures(const WeibullParams& params,
                                              int count,
                                              const std::function<double()>& uniform) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  if (!(params.theta > 0.0) || !(params.shape > 0.0))
    throw Error(ErrorKind::InvalidArgument, "Weibull parameters must be > 0");
  std::vector<double> times(static_cast<std::size_t>(count));
  for (auto& t : times)
    t = params.theta * std::pow(-std::log1p(-uniform()), 1.0 / params.shape);
  std::sort(times.begin(), times.end());
  return times;
}

std::vector<double> simulate_weibull_failures(const WeibullParams& params,
                                              int count, std::uint64_t seed) {
  DeviateStream stream(seed);
  return simulate_weibull_failures(params, count, [&] { return stream.uniform(); });
}

double sine_2pi(double x) { return std::sin(2.0 * std::numbers::pi * x); }

double resonance(double x) {
  return 1.0 / ((x + 0.5) * (x + 0.5) + 0.25) +
         (1.0 + 0.2 * x) / ((x - 0.5) * (x - 0.5) + 0.09);
}

// (x + 0.5)^2 + 0.25 = 0.5 (1 + 2x + 2x^2)
RationalModel resonance_term_lower() { return RationalModel({2.0}, {2.0, 2.0}); }

// (x - 0.5)^2 + 0.09 = 0.34 (1 - x/0.34 + x^2/0.34)
RationalModel resonance_term_upper() {
  return RationalModel({1.0 / 0.34, 0.2 / 0.34}, {-1.0 / 0.34, 1.0 / 0.34});
}

double sqrt_exp(double x) { return std::sqrt(x) * std::exp(-x); }

}  // namespace padereg
