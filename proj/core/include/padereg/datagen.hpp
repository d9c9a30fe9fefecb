#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "padereg/dataset.hpp"
#include "padereg/rational.hpp"
#include "padereg/weibull.hpp"

namespace padereg {

/// Seeded deviate stream.
///
/// The engine is std::mt19937_64 seeded with the 64-bit seed. Uniforms take
/// the top 53 bits of one engine output: u = (w >> 11 + 0.5) * 2^-53, which
/// lies strictly inside (0, 1). Normals use the Box-Muller transform on two
/// consecutive uniforms (u1, u2): z1 = r cos(2 pi u2), z2 = r sin(2 pi u2)
/// with r = sqrt(-2 ln u1); z1 is returned first and z2 on the next call.
/// This sequence is part of the on-disk contract of generated datasets.
class DeviateStream {
 public:
  explicit DeviateStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal(double mu = 0.0, double sigma = 1.0);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

struct NoiseSpec {
  double mu = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// F_k = f(x_k) (1 + z_k) with z_k ~ N(mu, sigma); keeps f as the
/// dataset's underlying function.
Dataset sample_noisy(const UnderlyingFunction& f, std::span<const double> xs,
                     const NoiseSpec& noise);

/// subintervals + 1 equally spaced points on [a, b], both ends included.
std::vector<double> uniform_grid(double a, double b, int subintervals);

/// Inverse-CDF failure times, sorted ascending.
std::vector<double> simulate_weibull_failures(const WeibullParams& params,
                                              int count, std::uint64_t seed);

/// Same, drawing P(k) from `uniform` (values in (0, 1)).
std::vector<double> simulate_weibull_failures(const WeibullParams& params,
                                              int count,
                                              const std::function<double()>& uniform);

// Underlying functions of the bundled case studies.
double sine_2pi(double x);
/// 1/((x+0.5)^2+0.25) + (1+0.2x)/((x-0.5)^2+0.09)
double resonance(double x);
/// The two resonance terms as rational models (use add() for the sum).
RationalModel resonance_term_lower();
RationalModel resonance_term_upper();
double sqrt_exp(double x);

}  // namespace padereg
