#pragma once

#include <span>
#include <vector>

#include "padereg/rational.hpp"

namespace padereg {

/// Two-parameter Weibull law W(x) = 1 - exp(-(x / theta)^shape).
struct WeibullParams {
  double theta = 1.0;
  double shape = 1.0;

  double cdf(double x) const;
  double pdf(double x) const;
};

/// Plotting-position offset `a` of F_k = (k - a) / (M + 1 - 2a).
struct RankConfig {
  double a = 0.3;
};

std::vector<double> median_ranks(int count, RankConfig cfg = {});

/// Least squares of ln ln(1 / (1 - F)) on ln x.
WeibullParams transform_fit(std::span<const double> times,
                            std::span<const double> ranks);

/// Maximum-likelihood estimate for complete (uncensored) samples.
WeibullParams mle_fit(std::span<const double> times);

/// theta * Gamma(1 + 1/shape).
double mttf(const WeibullParams& params);

/// Integral of 1 - R(x) over [0, inf) for a CDF-shaped rational model.
/// `data_max` bounds the search for the truncation point (50 * data_max).
double mttf(const RationalModel& cdf, double data_max);

}  // namespace padereg
