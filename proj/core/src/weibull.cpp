#include "padereg/weibull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "padereg/error.hpp"

namespace padereg {

namespace {

constexpr double kShapeLo = 0.01;
constexpr double kShapeHi = 100.0;
constexpr double kTailThreshold = 1e-6;
constexpr double kQuadratureTolerance = 1e-6;
constexpr int kCutoffSamplesPerUnit = 100;

void require_valid(const WeibullParams& p) {
  if (!(p.theta > 0.0) || !(p.shape > 0.0))
    throw Error(ErrorKind::InvalidArgument, "Weibull parameters must be > 0");
}

/// Leading-order decay of 1 - R at infinity as c * x^power.
struct TailDecay {
  double c = 0.0;
  int power = 0;
};

TailDecay leading_decay(const RationalModel& cdf) {
  const auto num = cdf.numerator_coefficients();
  const auto den = cdf.denominator_coefficients();
  std::vector<double> diff(std::max(num.size(), den.size()), 0.0);
  for (std::size_t i = 0; i < den.size(); ++i) diff[i] += den[i];
  for (std::size_t i = 0; i < num.size(); ++i) diff[i] -= num[i];
  int top_diff = static_cast<int>(diff.size()) - 1;
  while (top_diff > 0 && diff[static_cast<std::size_t>(top_diff)] == 0.0) --top_diff;
  const int top_den = static_cast<int>(den.size()) - 1;
  return {diff[static_cast<std::size_t>(top_diff)] / den.back(), top_diff - top_den};
}

}  // namespace

double WeibullParams::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-std::pow(x / theta, shape));
}

double WeibullParams::pdf(double x) const {
  if (x < 0.0) return 0.0;
  const double z = x / theta;
  return shape / theta * std::pow(z, shape - 1.0) * std::exp(-std::pow(z, shape));
}

std::vector<double> median_ranks(int count, RankConfig cfg) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  if (cfg.a < 0.0 || cfg.a > 0.5)
    throw Error(ErrorKind::InvalidArgument, "rank offset must lie in [0, 0.5]");
  std::vector<double> ranks(static_cast<std::size_t>(count));
  const double denom = count + 1.0 - 2.0 * cfg.a;
  for (int k = 1; k <= count; ++k) ranks[static_cast<std::size_t>(k - 1)] = (k - cfg.a) / denom;
  return ranks;
}

WeibullParams transform_fit(std::span<const double> times,
                            std::span<const double> ranks) {
  if (times.size() != ranks.size())
    throw Error(ErrorKind::LengthMismatch, "times and ranks differ in length");
  if (times.size() < 2) throw Error(ErrorKind::InsufficientData, "need >= 2 points");
  std::vector<double> u;
  std::vector<double> v;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0)) throw Error(ErrorKind::InvalidArgument, "times must be > 0", times[k]);
    if (!(ranks[k] > 0.0 && ranks[k] < 1.0))
      throw Error(ErrorKind::InvalidArgument, "ranks must lie in (0, 1)", ranks[k]);
    u.push_back(std::log(times[k]));
    v.push_back(std::log(-std::log1p(-ranks[k])));
  }
  const double n = static_cast<double>(u.size());
  const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
  const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double suu = 0.0;
  double suv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    suu += (u[k] - mu) * (u[k] - mu);
    suv += (u[k] - mu) * (v[k] - mv);
  }
  if (suu == 0.0) throw Error(ErrorKind::DegenerateAbscissae, "all times are equal");
  const double shape = suv / suu;
  const double gamma = shape * mu - mv;  // v = shape * u - gamma
  if (!(shape > 0.0)) throw Error(ErrorKind::DegenerateAbscissae, "non-positive slope");
  return {std::exp(gamma / shape), shape};
}

WeibullParams mle_fit(std::span<const double> times) {
  if (times.size() < 2) throw Error(ErrorKind::InsufficientData, "need >= 2 times");
  std::vector<double> logs;
  for (double t : times) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "times must be > 0", t);
    logs.push_back(std::log(t));
  }
  const double n = static_cast<double>(times.size());
  const double mean_log = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
  // Work with x / max(x) so x^shape stays finite for large shape.
  const double top = *std::max_element(logs.begin(), logs.end());

  auto sums = [&](double shape) {
    double s0 = 0.0;
    double s1 = 0.0;
    for (double l : logs) {
      const double w = std::exp(shape * (l - top));
      s0 += w;
      s1 += w * l;
    }
    return std::pair{s0, s1};
  };
  auto profile = [&](double shape) {
    const auto [s0, s1] = sums(shape);
    return s1 / s0 - 1.0 / shape - mean_log;
  };

  const double f_lo = profile(kShapeLo);
  const double f_hi = profile(kShapeHi);
  if (!(f_lo * f_hi < 0.0))
    throw Error(ErrorKind::NoBracket, "likelihood equation has no root in [0.01, 100]");
  auto [a, b] = boost::math::tools::bisect(
      profile, kShapeLo, kShapeHi,
      [](double l, double r) { return std::abs(r - l) <= 1e-10; });
  const double shape = 0.5 * (a + b);
  const double s0 = sums(shape).first;
  const double theta = std::exp(top) * std::pow(s0 / n, 1.0 / shape);
  return {theta, shape};
}

double mttf(const WeibullParams& params) {
  require_valid(params);
  return params.theta * std::tgamma(1.0 + 1.0 / params.shape);
}

double mttf(const RationalModel& cdf, double data_max) {
  if (!cdf.tail())
    throw Error(ErrorKind::InvalidArgument, "MTTF needs a tail-form CDF model");
  if (!(data_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "data_max must be > 0");

  const double cap = 50.0 * data_max;
  const double step = data_max / kCutoffSamplesPerUnit;
  auto survival = [&](double x) { return 1.0 - eval(cdf, x); };

  double cut = 0.0;
  bool found = false;
  double prev_den = cdf.denominator_at(cdf.substitute(0.0));
  for (double x = step; x <= cap + 0.5 * step; x += step) {
    const double den = cdf.denominator_at(cdf.substitute(x));
    if ((den > 0.0) != (prev_den > 0.0) || den == 0.0)
      throw Error(ErrorKind::PoleOnRange, "denominator changes sign", x);
    prev_den = den;
    if (std::abs(survival(x)) < kTailThreshold) {
      cut = x;
      found = true;
      break;
    }
  }
  if (!found)
    throw Error(ErrorKind::NonconvergentTail, "1 - R does not decay by the cap", cap);

  double error = 0.0;
  const double body = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      survival, 0.0, cut, 20, kQuadratureTolerance, &error);

  // Tail beyond the cut from the leading-order decay c x^power, power < -1.
  const auto decay = leading_decay(cdf);
  double tail = 0.0;
  if (cdf.q() == 1.0 && decay.power < -1) {
    tail = decay.c * std::pow(cut, decay.power + 1) / -(decay.power + 1);
  } else if (cdf.q() != 1.0) {
    const double pw = decay.power * cdf.q();
    if (pw < -1.0) tail = decay.c * std::pow(cut, pw + 1.0) / -(pw + 1.0);
  }
  return body + tail;
}

}  // namespace padereg
