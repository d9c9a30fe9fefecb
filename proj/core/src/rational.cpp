#include "padereg/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "padereg/error.hpp"

namespace padereg {

namespace {

std::vector<double> derivative_coefficients(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i)
    d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

void trim_trailing_zeros(std::vector<double>& c, std::size_t keep) {
  while (c.size() > keep && c.back() == 0.0) c.pop_back();
}

void require_plain(const RationalModel& m, const char* op) {
  if (m.q() != 1.0)
    throw Error(ErrorKind::UnsupportedSubstitution,
                std::string(op) + " requires q = 1");
}

}  // namespace

double horner(std::span<const double> coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> poly_multiply(std::span<const double> a,
                                  std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RationalModel::RationalModel(std::vector<double> alpha, std::vector<double> beta,
                             std::optional<TailTerm> tail, double q,
                             ZeroMask zero_mask)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      tail_(tail),
      q_(q),
      zero_mask_(std::move(zero_mask)) {
  if (alpha_.empty())
    throw Error(ErrorKind::InvalidModel, "numerator needs at least alpha_0");
  if (!(q_ > 0.0) || !std::isfinite(q_))
    throw Error(ErrorKind::InvalidModel, "substitution power q must be > 0");
  if (tail_ && (tail_->exponent <= n() || tail_->exponent <= m()))
    throw Error(ErrorKind::InvalidModel,
                "tail exponent must exceed both n and m");
  for (int i : zero_mask_.alpha) {
    if (i < 0 || i > n())
      throw Error(ErrorKind::InvalidModel, "alpha mask index out of range");
    if (alpha_[static_cast<std::size_t>(i)] != 0.0)
      throw Error(ErrorKind::InvalidModel,
                  "masked alpha_" + std::to_string(i) + " is not zero");
  }
  for (int j : zero_mask_.beta) {
    if (j < 1 || j > m())
      throw Error(ErrorKind::InvalidModel, "beta mask index out of range");
    if (beta_[static_cast<std::size_t>(j - 1)] != 0.0)
      throw Error(ErrorKind::InvalidModel,
                  "masked beta_" + std::to_string(j) + " is not zero");
  }
}

RationalModel RationalModel::constant(double value) {
  return RationalModel({value});
}

double RationalModel::substitute(double x) const {
  return q_ == 1.0 ? x : std::pow(x, q_);
}

std::vector<double> RationalModel::numerator_coefficients() const {
  std::vector<double> c = alpha_;
  if (tail_) {
    c.resize(static_cast<std::size_t>(tail_->exponent) + 1, 0.0);
    c.back() = tail_->coefficient;
  }
  return c;
}

std::vector<double> RationalModel::denominator_coefficients() const {
  std::vector<double> c;
  c.reserve(beta_.size() + 1);
  c.push_back(1.0);
  c.insert(c.end(), beta_.begin(), beta_.end());
  if (tail_) {
    c.resize(static_cast<std::size_t>(tail_->exponent) + 1, 0.0);
    c.back() = tail_->coefficient;
  }
  return c;
}

double RationalModel::numerator_at(double t) const {
  double v = horner(alpha_, t);
  if (tail_) v += tail_->coefficient * std::pow(t, tail_->exponent);
  return v;
}

double RationalModel::denominator_at(double t) const {
  double v = horner(beta_, t) * t + 1.0;
  if (tail_) v += tail_->coefficient * std::pow(t, tail_->exponent);
  return v;
}

double eval(const RationalModel& model, double x) {
  const double t = model.substitute(x);
  const double den = model.denominator_at(t);
  if (!(std::abs(den) > kDenominatorTolerance))
    throw Error(ErrorKind::DenominatorZero, "denominator vanishes", x);
  return model.numerator_at(t) / den;
}

double derivative(const RationalModel& model, double x) {
  const double t = model.substitute(x);
  const double den = model.denominator_at(t);
  if (!(std::abs(den) > kDenominatorTolerance))
    throw Error(ErrorKind::DenominatorZero, "denominator vanishes", x);
  const auto num_c = model.numerator_coefficients();
  const auto den_c = model.denominator_coefficients();
  const double num = horner(num_c, t);
  const double dnum = horner(derivative_coefficients(num_c), t);
  const double dden = horner(derivative_coefficients(den_c), t);
  double d = (dnum * den - num * dden) / (den * den);
  if (model.q() != 1.0) d *= model.q() * std::pow(x, model.q() - 1.0);
  return d;
}

std::vector<double> taylor_coefficients(const RationalModel& model, int k) {
  require_plain(model, "taylor_coefficients");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  const auto num = model.numerator_coefficients();
  const auto den = model.denominator_coefficients();
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    double s = i < num.size() ? num[i] : 0.0;
    for (std::size_t j = 1; j <= i && j < den.size(); ++j) s -= den[j] * c[i - j];
    c[i] = s;
  }
  return c;
}

RationalModel add(const RationalModel& f, const RationalModel& g) {
  require_plain(f, "add");
  require_plain(g, "add");
  if (f.tail() || g.tail())
    throw Error(ErrorKind::InvalidArgument, "add does not accept tail models");
  const auto pf = f.numerator_coefficients();
  const auto qf = f.denominator_coefficients();
  const auto pg = g.numerator_coefficients();
  const auto qg = g.denominator_coefficients();

  auto left = poly_multiply(pf, qg);
  auto right = poly_multiply(pg, qf);
  std::vector<double> num(std::max(left.size(), right.size()), 0.0);
  for (std::size_t i = 0; i < left.size(); ++i) num[i] += left[i];
  for (std::size_t i = 0; i < right.size(); ++i) num[i] += right[i];
  auto den = poly_multiply(qf, qg);

  const double scale = den.front();
  if (scale == 0.0)
    throw Error(ErrorKind::NormalizationImpossible,
                "combined denominator has zero constant term");
  for (double& v : num) v /= scale;
  for (double& v : den) v /= scale;
  trim_trailing_zeros(num, 1);
  trim_trailing_zeros(den, 1);
  return RationalModel(std::move(num), std::vector<double>(den.begin() + 1, den.end()));
}

PoleReport pole_scan(const RationalModel& model, double lo, double hi,
                     int points) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "points must be >= 2");
  if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "degenerate interval");

  PoleReport report;
  report.scan_lo = lo;
  report.scan_hi = hi;
  report.scan_points = points;
  report.min_abs_denominator = std::numeric_limits<double>::infinity();

  auto q_at = [&](double x) { return model.denominator_at(model.substitute(x)); };
  auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };

  const double step = (hi - lo) / (points - 1);
  auto grid = [&](int i) { return i == points - 1 ? hi : lo + step * i; };

  double prev_x = grid(0);
  double prev_v = q_at(prev_x);
  report.min_abs_denominator = std::abs(prev_v);
  if (prev_v == 0.0) report.sign_changes.push_back({prev_x, prev_x, prev_x});

  for (int i = 1; i < points; ++i) {
    const double x = grid(i);
    const double v = q_at(x);
    report.min_abs_denominator = std::min(report.min_abs_denominator, std::abs(v));
    if (v == 0.0) {
      report.sign_changes.push_back({x, x, x});
    } else if (sign(prev_v) * sign(v) < 0) {
      auto [a, b] = boost::math::tools::bisect(
          q_at, prev_x, x,
          [](double l, double r) { return std::abs(r - l) <= 1e-12; });
      report.sign_changes.push_back({prev_x, x, 0.5 * (a + b)});
    }
    prev_x = x;
    prev_v = v;
  }
  return report;
}

}  // namespace padereg
