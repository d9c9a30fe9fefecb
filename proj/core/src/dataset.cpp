#include "padereg/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "padereg/error.hpp"

namespace padereg {

Dataset::Dataset(std::vector<Point> points, UnderlyingFunction underlying)
    : points_(std::move(points)), underlying_(std::move(underlying)) {
  for (const auto& p : points_)
    if (!std::isfinite(p.x) || !std::isfinite(p.f))
      throw Error(ErrorKind::InvalidArgument, "non-finite coordinate in dataset");
}

std::vector<double> Dataset::xs() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.x);
  return out;
}

std::vector<double> Dataset::fs() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.f);
  return out;
}

double Dataset::min_x() const {
  if (points_.empty()) throw Error(ErrorKind::EmptyInput, "empty dataset");
  return std::min_element(points_.begin(), points_.end(),
                          [](auto& a, auto& b) { return a.x < b.x; })->x;
}

double Dataset::max_x() const {
  if (points_.empty()) throw Error(ErrorKind::EmptyInput, "empty dataset");
  return std::max_element(points_.begin(), points_.end(),
                          [](auto& a, auto& b) { return a.x < b.x; })->x;
}

Dataset Dataset::substituted(double q) const {
  if (q == 1.0) return Dataset(points_);
  const bool integral = std::floor(q) == q;
  std::vector<Point> out;
  out.reserve(points_.size());
  for (const auto& p : points_) {
    if (!integral && p.x < 0.0)
      throw Error(ErrorKind::NegativeAbscissa,
                  "non-integer q needs non-negative abscissae", p.x);
    out.push_back({std::pow(p.x, q), p.f});
  }
  return Dataset(std::move(out));
}

FitConfig FitConfig::cdf(int n, int m, int l) {
  FitConfig c;
  c.n = n;
  c.m = m;
  c.tail_l = l;
  c.zero_mask.alpha.insert(0);
  return c;
}

void FitConfig::validate() const {
  if (n < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "orders must be >= 0");
  if (tail_l && (*tail_l <= n || *tail_l <= m))
    throw Error(ErrorKind::InvalidArgument, "tail exponent must exceed n and m");
  if (!(q > 0.0)) throw Error(ErrorKind::InvalidArgument, "q must be > 0");
  if (lambda < 0.0 || lambda1 < 0.0)
    throw Error(ErrorKind::NegativeWeight, "regularization weights must be >= 0");
  for (int i : zero_mask.alpha)
    if (i < 0 || i > n) throw Error(ErrorKind::InvalidArgument, "alpha mask out of range");
  for (int j : zero_mask.beta)
    if (j < 1 || j > m) throw Error(ErrorKind::InvalidArgument, "beta mask out of range");
  if (pole_points < 2) throw Error(ErrorKind::InvalidArgument, "pole_points must be >= 2");
}

}  // namespace padereg
