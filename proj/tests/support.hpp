#pragma once

#include <cmath>
#include <vector>

#include "padereg/padereg.hpp"

namespace padereg::testing {

inline Dataset table1() { return read_points(PADEREG_DATA_DIR "/table1.csv"); }

// Models as printed in the reference case studies.
inline RationalModel sinusoid_rational() {
  return RationalModel({0.0, 6.285, -3.396, -37.28, 17.36, 76.98, -83.92, 23.98, 0.0},
                       {-0.5305, 0.5305}, std::nullopt, 1.0, ZeroMask{{0, 8}, {}});
}

inline RationalModel resonance_fit() {
  return RationalModel({4.824, 0.5408, 14.21, 4.379}, {-1.023, -1.029, 0.6705, 6.049});
}

inline RationalModel table1_unregularized() {
  return RationalModel({0.0, -2.79, 24.1, -72.2, 107.0, -76.9, 22.0}, {}, TailTerm{12, -1.03},
                       1.0, ZeroMask{{0}, {}});
}

inline RationalModel table1_regularized() {
  return RationalModel({0.0, 0.152, 0.579, 0.234, -0.136, -0.241, 0.0953}, {},
                       TailTerm{12, 0.00307}, 1.0, ZeroMask{{0}, {}});
}

inline FitConfig table1_config(double lambda) {
  FitConfig c = FitConfig::cdf(6, 0, 12);
  c.lambda = lambda;
  c.der_grid = DerivativeGridSpec{0.0, 2.0, 40};
  c.pole_interval = std::pair{0.0, 2.0};
  return c;
}

inline Dataset sample(double (*f)(double), const std::vector<double>& xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, f(x)});
  return Dataset(std::move(pts), f);
}

}  // namespace padereg::testing

namespace padereg::testing {

/// Least squares of the linearized residuals by brute-force normal equations
/// in long double; columns follow free_coefficients().
inline std::vector<double> reference_solution(const Dataset& data, const FitConfig& cfg) {
  const auto cols = free_coefficients(cfg.n, cfg.m, cfg.tail_l, cfg.zero_mask);
  const std::size_t p = cols.size();
  std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
  for (const auto& pt : data.points()) {
    const long double t = std::pow(static_cast<long double>(pt.x), static_cast<long double>(cfg.q));
    const long double f = pt.f;
    std::vector<long double> g;
    for (const auto& c : cols) {
      const long double tp = std::pow(t, static_cast<long double>(c.index));
      if (c.kind == CoefficientKind::Alpha) g.push_back(tp);
      else if (c.kind == CoefficientKind::Beta) g.push_back(-f * tp);
      else g.push_back((1.0L - f) * tp);
    }
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) a[i][j] += g[i] * g[j];
      a[i][p] += g[i] * f;
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    a[i][i] += cols[i].kind == CoefficientKind::Beta ? cfg.lambda1 : cfg.lambda;
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = c + 1; r < p; ++r) {
      const long double k = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= p; ++j) a[r][j] -= k * a[c][j];
    }
  }
  std::vector<long double> x(p);
  for (std::size_t c = p; c-- > 0;) {
    long double s = a[c][p];
    for (std::size_t j = c + 1; j < p; ++j) s -= a[c][j] * x[j];
    x[c] = s / a[c][c];
  }
  return {x.begin(), x.end()};
}

inline std::vector<double> free_values(const RationalModel& model, const FitConfig& cfg) {
  std::vector<double> out;
  for (const auto& c : free_coefficients(cfg.n, cfg.m, cfg.tail_l, cfg.zero_mask)) {
    if (c.kind == CoefficientKind::Alpha) out.push_back(model.alpha()[c.index]);
    else if (c.kind == CoefficientKind::Beta) out.push_back(model.beta()[c.index - 1]);
    else out.push_back(model.tail()->coefficient);
  }
  return out;
}

}  // namespace padereg::testing
