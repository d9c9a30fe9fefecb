#include "padereg/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "padereg/diagnostics.hpp"
#include "padereg/error.hpp"

namespace padereg {

namespace {

constexpr int kDefaultDerPoints = 40;

std::pair<double, double> scan_interval(const FitConfig& config, const Dataset& data) {
  if (config.pole_interval) return *config.pole_interval;
  return {data.min_x(), data.max_x()};
}

FitReport finish(RationalModel model, const FitConfig& config,
                 const SolveDiagnostics& diag, const Dataset& data) {
  FitReport report;
  report.model = std::move(model);
  report.config = config;
  report.diagnostics = diag;
  evaluate_errors(report, data);
  if (config.der_grid) {
    try {
      report.d_der = oscillation_measure(report.model, *config.der_grid);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DenominatorZero) throw;
      report.d_der = std::numeric_limits<double>::infinity();
    }
  }
  return report;
}

}  // namespace

void evaluate_errors(FitReport& report, const Dataset& data) {
  const auto& model = report.model;
  const std::size_t count = data.size();
  if (count == 0) throw Error(ErrorKind::EmptyInput, "empty dataset");

  double s = 0.0;
  double s0 = 0.0;
  std::vector<double> fitted;
  fitted.reserve(count);
  report.denominator_zero_at_data = false;
  for (const auto& p : data.points()) {
    const double t = model.substitute(p.x);
    const double num = model.numerator_at(t);
    const double den = model.denominator_at(t);
    const double lin = num - p.f * den;
    s0 += lin * lin;
    if (!(std::abs(den) > kDenominatorTolerance)) {
      report.denominator_zero_at_data = true;
      continue;
    }
    const double r = num / den;
    fitted.push_back(r);
    s += (r - p.f) * (r - p.f);
  }
  const double inf = std::numeric_limits<double>::infinity();
  report.s = report.denominator_zero_at_data ? inf : s;
  report.s0 = s0;
  report.d = std::sqrt(report.s / static_cast<double>(count));

  report.d0.reset();
  report.d1.reset();
  if (data.has_underlying()) {
    std::vector<double> exact;
    exact.reserve(count);
    for (const auto& p : data.points()) exact.push_back(data.underlying()(p.x));
    report.d0 = rmse(exact, data.fs());
    report.d1 = report.denominator_zero_at_data ? inf : rmse(exact, fitted);
  }

  const auto [lo, hi] = scan_interval(report.config, data);
  if (hi > lo) {
    report.poles = pole_scan(model, lo, hi, report.config.pole_points);
  } else {
    report.poles = PoleReport{};
    report.poles.scan_lo = lo;
    report.poles.scan_hi = hi;
    report.poles.min_abs_denominator =
        std::abs(model.denominator_at(model.substitute(lo)));
  }
}

FitReport fit_linearized(const Dataset& data, const FitConfig& config) {
  config.validate();
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "empty dataset");
  const Dataset substituted = data.substituted(config.q);
  LinearSystem sys = assemble_normal_system(substituted, config);
  sys = apply_regularization(std::move(sys), config.lambda, config.lambda1);
  const Solution sol = solve_dense(sys);
  auto model = model_from_solution(sol.coefficients, sys.column_map, config.n,
                                   config.m, config.tail_l, config.q,
                                   config.zero_mask);
  return finish(std::move(model), config, sol.diagnostics, data);
}

FitReport fit_regularized(const Dataset& data, const FitConfig& config) {
  FitConfig cfg = config;
  if (!cfg.der_grid) {
    if (data.empty()) throw Error(ErrorKind::EmptyInput, "empty dataset");
    cfg.der_grid = DerivativeGridSpec{data.min_x(), data.max_x(), kDefaultDerPoints,
                                      GridPlacement::RightEndpoint};
  }
  return fit_linearized(data, cfg);
}

FitReport interpolate_reference(const Dataset& refpoints, int n, int m,
                                const ZeroMask& zero_mask, const Dataset* evaluation) {
  FitConfig config;
  config.n = n;
  config.m = m;
  config.zero_mask = zero_mask;
  config.validate();
  const LinearSystem sys = assemble_interpolation_system(refpoints, n, m, zero_mask);
  const Solution sol = solve_dense(sys);
  auto model = model_from_solution(sol.coefficients, sys.column_map, n, m,
                                   std::nullopt, 1.0, zero_mask);
  return finish(std::move(model), config, sol.diagnostics,
                evaluation ? *evaluation : refpoints);
}

Dataset build_reference_points(const Dataset& data, int group_size,
                               std::span<const Point> anchors) {
  if (group_size < 1) throw Error(ErrorKind::InvalidArgument, "group_size must be >= 1");
  std::vector<Point> rest;
  rest.reserve(data.size());
  for (const auto& p : data.points()) {
    const bool on_anchor = std::any_of(anchors.begin(), anchors.end(),
                                       [&](const Point& a) { return a.x == p.x; });
    if (!on_anchor) rest.push_back(p);
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [](const Point& a, const Point& b) { return a.x < b.x; });

  std::vector<Point> out(anchors.begin(), anchors.end());
  const auto size = static_cast<std::size_t>(group_size);
  for (std::size_t start = 0; start < rest.size(); start += size) {
    const std::size_t end = std::min(rest.size(), start + size);
    double sx = 0.0;
    double sf = 0.0;
    for (std::size_t k = start; k < end; ++k) {
      sx += rest[k].x;
      sf += rest[k].f;
    }
    const auto cnt = static_cast<double>(end - start);
    out.push_back({sx / cnt, sf / cnt});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Point& a, const Point& b) { return a.x < b.x; });
  return Dataset(std::move(out));
}

}  // namespace padereg
