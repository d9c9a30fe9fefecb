#include "padereg/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "padereg/error.hpp"

namespace padereg {

namespace {

constexpr double kSingularRelative = 1e-14;
constexpr double kConditionRatio = 1e-12;
constexpr double kResidualRelative = 1e-8;

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double column_value(const CoefficientId& id, double t, double f) {
  switch (id.kind) {
    case CoefficientKind::Alpha: return std::pow(t, id.index);
    case CoefficientKind::Beta: return -f * std::pow(t, id.index);
    case CoefficientKind::Tail: return (1.0 - f) * std::pow(t, id.index);
  }
  return 0.0;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::multiply(std::span<const double> v) const {
  if (v.size() != cols_)
    throw Error(ErrorKind::LengthMismatch, "matrix-vector size mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto rw = row(r);
    out[r] = std::inner_product(rw.begin(), rw.end(), v.begin(), 0.0);
  }
  return out;
}

std::vector<CoefficientId> free_coefficients(int n, int m,
                                             const std::optional<int>& tail_l,
                                             const ZeroMask& mask) {
  std::vector<CoefficientId> ids;
  for (int i = 0; i <= n; ++i)
    if (!mask.masks_alpha(i)) ids.push_back({CoefficientKind::Alpha, i});
  for (int j = 1; j <= m; ++j)
    if (!mask.masks_beta(j)) ids.push_back({CoefficientKind::Beta, j});
  if (tail_l) ids.push_back({CoefficientKind::Tail, *tail_l});
  return ids;
}

LinearSystem assemble_normal_system(const Dataset& data, const FitConfig& config) {
  config.validate();
  LinearSystem sys;
  sys.column_map = free_coefficients(config.n, config.m, config.tail_l,
                                     config.zero_mask);
  const std::size_t p = sys.column_map.size();
  if (data.size() < p)
    throw Error(ErrorKind::InsufficientData,
                std::to_string(data.size()) + " points for " + std::to_string(p) +
                    " free coefficients");

  // Design matrix: one row per point.
  Matrix g(data.size(), p);
  std::vector<double> r(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const auto& pt = data.points()[k];
    if (!std::isfinite(pt.x))
      throw Error(ErrorKind::InvalidArgument, "non-finite abscissa", pt.x);
    for (std::size_t c = 0; c < p; ++c) g(k, c) = column_value(sys.column_map[c], pt.x, pt.f);
    r[k] = pt.f;
  }

  sys.a = Matrix(p, p);
  sys.b.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < g.rows(); ++k) s += g(k, i) * g(k, j);
      sys.a(i, j) = s;
      sys.a(j, i) = s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < g.rows(); ++k) s += g(k, i) * r[k];
    sys.b[i] = s;
  }
  return sys;
}

LinearSystem apply_regularization(LinearSystem system, double lambda,
                                  double lambda1) {
  if (lambda < 0.0 || lambda1 < 0.0)
    throw Error(ErrorKind::NegativeWeight, "regularization weights must be >= 0");
  if (lambda == 0.0 && lambda1 == 0.0) return system;
  for (std::size_t c = 0; c < system.column_map.size(); ++c) {
    const bool is_beta = system.column_map[c].kind == CoefficientKind::Beta;
    system.a(c, c) += is_beta ? lambda1 : lambda;
  }
  return system;
}

Solution solve_dense(const LinearSystem& system) {
  const std::size_t rows = system.a.rows();
  const std::size_t cols = system.a.cols();
  if (system.b.size() != rows)
    throw Error(ErrorKind::LengthMismatch, "right-hand side length mismatch");
  if (rows < cols)
    throw Error(ErrorKind::CountMismatch, "fewer equations than unknowns");

  Matrix a = system.a;
  std::vector<double> b = system.b;

  double scale = 0.0;
  for (std::size_t r = 0; r < rows; ++r) scale = std::max(scale, inf_norm(a.row(r)));
  const double threshold = kSingularRelative * scale;

  Solution sol;
  sol.diagnostics.pivot_min = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < rows; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    const double pv = std::abs(a(piv, c));
    if (!(pv >= threshold) || pv == 0.0)
      throw Error(ErrorKind::SingularSystem,
                  "pivot " + std::to_string(pv) + " in column " + std::to_string(c));
    if (piv != c) {
      std::swap_ranges(a.row(c).begin(), a.row(c).end(), a.row(piv).begin());
      std::swap(b[c], b[piv]);
    }
    sol.diagnostics.pivot_min = std::min(sol.diagnostics.pivot_min, pv);
    sol.diagnostics.pivot_max = std::max(sol.diagnostics.pivot_max, pv);
    for (std::size_t r = c + 1; r < rows; ++r) {
      const double factor = a(r, c) / a(c, c);
      if (factor == 0.0) continue;
      for (std::size_t k = c; k < cols; ++k) a(r, k) -= factor * a(c, k);
      b[r] -= factor * b[c];
    }
  }

  std::vector<double> x(cols, 0.0);
  for (std::size_t c = cols; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < cols; ++k) s -= a(c, k) * x[k];
    x[c] = s / a(c, c);
  }
  if (cols == 0) sol.diagnostics.pivot_min = 0.0;

  const auto ax = system.a.multiply(x);
  double resid = 0.0;
  for (std::size_t r = 0; r < rows; ++r) resid = std::max(resid, std::abs(ax[r] - system.b[r]));
  sol.diagnostics.residual_inf = resid;
  sol.diagnostics.condition_flag =
      sol.diagnostics.pivot_max > 0.0 &&
      sol.diagnostics.pivot_min / sol.diagnostics.pivot_max < kConditionRatio;

  if (!(resid <= kResidualRelative * (1.0 + inf_norm(system.b)))) {
    if (rows > cols)
      throw Error(ErrorKind::InconsistentSystem,
                  "surplus equations are not satisfied (residual " +
                      std::to_string(resid) + ")");
    throw Error(ErrorKind::SingularSystem,
                "residual check failed (" + std::to_string(resid) + ")");
  }
  sol.coefficients = std::move(x);
  return sol;
}

LinearSystem assemble_interpolation_system(const Dataset& refpoints, int n, int m,
                                           const ZeroMask& mask) {
  if (n < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "orders must be >= 0");
  LinearSystem sys;
  sys.column_map = free_coefficients(n, m, std::nullopt, mask);
  const std::size_t p = sys.column_map.size();
  const std::size_t l = refpoints.size();
  if (l < p)
    throw Error(ErrorKind::CountMismatch,
                std::to_string(l) + " reference points for " + std::to_string(p) +
                    " free coefficients");

  auto xs = refpoints.xs();
  std::sort(xs.begin(), xs.end());
  if (auto it = std::adjacent_find(xs.begin(), xs.end()); it != xs.end())
    throw Error(ErrorKind::DuplicateAbscissa, "repeated reference abscissa", *it);

  sys.a = Matrix(l, p);
  sys.b.resize(l);
  for (std::size_t k = 0; k < l; ++k) {
    const auto& pt = refpoints.points()[k];
    for (std::size_t c = 0; c < p; ++c) sys.a(k, c) = column_value(sys.column_map[c], pt.x, pt.f);
    sys.b[k] = pt.f;
  }
  return sys;
}

RationalModel model_from_solution(std::span<const double> theta,
                                  std::span<const CoefficientId> column_map,
                                  int n, int m, const std::optional<int>& tail_l,
                                  double q, const ZeroMask& mask) {
  if (theta.size() != column_map.size())
    throw Error(ErrorKind::LengthMismatch, "solution does not match column map");
  std::vector<double> alpha(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> beta(static_cast<std::size_t>(m), 0.0);
  std::optional<TailTerm> tail;
  for (std::size_t c = 0; c < theta.size(); ++c) {
    const auto& id = column_map[c];
    switch (id.kind) {
      case CoefficientKind::Alpha: alpha[static_cast<std::size_t>(id.index)] = theta[c]; break;
      case CoefficientKind::Beta: beta[static_cast<std::size_t>(id.index - 1)] = theta[c]; break;
      case CoefficientKind::Tail: tail = TailTerm{id.index, theta[c]}; break;
    }
  }
  if (tail_l && !tail) tail = TailTerm{*tail_l, 0.0};
  return RationalModel(std::move(alpha), std::move(beta), tail, q, mask);
}

}  // namespace padereg
