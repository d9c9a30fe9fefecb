#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "padereg/dataset.hpp"

namespace padereg {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double> multiply(std::span<const double> v) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class CoefficientKind { Alpha, Beta, Tail };

/// Identity of one unknown: alpha_i, beta_j, or the shared tail at power l.
struct CoefficientId {
  CoefficientKind kind = CoefficientKind::Alpha;
  int index = 0;

  friend bool operator==(const CoefficientId&, const CoefficientId&) = default;
};

/// Unknowns of a model layout in column order: free alphas, free betas, tail.
std::vector<CoefficientId> free_coefficients(int n, int m,
                                             const std::optional<int>& tail_l,
                                             const ZeroMask& mask);

struct LinearSystem {
  Matrix a;
  std::vector<double> b;
  std::vector<CoefficientId> column_map;
};

struct SolveDiagnostics {
  double pivot_min = 0.0;
  double pivot_max = 0.0;
  double residual_inf = 0.0;
  /// pivot_min / pivot_max < 1e-12.
  bool condition_flag = false;
};

struct Solution {
  std::vector<double> coefficients;
  SolveDiagnostics diagnostics;
};

/// Normal equations G^T G theta = G^T F of the linearized residuals
///   sum_i alpha_i t^i - F sum_j beta_j t^j + alpha_l (1 - F) t^l - F.
/// Abscissae are used as given (apply any x^q substitution first).
LinearSystem assemble_normal_system(const Dataset& data, const FitConfig& config);

/// Adds lambda to alpha/tail diagonals and lambda1 to beta diagonals.
LinearSystem apply_regularization(LinearSystem system, double lambda,
                                  double lambda1);

/// Gaussian elimination with partial pivoting. Square systems are solved
/// directly; taller systems must be consistent (every surplus row satisfied)
/// or InconsistentSystem is thrown.
Solution solve_dense(const LinearSystem& system);

/// Row form of R(x_k) = F_k for reference points. Throws CountMismatch when
/// there are fewer points than unknowns.
LinearSystem assemble_interpolation_system(const Dataset& refpoints, int n, int m,
                                           const ZeroMask& mask = {});

/// Rebuilds a model from a solution vector laid out by `column_map`.
RationalModel model_from_solution(std::span<const double> theta,
                                  std::span<const CoefficientId> column_map,
                                  int n, int m, const std::optional<int>& tail_l,
                                  double q, const ZeroMask& mask);

}  // namespace padereg
