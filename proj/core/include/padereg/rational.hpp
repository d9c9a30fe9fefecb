#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

namespace padereg {

/// Coefficient shared between numerator and denominator at power `exponent`.
///
/// With this term present the model reads
///   R(t) = (sum_i alpha_i t^i + c t^l) / (1 + sum_j beta_j t^j + c t^l),
/// which tends to 1 as t grows whenever l exceeds both n and m.
struct TailTerm {
  int exponent = 0;
  double coefficient = 0.0;

  friend bool operator==(const TailTerm&, const TailTerm&) = default;
};

/// Coefficient indices pinned to zero. `beta` indices start at 1.
struct ZeroMask {
  std::set<int> alpha;
  std::set<int> beta;

  bool masks_alpha(int i) const { return alpha.contains(i); }
  bool masks_beta(int j) const { return beta.contains(j); }
  bool empty() const { return alpha.empty() && beta.empty(); }

  friend bool operator==(const ZeroMask&, const ZeroMask&) = default;
};

/// Rational function P_n(t) / Q_m(t) evaluated in the substituted
/// coordinate t = x^q. The denominator constant term is fixed at 1 and is
/// never stored.
class RationalModel {
 public:
  /// `alpha` holds alpha_0..alpha_n (must be non-empty); `beta` holds
  /// beta_1..beta_m. Throws Error(InvalidModel) when an invariant fails.
  explicit RationalModel(std::vector<double> alpha,
                         std::vector<double> beta = {},
                         std::optional<TailTerm> tail = std::nullopt,
                         double q = 1.0, ZeroMask zero_mask = {});

  static RationalModel constant(double value);

  const std::vector<double>& alpha() const noexcept { return alpha_; }
  const std::vector<double>& beta() const noexcept { return beta_; }
  const std::optional<TailTerm>& tail() const noexcept { return tail_; }
  double q() const noexcept { return q_; }
  const ZeroMask& zero_mask() const noexcept { return zero_mask_; }

  int n() const noexcept { return static_cast<int>(alpha_.size()) - 1; }
  int m() const noexcept { return static_cast<int>(beta_.size()); }

  /// Substituted coordinate t = x^q.
  double substitute(double x) const;

  /// Full numerator power coefficients in t, tail included.
  std::vector<double> numerator_coefficients() const;
  /// Full denominator power coefficients in t, leading 1 and tail included.
  std::vector<double> denominator_coefficients() const;

  double numerator_at(double t) const;
  double denominator_at(double t) const;

  friend bool operator==(const RationalModel&, const RationalModel&) = default;

 private:
  std::vector<double> alpha_;
  std::vector<double> beta_;
  std::optional<TailTerm> tail_;
  double q_ = 1.0;
  ZeroMask zero_mask_;
};

inline constexpr double kDenominatorTolerance = 1e-300;

/// R(x) = P(x^q) / Q(x^q), Horner in t. Throws DenominatorZero.
double eval(const RationalModel& model, double x);

/// dR/dx by the quotient rule, chained through t = x^q.
double derivative(const RationalModel& model, double x);

/// First k+1 Maclaurin coefficients of R (q must be 1).
std::vector<double> taylor_coefficients(const RationalModel& model, int k);

/// Canonical form of f + g with denominator constant term rescaled to 1.
RationalModel add(const RationalModel& f, const RationalModel& g);

struct SignChange {
  double lo = 0.0;
  double hi = 0.0;
  double root = 0.0;
};

struct PoleReport {
  std::vector<SignChange> sign_changes;
  double min_abs_denominator = 0.0;
  double scan_lo = 0.0;
  double scan_hi = 0.0;
  int scan_points = 0;

  std::size_t count() const noexcept { return sign_changes.size(); }
  bool empty() const noexcept { return sign_changes.empty(); }
};

/// Scans the denominator on `points` uniform samples over [lo, hi] and
/// refines each sign change by bisection to 1e-12.
PoleReport pole_scan(const RationalModel& model, double lo, double hi,
                     int points);

/// Polynomial helpers on ascending power coefficients.
double horner(std::span<const double> coeffs, double t);
std::vector<double> poly_multiply(std::span<const double> a,
                                  std::span<const double> b);

}  // namespace padereg
