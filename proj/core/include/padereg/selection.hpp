#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padereg/diagnostics.hpp"
#include "padereg/error.hpp"
#include "padereg/fitting.hpp"

namespace padereg {

struct SearchSpace {
  int n_lo = 0;
  int n_hi = 0;
  int m_lo = 0;
  int m_hi = 0;
  /// Tail exponents to try; empty means no tail term.
  std::vector<int> l_candidates;
  std::vector<double> q_grid{1.0};

  void validate() const;
  std::size_t cell_count() const;
};

/// One evaluated cell of a search. `report` is empty when the cell was
/// infeasible or its fit failed; `error` then names the reason.
struct Candidate {
  int n = 0;
  int m = 0;
  std::optional<int> l;
  double q = 1.0;
  std::optional<FitReport> report;
  std::optional<ErrorKind> error;
  std::string message;

  bool ok() const noexcept { return report.has_value(); }
  bool has_pole() const noexcept { return report && !report->poles.empty(); }
};

struct SearchResult {
  std::vector<Candidate> candidates;
  std::size_t best_index = 0;

  const Candidate& best_candidate() const { return candidates.at(best_index); }
  const FitReport& best() const { return *candidates.at(best_index).report; }
};

/// Ranking used by every search: pole-free before pole-carrying, then
/// smaller S, then smaller n + m, then smaller m. Returns true if `a`
/// ranks strictly before `b`.
bool ranks_before(const Candidate& a, const Candidate& b);

/// Fits every (n, m, l, q) cell with the weights and mask of `base`
/// (mask indices outside a cell's orders are ignored).
/// Throws NoFeasibleModel when no cell produced a fit.
SearchResult grid_search(const Dataset& data, const SearchSpace& space,
                         const FitConfig& base = {});

/// All n + m + 1 = L splits through the reference points, scored on
/// `evaluation`. Singular splits are reported, not thrown.
SearchResult interpolation_search(const Dataset& refpoints, const Dataset& evaluation,
                                  const ZeroMask& zero_mask = {});

struct LambdaRow {
  double lambda = 0.0;
  double d = 0.0;
  double d_der = 0.0;
  int pole_count = 0;
  std::optional<ErrorKind> error;
};

struct LambdaSweep {
  std::vector<LambdaRow> rows;
  std::size_t chosen = 0;
};

/// One regularized fit per lambda; poles are counted on the derivative
/// interval unless the config names its own pole interval.
LambdaSweep lambda_sweep(const Dataset& data, const FitConfig& config,
                         std::span<const double> grid,
                         const DerivativeGridSpec& der_grid);

/// Index of the plateau-onset row: smallest lambda that is pole-free and
/// whose D_der is within `rel_tol` of the next row's. Falls back to the
/// largest lambda.
std::size_t choose_lambda_index(const LambdaSweep& sweep, double rel_tol = 0.05);
double choose_lambda(const LambdaSweep& sweep, double rel_tol = 0.05);

struct QSearchResult {
  double best_q = 1.0;
  FitReport report;
  std::vector<Candidate> candidates;
};

/// One fit per q; best by S.
QSearchResult q_search(const Dataset& data, const FitConfig& config,
                       std::span<const double> q_grid);

struct Lambda1Row {
  double q = 1.0;
  double lambda1 = 0.0;
  double d = 0.0;
  double d_der = 0.0;
  int pole_count = 0;
  bool accepted = false;
  std::optional<ErrorKind> error;
};

struct Lambda1Tuning {
  double q = 1.0;
  double lambda1 = 0.0;
  FitReport report;
  std::vector<Lambda1Row> rows;
};

/// Coarse-to-fine lambda1 grid from 1 downwards.
std::vector<double> default_lambda1_grid();

/// Denominator-penalty tuning: every (q, lambda1) fit that is pole-free on
/// the derivative interval and keeps D_der within `tolerance` (relative) of
/// `baseline_d_der` is admissible; the admissible fit with smallest S wins.
/// Throws NoFeasibleModel when nothing is admissible.
Lambda1Tuning tune_lambda1(const Dataset& data, const FitConfig& config,
                           std::span<const double> q_grid,
                           std::span<const double> lambda1_grid,
                           const DerivativeGridSpec& der_grid,
                           double baseline_d_der, double tolerance = 0.10);

}  // namespace padereg
