#include "padereg/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "padereg/error.hpp"
#include "padereg/linsys.hpp"

namespace padereg {

namespace {

ZeroMask restrict_mask(const ZeroMask& mask, int n, int m) {
  ZeroMask out;
  for (int i : mask.alpha)
    if (i >= 0 && i <= n) out.alpha.insert(i);
  for (int j : mask.beta)
    if (j >= 1 && j <= m) out.beta.insert(j);
  return out;
}

template <typename Fn>
void run_cell(Candidate& cell, Fn&& fit) {
  try {
    cell.report = fit();
  } catch (const Error& e) {
    cell.error = e.kind();
    cell.message = e.what();
  }
}

std::size_t pick_best(const std::vector<Candidate>& cells) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].ok()) continue;
    if (!best || ranks_before(cells[i], cells[*best])) best = i;
  }
  if (!best) throw Error(ErrorKind::NoFeasibleModel, "no candidate could be fitted");
  return *best;
}

}  // namespace

void SearchSpace::validate() const {
  if (n_lo < 0 || m_lo < 0 || n_hi < n_lo || m_hi < m_lo)
    throw Error(ErrorKind::InvalidArgument, "empty or negative order range");
  if (q_grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty q grid");
  for (double q : q_grid)
    if (!(q > 0.0)) throw Error(ErrorKind::InvalidArgument, "q must be > 0");
}

std::size_t SearchSpace::cell_count() const {
  const std::size_t ls = l_candidates.empty() ? 1 : l_candidates.size();
  return static_cast<std::size_t>(n_hi - n_lo + 1) *
         static_cast<std::size_t>(m_hi - m_lo + 1) * ls * q_grid.size();
}

bool ranks_before(const Candidate& a, const Candidate& b) {
  const auto key = [](const Candidate& c) {
    return std::make_tuple(c.has_pole(), c.report->s, c.n + c.m, c.m,
                           c.l.value_or(0), c.q);
  };
  return key(a) < key(b);
}

SearchResult grid_search(const Dataset& data, const SearchSpace& space,
                         const FitConfig& base) {
  space.validate();
  SearchResult result;
  result.candidates.reserve(space.cell_count());
  std::vector<std::optional<int>> tails;
  if (space.l_candidates.empty()) tails.emplace_back(std::nullopt);
  for (int l : space.l_candidates) tails.emplace_back(l);

  for (double q : space.q_grid) {
    for (int n = space.n_lo; n <= space.n_hi; ++n) {
      for (int m = space.m_lo; m <= space.m_hi; ++m) {
        for (const auto& l : tails) {
          Candidate cell{n, m, l, q, std::nullopt, std::nullopt, {}};
          FitConfig cfg = base;
          cfg.n = n;
          cfg.m = m;
          cfg.tail_l = l;
          cfg.q = q;
          cfg.zero_mask = restrict_mask(base.zero_mask, n, m);
          if (l && (*l <= n || *l <= m)) {
            cell.error = ErrorKind::InvalidArgument;
            cell.message = "tail exponent must exceed n and m";
          } else if (free_coefficients(n, m, l, cfg.zero_mask).size() > data.size()) {
            cell.error = ErrorKind::InsufficientData;
            cell.message = "more free coefficients than data points";
          } else {
            run_cell(cell, [&] { return fit_linearized(data, cfg); });
          }
          result.candidates.push_back(std::move(cell));
        }
      }
    }
  }
  result.best_index = pick_best(result.candidates);
  return result;
}

SearchResult interpolation_search(const Dataset& refpoints, const Dataset& evaluation,
                                  const ZeroMask& zero_mask) {
  if (refpoints.empty()) throw Error(ErrorKind::EmptyInput, "no reference points");
  const int total = static_cast<int>(refpoints.size()) - 1 +
                    static_cast<int>(zero_mask.alpha.size() + zero_mask.beta.size());
  SearchResult result;
  for (int n = total; n >= 0; --n) {
    const int m = total - n;
    const ZeroMask mask = restrict_mask(zero_mask, n, m);
    Candidate cell{n, m, std::nullopt, 1.0, std::nullopt, std::nullopt, {}};
    if (free_coefficients(n, m, std::nullopt, mask).size() != refpoints.size()) {
      cell.error = ErrorKind::CountMismatch;
      cell.message = "mask does not fit this split";
    } else {
      run_cell(cell, [&] { return interpolate_reference(refpoints, n, m, mask, &evaluation); });
    }
    result.candidates.push_back(std::move(cell));
  }
  result.best_index = pick_best(result.candidates);
  return result;
}

LambdaSweep lambda_sweep(const Dataset& data, const FitConfig& config,
                         std::span<const double> grid,
                         const DerivativeGridSpec& der_grid) {
  if (grid.empty()) throw Error(ErrorKind::EmptySweep, "empty lambda grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) throw Error(ErrorKind::NegativeWeight, "lambda must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "lambda grid must be strictly ascending");
  }
  LambdaSweep sweep;
  for (double lambda : grid) {
    FitConfig cfg = config;
    cfg.lambda = lambda;
    cfg.der_grid = der_grid;
    if (!cfg.pole_interval) cfg.pole_interval = std::pair{der_grid.a, der_grid.b};
    LambdaRow row;
    row.lambda = lambda;
    try {
      const FitReport rep = fit_regularized(data, cfg);
      row.d = rep.d;
      row.d_der = rep.d_der.value_or(std::numeric_limits<double>::quiet_NaN());
      row.pole_count = static_cast<int>(rep.poles.count());
    } catch (const Error& e) {
      row.error = e.kind();
      row.d = row.d_der = std::numeric_limits<double>::quiet_NaN();
    }
    sweep.rows.push_back(row);
  }
  sweep.chosen = sweep.rows.size() >= 2 ? choose_lambda_index(sweep) : 0;
  return sweep;
}

std::size_t choose_lambda_index(const LambdaSweep& sweep, double rel_tol) {
  if (sweep.rows.size() < 2)
    throw Error(ErrorKind::EmptySweep, "need at least two sweep rows");
  for (std::size_t i = 0; i + 1 < sweep.rows.size(); ++i) {
    const auto& row = sweep.rows[i];
    const auto& next = sweep.rows[i + 1];
    if (row.error || next.error || row.pole_count != 0) continue;
    if (!std::isfinite(row.d_der) || !std::isfinite(next.d_der)) continue;
    if (std::abs(row.d_der - next.d_der) < rel_tol * std::abs(next.d_der)) return i;
  }
  return sweep.rows.size() - 1;
}

double choose_lambda(const LambdaSweep& sweep, double rel_tol) {
  return sweep.rows[choose_lambda_index(sweep, rel_tol)].lambda;
}

QSearchResult q_search(const Dataset& data, const FitConfig& config,
                       std::span<const double> q_grid) {
  if (q_grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty q grid");
  for (double q : q_grid) {
    if (!(q > 0.0)) throw Error(ErrorKind::InvalidArgument, "q must be > 0");
    if (std::floor(q) != q)
      for (const auto& p : data.points())
        if (p.x < 0.0)
          throw Error(ErrorKind::NegativeAbscissa,
                      "non-integer q needs non-negative abscissae", p.x);
  }
  QSearchResult result;
  std::optional<std::size_t> best;
  for (double q : q_grid) {
    FitConfig cfg = config;
    cfg.q = q;
    Candidate cell{config.n, config.m, config.tail_l, q, std::nullopt, std::nullopt, {}};
    run_cell(cell, [&] { return fit_linearized(data, cfg); });
    if (cell.ok() && (!best || cell.report->s < result.candidates[*best].report->s))
      best = result.candidates.size();
    result.candidates.push_back(std::move(cell));
  }
  if (!best) throw Error(ErrorKind::NoFeasibleModel, "no q produced a fit");
  result.best_q = result.candidates[*best].q;
  result.report = *result.candidates[*best].report;
  return result;
}

std::vector<double> default_lambda1_grid() {
  return {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.15,
          0.1, 0.07, 0.05, 0.03, 0.02, 0.01};
}

Lambda1Tuning tune_lambda1(const Dataset& data, const FitConfig& config,
                           std::span<const double> q_grid,
                           std::span<const double> lambda1_grid,
                           const DerivativeGridSpec& der_grid,
                           double baseline_d_der, double tolerance) {
  if (q_grid.empty() || lambda1_grid.empty())
    throw Error(ErrorKind::InvalidArgument, "empty tuning grid");
  Lambda1Tuning out;
  std::optional<FitReport> best;
  for (double q : q_grid) {
    for (double lambda1 : lambda1_grid) {
      FitConfig cfg = config;
      cfg.q = q;
      cfg.lambda1 = lambda1;
      cfg.der_grid = der_grid;
      if (!cfg.pole_interval) cfg.pole_interval = std::pair{der_grid.a, der_grid.b};
      Lambda1Row row{q, lambda1, 0.0, 0.0, 0, false, std::nullopt};
      try {
        FitReport rep = fit_regularized(data, cfg);
        row.d = rep.d;
        row.d_der = *rep.d_der;
        row.pole_count = static_cast<int>(rep.poles.count());
        row.accepted = row.pole_count == 0 && std::isfinite(rep.s) &&
                       std::abs(row.d_der - baseline_d_der) <= tolerance * baseline_d_der;
        if (row.accepted && (!best || rep.s < best->s)) {
          best = std::move(rep);
          out.q = q;
          out.lambda1 = lambda1;
        }
      } catch (const Error& e) {
        row.error = e.kind();
      }
      out.rows.push_back(row);
    }
  }
  if (!best) throw Error(ErrorKind::NoFeasibleModel, "no admissible (q, lambda1) pair");
  out.report = std::move(*best);
  return out;
}

}  // namespace padereg
