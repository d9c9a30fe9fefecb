#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace padereg;
using namespace padereg::testing;

namespace {

double one_one(double x) { return (2.0 + x) / (1.0 + 0.3 * x); }

SearchSpace orders(int n_lo, int n_hi, int m_lo, int m_hi) {
  SearchSpace s;
  s.n_lo = n_lo;
  s.n_hi = n_hi;
  s.m_lo = m_lo;
  s.m_hi = m_hi;
  return s;
}

LambdaSweep synthetic_sweep(std::vector<double> d_der, std::vector<int> poles = {}) {
  LambdaSweep s;
  for (std::size_t i = 0; i < d_der.size(); ++i) {
    LambdaRow r;
    r.lambda = 0.001 * static_cast<double>(i);
    r.d_der = d_der[i];
    r.pole_count = poles.empty() ? 0 : poles[i];
    s.rows.push_back(r);
  }
  return s;
}

const std::vector<double> kTable1Grid{0.0, 0.0005, 0.001, 0.002, 0.0025, 0.005, 0.01};

}  // namespace

TEST(GridSearch, ExactRationalFoundExactly) {
  const auto data = sample(one_one, uniform_grid(0.0, 2.0, 10));
  const auto result = grid_search(data, orders(0, 3, 0, 3));
  double f2 = 0.0;
  for (double f : data.fs()) f2 += f * f;
  EXPECT_LE(result.best().s, 1e-16 * f2);
  EXPECT_GE(result.best().model.n(), 1);
  EXPECT_GE(result.best().model.m(), 1);
  EXPECT_EQ(result.candidates.size(), 16u);
}

TEST(GridSearch, Table1TailFormWinner) {
  SearchSpace space = orders(2, 8, 0, 2);
  space.l_candidates = {8, 10, 12};
  FitConfig base;
  base.zero_mask.alpha = {0};
  const auto result = grid_search(table1(), space, base);
  EXPECT_EQ(result.candidates.size(), space.cell_count());
  EXPECT_LE(result.best().d, 0.032);
}

TEST(GridSearch, BestDominatesAndPoleFreePreferred) {
  const auto data = sample_noisy(resonance, uniform_grid(-1.0, 1.0, 20), {0.0, 0.05, 3});
  const auto result = grid_search(data, orders(0, 5, 0, 5));
  const auto& best = result.best_candidate();
  for (const auto& c : result.candidates) {
    if (!c.ok()) continue;
    if (!c.has_pole()) {
      EXPECT_FALSE(best.has_pole());
      EXPECT_LE(best.report->s, c.report->s);
    }
  }
}

TEST(GridSearch, InfeasibleCellsAreReportedNotThrown) {
  const auto data = table1();
  SearchSpace space = orders(0, 9, 0, 3);
  const auto result = grid_search(data, space);
  EXPECT_EQ(result.candidates.size(), space.cell_count());
  bool saw_insufficient = false;
  for (const auto& c : result.candidates)
    if (c.error == ErrorKind::InsufficientData) saw_insufficient = true;
  EXPECT_TRUE(saw_insufficient);
}

TEST(GridSearch, TieBreakPrefersFewerCoefficients) {
  Candidate a{2, 1, std::nullopt, 1.0, FitReport{}, std::nullopt, {}};
  Candidate b{1, 1, std::nullopt, 1.0, FitReport{}, std::nullopt, {}};
  Candidate c{0, 2, std::nullopt, 1.0, FitReport{}, std::nullopt, {}};
  EXPECT_TRUE(ranks_before(b, a));
  EXPECT_TRUE(ranks_before(b, c));
  EXPECT_TRUE(ranks_before(c, a));
  Candidate d{2, 0, std::nullopt, 1.0, FitReport{}, std::nullopt, {}};
  EXPECT_TRUE(ranks_before(d, c));
}

TEST(GridSearch, Deterministic) {
  const auto data = sample_noisy(resonance, uniform_grid(-1.0, 1.0, 20), {0.0, 0.05, 8});
  const auto a = grid_search(data, orders(0, 4, 0, 4));
  const auto b = grid_search(data, orders(0, 4, 0, 4));
  EXPECT_EQ(a.best_index, b.best_index);
  EXPECT_EQ(a.best().model, b.best().model);
}

TEST(GridSearch, RejectsBadSpace) {
  EXPECT_THROW(grid_search(table1(), orders(3, 1, 0, 0)), Error);
  SearchSpace s = orders(0, 1, 0, 1);
  s.q_grid = {0.0};
  EXPECT_THROW(grid_search(table1(), s), Error);
}

TEST(InterpolationSearch, ProbesEverySplit) {
  const auto grid = sample(sine_2pi, uniform_grid(0.0, 1.0, 20));
  std::vector<Point> refs;
  for (std::size_t k = 0; k < grid.size(); k += 2) refs.push_back(grid.points()[k]);
  const auto result = interpolation_search(Dataset(refs), grid);
  EXPECT_EQ(result.candidates.size(), 11u);
  for (const auto& c : result.candidates) EXPECT_EQ(c.n + c.m + 1, 11);
  EXPECT_LE(result.best().d, 1e-4);
}

TEST(LambdaSweep, Table1Plateau) {
  const auto sweep =
      lambda_sweep(table1(), table1_config(0.0), kTable1Grid, DerivativeGridSpec{0.0, 2.0, 40});
  ASSERT_EQ(sweep.rows.size(), kTable1Grid.size());
  EXPECT_GE(sweep.rows[0].d_der / sweep.rows[4].d_der, 5.0);
  for (std::size_t i = 4; i + 1 < sweep.rows.size(); ++i)
    EXPECT_LE(sweep.rows[i].d, sweep.rows[i + 1].d);
  const double chosen = choose_lambda(sweep);
  EXPECT_GE(chosen, 0.002);
  EXPECT_LE(chosen, 0.005);
  EXPECT_EQ(sweep.rows[sweep.chosen].lambda, chosen);
}

TEST(LambdaSweep, RowsMatchIndependentFits) {
  const DerivativeGridSpec der{0.0, 2.0, 40};
  const auto sweep = lambda_sweep(table1(), table1_config(0.0), kTable1Grid, der);
  for (const auto& row : sweep.rows) {
    const auto rep = fit_regularized(table1(), table1_config(row.lambda));
    EXPECT_EQ(row.d, rep.d);
    EXPECT_EQ(row.d_der, *rep.d_der);
    EXPECT_EQ(static_cast<std::size_t>(row.pole_count), rep.poles.count());
  }
}

TEST(LambdaSweep, ExactFitIsFlat) {
  const auto data = sample(one_one, uniform_grid(0.0, 2.0, 10));
  FitConfig cfg;
  cfg.n = 1;
  cfg.m = 1;
  const std::vector<double> grid{0.0, 1e-10, 1e-9, 1e-8};
  const auto sweep = lambda_sweep(data, cfg, grid, DerivativeGridSpec{0.0, 2.0, 40});
  for (const auto& r : sweep.rows)
    EXPECT_NEAR(r.d_der, sweep.rows[0].d_der, 0.01 * sweep.rows[0].d_der);
  EXPECT_EQ(choose_lambda(sweep), 0.0);
}

TEST(LambdaSweep, RejectsBadGrids) {
  const DerivativeGridSpec der{0.0, 2.0, 40};
  const std::vector<double> descending{0.01, 0.001};
  const std::vector<double> negative{-1.0, 0.0};
  const std::vector<double> empty;
  EXPECT_THROW(lambda_sweep(table1(), table1_config(0), descending, der), Error);
  EXPECT_THROW(lambda_sweep(table1(), table1_config(0), negative, der), Error);
  EXPECT_THROW(lambda_sweep(table1(), table1_config(0), empty, der), Error);
}

TEST(ChooseLambda, FlatPicksSmallestPoleFree) {
  EXPECT_EQ(choose_lambda_index(synthetic_sweep({1.0, 1.0, 1.0, 1.0}, {1, 0, 0, 0})), 1u);
}

TEST(ChooseLambda, NoPlateauFallsBackToLargest) {
  EXPECT_EQ(choose_lambda_index(synthetic_sweep({100.0, 50.0, 20.0, 8.0, 3.0})), 4u);
}

TEST(ChooseLambda, MonotoneInTolerance) {
  const auto sweep = synthetic_sweep({10.0, 6.0, 4.0, 3.5, 3.3, 3.25, 3.24});
  std::size_t prev = sweep.rows.size();
  for (double tol : {0.001, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    const std::size_t idx = choose_lambda_index(sweep, tol);
    EXPECT_LE(idx, prev);
    prev = idx;
  }
}

TEST(ChooseLambda, NeedsTwoRows) {
  try {
    choose_lambda(synthetic_sweep({1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySweep);
  }
}

TEST(QSearch, SingleValueIsPlainFit) {
  FitConfig cfg;
  cfg.n = 3;
  const std::vector<double> grid{1.0};
  const auto qs = q_search(table1(), cfg, grid);
  EXPECT_EQ(qs.report.model, fit_linearized(table1(), cfg).model);
  EXPECT_EQ(qs.best_q, 1.0);
}

TEST(QSearch, FindsExactSubstitution) {
  const auto data = sample([](double x) { return std::sqrt(x) * (1 - x / 2); }, uniform_grid(0.0, 2.0, 10));
  FitConfig cfg;
  cfg.n = 3;
  const std::vector<double> grid{0.5, 1.0};
  const auto qs = q_search(data, cfg, grid);
  EXPECT_EQ(qs.best_q, 0.5);
  EXPECT_LE(qs.report.s, 1e-20);
}

TEST(QSearch, NoisySqrtExpPrefersSmallQ) {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.5 + 0.05 * i);
  FitConfig cfg;
  cfg.n = 3;
  int in_range = 0;
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = sample_noisy(sqrt_exp, uniform_grid(0.0, 2.0, 10), {0.0, 0.1, seed});
    const auto qs = q_search(data, cfg, grid);
    in_range += qs.best_q <= 0.8 + 1e-12;
    improved += *qs.report.d1 < *qs.report.d0;
  }
  EXPECT_GE(in_range, 16);
  EXPECT_GE(improved, 16);
}

TEST(QSearch, FractionalQNeedsNonNegativeData) {
  FitConfig cfg;
  cfg.n = 1;
  const std::vector<double> grid{0.5};
  EXPECT_THROW(q_search(Dataset({{-1, 0}, {0, 1}, {1, 2}}), cfg, grid), Error);
}

TEST(TuneLambda1, AcceptedRowsRespectRules) {
  const auto data = sample_noisy(sqrt_exp, uniform_grid(0.0, 2.0, 10), {0.0, 0.1, 2});
  const DerivativeGridSpec der{0.0, 2.0, 100};
  FitConfig poly;
  poly.n = 3;
  poly.q = 0.65;
  poly.der_grid = der;
  const double baseline = *fit_regularized(data, poly).d_der;
  FitConfig rat;
  rat.n = 3;
  rat.m = 6;
  rat.zero_mask.alpha = {0};
  const std::vector<double> qs{0.6, 0.65, 0.7};
  const auto l1 = default_lambda1_grid();
  const auto tuned = tune_lambda1(data, rat, qs, l1, der, baseline);
  EXPECT_EQ(tuned.rows.size(), qs.size() * l1.size());
  EXPECT_TRUE(tuned.report.poles.empty());
  EXPECT_LE(std::abs(*tuned.report.d_der - baseline), 0.1 * baseline);
  for (const auto& r : tuned.rows)
    if (r.accepted) {
      EXPECT_GE(r.d, 0.0);
      EXPECT_EQ(r.pole_count, 0);
    }
  EXPECT_EQ(tuned.report.config.lambda1, tuned.lambda1);
  EXPECT_EQ(tuned.report.config.q, tuned.q);
}
