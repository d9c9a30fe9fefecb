// padereg: command-line front end for rational regression.
//
// Exit codes: 0 success, 1 usage or input error, 2 fit error.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "padereg/padereg.hpp"

namespace {

using nlohmann::json;
using namespace padereg;

constexpr int kExitUsage = 1;
constexpr int kExitFit = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("bad number '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::pair<double, double> parse_pair(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("expected 'a,b', got '" + s + "'");
  return {to_double(parts[0]), to_double(parts[1])};
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {to_int(parts[0]), to_int(parts[0])};
  if (parts.size() != 2) throw UsageError("expected 'lo:hi', got '" + s + "'");
  return {to_int(parts[0]), to_int(parts[1])};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(to_int(p));
  return out;
}

/// Either a comma list or lo:hi:step.
std::vector<double> parse_real_list(const std::string& s) {
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError("expected 'lo:hi:step', got '" + s + "'");
    const double lo = to_double(parts[0]);
    const double hi = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || hi < lo) throw UsageError("bad range '" + s + "'");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= count; ++i) out.push_back(lo + step * i);
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_double(p));
  return out;
}

std::vector<Point> parse_anchors(const std::string& s) {
  std::vector<Point> out;
  for (const auto& item : split(s, ';')) {
    const auto [x, y] = parse_pair(item);
    out.push_back({x, y});
  }
  return out;
}

/// a:b:N grid with N subintervals.
std::vector<double> parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw UsageError("expected grid 'a:b:N', got '" + s + "'");
  return uniform_grid(to_double(parts[0]), to_double(parts[1]), to_int(parts[2]));
}

UnderlyingFunction named_function(const std::string& name, double theta, double shape) {
  if (name.empty()) return {};
  if (name == "sin") return sine_2pi;
  if (name == "resonance") return resonance;
  if (name == "sqrtexp") return sqrt_exp;
  if (name == "weibull") {
    WeibullParams w{theta, shape};
    return [w](double x) { return w.cdf(x); };
  }
  throw UsageError("unknown function '" + name + "'");
}

Dataset with_underlying(const Dataset& data, const UnderlyingFunction& f) {
  return f ? Dataset(data.points(), f) : data;
}

/// Flags shared by fit, search and sweep.
struct ModelFlags {
  int n = 0;
  int m = 0;
  std::optional<int> l;
  std::string form = "rational";
  double q = 1.0;
  double lambda = 0.0;
  double lambda1 = 0.0;
  std::string zero_mask;
  std::string zero_mask_beta;
  std::string exact_fn;
  double theta = 1.0;
  double shape = 2.0;
  std::string der_interval;
  int der_points = 40;
  std::string der_placement = "right";
  std::string pole_interval;

  void add_orders(CLI::App* app, bool required) {
    auto* n_opt = app->add_option("--n", n, "Numerator order");
    auto* m_opt = app->add_option("--m", m, "Denominator order");
    if (required) {
      n_opt->required();
      m_opt->required();
    }
    app->add_option("--l", l, "Shared tail exponent (l > n, m)");
  }

  void add_common(CLI::App* app) {
    app->add_option("--form", form, "Model form: rational or cdf (alpha_0 = 0, tail)")
        ->check(CLI::IsMember({"rational", "cdf"}));
    app->add_option("--q", q, "Substitution power x -> x^q");
    app->add_option("--lambda", lambda, "Penalty on numerator coefficients");
    app->add_option("--lambda1", lambda1, "Penalty on denominator coefficients");
    app->add_option("--zero-mask", zero_mask, "Comma list of alpha indices pinned to 0");
    app->add_option("--zero-mask-beta", zero_mask_beta, "Comma list of beta indices pinned to 0");
    app->add_option("--exact-fn", exact_fn, "Known underlying function (sin|resonance|sqrtexp|weibull)");
    app->add_option("--theta", theta, "Weibull scale for --exact-fn weibull");
    app->add_option("--beta", shape, "Weibull shape for --exact-fn weibull");
    app->add_option("--der-interval", der_interval, "Derivative grid interval 'a,b'");
    app->add_option("--der-points", der_points, "Derivative grid point count");
    app->add_option("--der-placement", der_placement, "right|midpoint|open|closed")
        ->check(CLI::IsMember({"right", "midpoint", "open", "closed"}));
    app->add_option("--pole-interval", pole_interval, "Pole-scan interval 'a,b'");
  }

  std::optional<DerivativeGridSpec> der_grid() const {
    if (der_interval.empty()) return std::nullopt;
    const auto [a, b] = parse_pair(der_interval);
    GridPlacement p = GridPlacement::RightEndpoint;
    if (der_placement == "midpoint") p = GridPlacement::Midpoint;
    if (der_placement == "open") p = GridPlacement::OpenUniform;
    if (der_placement == "closed") p = GridPlacement::ClosedUniform;
    return DerivativeGridSpec{a, b, der_points, p};
  }

  FitConfig config() const {
    FitConfig c;
    c.n = n;
    c.m = m;
    c.tail_l = l;
    c.q = q;
    c.lambda = lambda;
    c.lambda1 = lambda1;
    for (int i : parse_int_list(zero_mask)) c.zero_mask.alpha.insert(i);
    for (int j : parse_int_list(zero_mask_beta)) c.zero_mask.beta.insert(j);
    if (form == "cdf") {
      if (!l) throw UsageError("--form cdf needs --l");
      c.zero_mask.alpha.insert(0);
    }
    c.der_grid = der_grid();
    if (!pole_interval.empty()) c.pole_interval = parse_pair(pole_interval);
    return c;
  }

  UnderlyingFunction underlying() const { return named_function(exact_fn, theta, shape); }

  json echo() const {
    return {{"form", form}, {"exact_fn", exact_fn.empty() ? json(nullptr) : json(exact_fn)}};
  }
};

struct Output {
  std::string path;

  void add(CLI::App* app) { app->add_option("--out", path, "Write output here instead of stdout"); }

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::CountMismatch:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DuplicateAbscissa:
    case ErrorKind::NegativeAbscissa:
    case ErrorKind::NegativeWeight:
    case ErrorKind::EmptyInput:
      return kExitUsage;
    default:
      return kExitFit;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational (Pade) regression with linearized least squares"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 usage/input error, 2 fit error.");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit one rational model to a point file");
  std::string fit_file;
  ModelFlags fit_flags;
  Output fit_out;
  fit_cmd->add_option("data", fit_file, "Point file (CSV with header x,y)")->required();
  fit_flags.add_orders(fit_cmd, true);
  fit_flags.add_common(fit_cmd);
  fit_out.add(fit_cmd);

  // interpolate
  auto* interp_cmd = app.add_subcommand("interpolate", "Rational function through reference points");
  std::string interp_file;
  std::string refs;
  int group_size = 0;
  std::string anchors;
  bool search_orders = false;
  ModelFlags interp_flags;
  Output interp_out;
  interp_cmd->add_option("data", interp_file, "Point file used for error figures")->required();
  interp_flags.add_orders(interp_cmd, false);
  interp_cmd->add_option("--refs", refs, "Reference point file, or every:K for every K-th data point");
  interp_cmd->add_option("--group-size", group_size, "Average consecutive groups of this size");
  interp_cmd->add_option("--anchors", anchors, "Fixed reference points 'x,y;x,y'");
  interp_cmd->add_flag("--search-orders", search_orders, "Try every n + m + 1 = L split, keep best S");
  interp_cmd->add_option("--zero-mask", interp_flags.zero_mask, "Comma list of alpha indices pinned to 0");
  interp_cmd->add_option("--exact-fn", interp_flags.exact_fn, "Known underlying function");
  interp_out.add(interp_cmd);

  // search
  auto* search_cmd = app.add_subcommand("search", "Grid search over orders, tail exponents and q");
  std::string search_file;
  std::string n_range = "0:3";
  std::string m_range = "0:3";
  std::string l_list;
  std::string q_grid = "1";
  ModelFlags search_flags;
  Output search_out;
  search_cmd->add_option("data", search_file, "Point file")->required();
  search_cmd->add_option("--n-range", n_range, "Numerator orders lo:hi");
  search_cmd->add_option("--m-range", m_range, "Denominator orders lo:hi");
  search_cmd->add_option("--l-list", l_list, "Comma list of tail exponents");
  search_cmd->add_option("--q-grid", q_grid, "q values: list or lo:hi:step");
  search_flags.add_common(search_cmd);
  search_out.add(search_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Regularization sweep and plateau choice of lambda");
  std::string sweep_file;
  std::string lambda_grid;
  double rel_tol = 0.05;
  ModelFlags sweep_flags;
  Output sweep_out;
  sweep_cmd->add_option("data", sweep_file, "Point file")->required();
  sweep_flags.add_orders(sweep_cmd, true);
  sweep_flags.add_common(sweep_cmd);
  sweep_cmd->add_option("--lambda-grid", lambda_grid, "Ascending lambda values")->required();
  sweep_cmd->add_option("--rel-tol", rel_tol, "Plateau tolerance for D_der");
  sweep_out.add(sweep_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model: CSV of x, R(x), R'(x)");
  std::string model_file;
  std::string eval_grid;
  std::string eval_points;
  Output eval_out;
  eval_cmd->add_option("--model", model_file, "Model or report JSON")->required();
  auto* grid_opt = eval_cmd->add_option("--grid", eval_grid, "a:b:N (N subintervals)");
  auto* pts_opt = eval_cmd->add_option("--points", eval_points, "Point file whose x column is used");
  grid_opt->excludes(pts_opt);
  eval_out.add(eval_cmd);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Synthetic data for the bundled case studies");
  std::string gen_fn;
  double sigma = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::string gen_grid;
  int count = 0;
  double rank_a = 0.3;
  double theta = 1.0;
  double shape = 2.0;
  Output gen_out;
  gen_cmd->add_option("--fn", gen_fn, "sin|resonance|sqrtexp|weibull")
      ->required()
      ->check(CLI::IsMember({"sin", "resonance", "sqrtexp", "weibull"}));
  gen_cmd->add_option("--sigma", sigma, "Noise standard deviation");
  gen_cmd->add_option("--mu", mu, "Noise mean");
  gen_cmd->add_option("--seed", seed, "PRNG seed");
  gen_cmd->add_option("--grid", gen_grid, "a:b:N abscissae (N subintervals)");
  gen_cmd->add_option("--count", count, "Number of simulated failures (weibull)");
  gen_cmd->add_option("--rank-a", rank_a, "Median-rank offset a");
  gen_cmd->add_option("--theta", theta, "Weibull scale");
  gen_cmd->add_option("--beta", shape, "Weibull shape");
  gen_out.add(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (fit_cmd->parsed()) {
      const auto data = with_underlying(read_points(fit_file), fit_flags.underlying());
      const auto report = fit_linearized(data, fit_flags.config());
      json j = to_json(report);
      j["command"] = "fit";
      j["input"] = fit_file;
      j["flags"] = fit_flags.echo();
      fit_out.emit(dump(j));
    } else if (interp_cmd->parsed()) {
      const auto data = with_underlying(read_points(interp_file), interp_flags.underlying());
      Dataset refset;
      if (!refs.empty() && refs.rfind("every:", 0) == 0) {
        const int k = to_int(refs.substr(6));
        if (k < 1) throw UsageError("every:K needs K >= 1");
        std::vector<Point> pts;
        for (std::size_t i = 0; i < data.size(); i += static_cast<std::size_t>(k))
          pts.push_back(data.points()[i]);
        refset = Dataset(std::move(pts));
      } else if (!refs.empty()) {
        refset = read_points(refs);
      } else if (group_size > 0) {
        const auto anchor_pts = parse_anchors(anchors);
        refset = build_reference_points(data, group_size, anchor_pts);
      } else {
        throw UsageError("interpolate needs --refs or --group-size");
      }
      ZeroMask mask;
      for (int i : parse_int_list(interp_flags.zero_mask)) mask.alpha.insert(i);
      json j;
      if (search_orders) {
        const auto result = interpolation_search(refset, data, mask);
        j = to_json(result.best());
        json table = json::array();
        for (const auto& c : result.candidates) table.push_back(to_json(c));
        j["candidates"] = table;
      } else {
        j = to_json(interpolate_reference(refset, interp_flags.n, interp_flags.m, mask, &data));
      }
      json ref_json = json::array();
      for (const auto& p : refset.points()) ref_json.push_back({p.x, p.f});
      j["command"] = "interpolate";
      j["input"] = interp_file;
      j["reference_points"] = ref_json;
      interp_out.emit(dump(j));
    } else if (search_cmd->parsed()) {
      const auto data = with_underlying(read_points(search_file), search_flags.underlying());
      SearchSpace space;
      std::tie(space.n_lo, space.n_hi) = parse_range(n_range);
      std::tie(space.m_lo, space.m_hi) = parse_range(m_range);
      space.l_candidates = parse_int_list(l_list);
      space.q_grid = parse_real_list(q_grid);
      ModelFlags flags = search_flags;
      if (flags.form == "cdf") {
        if (space.l_candidates.empty()) throw UsageError("--form cdf needs --l-list");
        flags.l = space.l_candidates.front();
      }
      FitConfig base = flags.config();
      base.tail_l.reset();
      const auto result = grid_search(data, space, base);
      json j = to_json(result.best());
      json table = json::array();
      for (const auto& c : result.candidates) table.push_back(to_json(c));
      j["command"] = "search";
      j["input"] = search_file;
      j["flags"] = search_flags.echo();
      j["space"] = {{"n_range", {space.n_lo, space.n_hi}},
                    {"m_range", {space.m_lo, space.m_hi}},
                    {"l_list", space.l_candidates},
                    {"q_grid", space.q_grid}};
      j["best_index"] = result.best_index;
      j["candidates"] = table;
      search_out.emit(dump(j));
    } else if (sweep_cmd->parsed()) {
      const auto data = with_underlying(read_points(sweep_file), sweep_flags.underlying());
      const FitConfig cfg = sweep_flags.config();
      const auto grid = parse_real_list(lambda_grid);
      const DerivativeGridSpec der = cfg.der_grid.value_or(
          DerivativeGridSpec{data.min_x(), data.max_x(), sweep_flags.der_points,
                             GridPlacement::RightEndpoint});
      auto sweep = lambda_sweep(data, cfg, grid, der);
      if (sweep.rows.size() >= 2) sweep.chosen = choose_lambda_index(sweep, rel_tol);
      FitConfig chosen_cfg = cfg;
      chosen_cfg.lambda = sweep.rows.at(sweep.chosen).lambda;
      chosen_cfg.der_grid = der;
      if (!chosen_cfg.pole_interval) chosen_cfg.pole_interval = std::pair{der.a, der.b};
      json j;
      j["command"] = "sweep";
      j["input"] = sweep_file;
      j["flags"] = sweep_flags.echo();
      j["config"] = to_json(cfg);
      j["rel_tol"] = rel_tol;
      j["sweep"] = to_json(sweep);
      j["chosen"] = to_json(fit_regularized(data, chosen_cfg));
      sweep_out.emit(dump(j));
    } else if (eval_cmd->parsed()) {
      const auto model = read_model(model_file);
      std::vector<double> xs;
      if (!eval_grid.empty()) xs = parse_grid(eval_grid);
      else if (!eval_points.empty()) xs = read_points(eval_points).xs();
      else throw UsageError("eval needs --grid or --points");
      std::ostringstream out;
      out << "x,r,dr\n";
      for (double x : xs)
        out << format_double(x) << ',' << format_double(eval(model, x)) << ','
            << format_double(derivative(model, x)) << '\n';
      eval_out.emit(out.str());
    } else if (gen_cmd->parsed()) {
      std::ostringstream out;
      if (gen_fn == "weibull") {
        if (count < 1) throw UsageError("weibull generation needs --count >= 1");
        const auto times = simulate_weibull_failures({theta, shape}, count, seed);
        const auto ranks = median_ranks(count, RankConfig{rank_a});
        std::vector<Point> pts;
        for (std::size_t k = 0; k < times.size(); ++k) pts.push_back({times[k], ranks[k]});
        write_points(out, Dataset(std::move(pts)));
      } else {
        if (gen_grid.empty()) throw UsageError("--grid a:b:N is required for " + gen_fn);
        const auto xs = parse_grid(gen_grid);
        write_points(out, sample_noisy(named_function(gen_fn, theta, shape), xs,
                                       NoiseSpec{mu, sigma, seed}));
      }
      gen_out.emit(out.str());
    }
  } catch (const UsageError& e) {
    std::cerr << "padereg: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "padereg: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "padereg: " << e.what() << '\n';
    return kExitFit;
  }
  return 0;
}
