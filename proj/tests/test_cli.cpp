#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "support.hpp"

using namespace padereg;
using namespace padereg::testing;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("padereg_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + PADEREG_CLI + "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write(const std::string& name, const std::string& content) {
  const auto p = scratch() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

const std::string kTable1 = PADEREG_DATA_DIR "/table1.csv";

}  // namespace

TEST(Cli, FitUnregularizedCdf) {
  const auto r = run("fit " + kTable1 + " --form cdf --n 6 --m 0 --l 12 --lambda 0");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("command"), "fit");
  EXPECT_NEAR(j.at("d").get<double>(), 0.02368, 5e-5);
  EXPECT_GE(j.at("poles").at("sign_changes").size(), 1u);
  EXPECT_EQ(j.at("config").at("tail_l"), 12);
}

TEST(Cli, FitCollinearLine) {
  const auto line = write("line.csv", "x,y\n0,1\n1,3\n2,5\n");
  const auto r = run("fit " + line.string() + " --n 1 --m 0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(json::parse(r.out).at("s").get<double>(), 1e-18);
}

TEST(Cli, MissingFileIsUsageError) {
  const auto out = scratch() / "never.json";
  const auto r = run("fit /no/such/file.csv --n 1 --m 0 --out " + out.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(fs::exists(out));
  EXPECT_NE(r.err.find("padereg:"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, BadFlagIsUsageError) {
  EXPECT_EQ(run("fit " + kTable1 + " --n x --m 0").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
}

TEST(Cli, SingularFitIsFitError) {
  const auto same = write("same.csv", "x,y\n1,1\n1,2\n1,3\n");
  EXPECT_EQ(run("fit " + same.string() + " --n 1 --m 0").code, 2);
}

TEST(Cli, InterpolateSinusoidEverySecondPoint) {
  std::ostringstream grid;
  write_points(grid, sample(sine_2pi, uniform_grid(0.0, 1.0, 20)));
  const auto file = write("sin21.csv", grid.str());
  const auto r = run("interpolate " + file.string() +
                     " --refs every:2 --n 8 --m 2 --zero-mask 0,8 --exact-fn sin");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j.at("d").get<double>(), 1e-4);
  EXPECT_EQ(j.at("reference_points").size(), 11u);
}

TEST(Cli, InterpolateGroupsWithAnchors) {
  const auto gen = run("generate --fn sin --sigma 0.1 --seed 3 --grid 0:1:46");
  ASSERT_EQ(gen.code, 0) << gen.err;
  const auto file = write("sin47.csv", gen.out);
  const auto r = run("interpolate " + file.string() +
                     " --group-size 5 --anchors \"0,0;1,0\" --search-orders --exact-fn sin");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("reference_points").size(), 11u);
  EXPECT_EQ(j.at("candidates").size(), 11u);
}

TEST(Cli, InterpolateCountMismatch) {
  const auto r = run("interpolate " + kTable1 + " --refs every:5 --n 3 --m 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("CountMismatch"), std::string::npos);
}

TEST(Cli, SearchTable1CdfForm) {
  const auto r = run("search " + kTable1 + " --form cdf --n-range 2:8 --m-range 0:2 --l-list 8,10,12");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_LE(j.at("d").get<double>(), 0.032);
  EXPECT_EQ(j.at("candidates").size(), 7u * 3u * 3u);
}

TEST(Cli, SingleCellSearchEqualsFit) {
  const auto s = run("search " + kTable1 + " --n-range 3:3 --m-range 1:1");
  const auto f = run("fit " + kTable1 + " --n 3 --m 1");
  ASSERT_EQ(s.code, 0);
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(json::parse(s.out).at("model"), json::parse(f.out).at("model"));
}

TEST(Cli, SearchTableRowCount) {
  const auto r = run("search " + kTable1 + " --n-range 0:2 --m-range 0:1 --q-grid 0.5,0.75,1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("candidates").size(), 3u * 2u * 3u);
}

TEST(Cli, SweepChoosesPlateau) {
  const auto r = run("sweep " + kTable1 +
                     " --form cdf --n 6 --m 0 --l 12 --lambda-grid 0,0.0005,0.001,0.002,0.0025,0.005,0.01"
                     " --der-interval 0,2 --der-points 40");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("sweep").at("chosen_lambda").get<double>(), 0.0025);
  EXPECT_NEAR(j.at("chosen").at("d_der").get<double>(), 0.5804, 0.02);
}

TEST(Cli, EvalConstantModel) {
  const auto model = write("const.json", to_json(RationalModel::constant(2.5)).dump());
  const auto r = run("eval --model " + model.string() + " --grid 0:1:4");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "x,r,dr\n0,2.5,0\n0.25,2.5,0\n0.5,2.5,0\n0.75,2.5,0\n1,2.5,0\n");
}

TEST(Cli, EvalRegularizedModelIsMonotone) {
  const auto fit = run("fit " + kTable1 + " --form cdf --n 6 --m 0 --l 12 --lambda 0.0025");
  const auto report = write("reg.json", fit.out);
  const auto r = run("eval --model " + report.string() + " --grid 0:2:199");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double prev = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double v = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    EXPECT_GE(v, prev);
    prev = v;
    ++rows;
  }
  EXPECT_EQ(rows, 200);
}

TEST(Cli, FitThenEvalReproducesS) {
  const auto fit = run("fit " + kTable1 + " --n 3 --m 1");
  ASSERT_EQ(fit.code, 0);
  const auto report = json::parse(fit.out);
  const auto path = write("fit31.json", fit.out);
  const auto r = run("eval --model " + path.string() + " --points " + kTable1);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto data = table1();
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double s = 0.0;
  for (const auto& p : data.points()) {
    std::getline(in, line);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double v = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    s += (v - p.f) * (v - p.f);
  }
  EXPECT_NEAR(s, report.at("s").get<double>(), 1e-12);
}

TEST(Cli, GenerateWeibullRanks) {
  const auto r = run("generate --fn weibull --theta 1 --beta 2 --count 10 --rank-a 0.3 --seed 4");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = parse_points(r.out);
  ASSERT_EQ(d.size(), 10u);
  const auto ranks = median_ranks(10, RankConfig{0.3});
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_EQ(d.points()[k].f, ranks[k]);
    if (k > 0) {
      EXPECT_LE(d.points()[k - 1].x, d.points()[k].x);
    }
  }
}

TEST(Cli, GenerateNoiselessAndDeterministic) {
  const auto exact = run("generate --fn resonance --sigma 0 --grid -1:1:20");
  ASSERT_EQ(exact.code, 0) << exact.err;
  const auto d = parse_points(exact.out);
  for (const auto& p : d.points()) EXPECT_EQ(p.f, resonance(p.x));
  const auto a = run("generate --fn sqrtexp --sigma 0.1 --seed 12 --grid 0:2:10");
  const auto b = run("generate --fn sqrtexp --sigma 0.1 --seed 12 --grid 0:2:10");
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, OutFlagWritesFile) {
  const auto out = scratch() / "fit_out.json";
  const auto r = run("fit " + kTable1 + " --n 2 --m 0 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(out)).at("model").at("n"), 2);
}
