#include "padereg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "padereg/error.hpp"

namespace padereg {

namespace {

using nlohmann::json;

double parse_number(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) +
                                           ": bad number '" + std::string(field) + "'");
  return v;
}

// Non-finite values are stored as strings since JSON has no infinity.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : json(nullptr);
}

std::string_view placement_name(GridPlacement p) {
  switch (p) {
    case GridPlacement::RightEndpoint: return "right";
    case GridPlacement::Midpoint: return "midpoint";
    case GridPlacement::OpenUniform: return "open";
    case GridPlacement::ClosedUniform: return "closed";
  }
  return "right";
}

GridPlacement placement_from(const std::string& s) {
  if (s == "right") return GridPlacement::RightEndpoint;
  if (s == "midpoint") return GridPlacement::Midpoint;
  if (s == "open") return GridPlacement::OpenUniform;
  if (s == "closed") return GridPlacement::ClosedUniform;
  throw Error(ErrorKind::ParseError, "unknown grid placement '" + s + "'");
}

json mask_json(const ZeroMask& mask) {
  return {{"alpha", mask.alpha}, {"beta", mask.beta}};
}

ZeroMask mask_from(const json& j) {
  ZeroMask mask;
  if (j.is_null()) return mask;
  for (int i : j.value("alpha", std::vector<int>{})) mask.alpha.insert(i);
  for (int i : j.value("beta", std::vector<int>{})) mask.beta.insert(i);
  return mask;
}

}  // namespace

Dataset parse_points(std::string_view text) {
  std::vector<Point> pts;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
      if (line != "x,y")
        throw Error(ErrorKind::ParseError, "first line must be exactly 'x,y'");
      header_seen = true;
      continue;
    }
    if (line.empty()) {
      if (text.empty()) break;
      throw Error(ErrorKind::ParseError, "empty line " + std::to_string(line_no));
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": expected two fields");
    pts.push_back({parse_number(line.substr(0, comma), line_no),
                   parse_number(line.substr(comma + 1), line_no)});
  }
  if (!header_seen) throw Error(ErrorKind::ParseError, "missing 'x,y' header");
  if (pts.empty()) throw Error(ErrorKind::EmptyInput, "point file has no data rows");
  return Dataset(std::move(pts));
}

Dataset read_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_points(std::ostream& out, const Dataset& data) {
  out << "x,y\n";
  for (const auto& p : data.points()) out << format_double(p.x) << ',' << format_double(p.f) << '\n';
}

json to_json(const RationalModel& model) {
  json j;
  j["q"] = model.q();
  j["n"] = model.n();
  j["m"] = model.m();
  if (model.tail())
    j["tail"] = {{"l", model.tail()->exponent}, {"alpha_l", model.tail()->coefficient}};
  else
    j["tail"] = nullptr;
  j["alpha"] = model.alpha();
  j["beta"] = model.beta();
  j["zero_mask"] = mask_json(model.zero_mask());
  return j;
}

RationalModel model_from_json(const json& j) {
  try {
    std::optional<TailTerm> tail;
    if (j.contains("tail") && !j["tail"].is_null())
      tail = TailTerm{j["tail"].at("l").get<int>(), j["tail"].at("alpha_l").get<double>()};
    auto alpha = j.at("alpha").get<std::vector<double>>();
    auto beta = j.value("beta", std::vector<double>{});
    if (j.contains("n") && j["n"].get<int>() + 1 != static_cast<int>(alpha.size()))
      throw Error(ErrorKind::ParseError, "n does not match alpha length");
    if (j.contains("m") && j["m"].get<int>() != static_cast<int>(beta.size()))
      throw Error(ErrorKind::ParseError, "m does not match beta length");
    return RationalModel(std::move(alpha), std::move(beta), tail, j.value("q", 1.0),
                         mask_from(j.value("zero_mask", json(nullptr))));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

json to_json(const FitConfig& c) {
  json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["tail_l"] = c.tail_l ? json(*c.tail_l) : json(nullptr);
  j["q"] = c.q;
  j["lambda"] = c.lambda;
  j["lambda1"] = c.lambda1;
  j["zero_mask"] = mask_json(c.zero_mask);
  if (c.der_grid)
    j["der_grid"] = {{"a", c.der_grid->a},
                     {"b", c.der_grid->b},
                     {"count", c.der_grid->count},
                     {"placement", placement_name(c.der_grid->placement)}};
  else
    j["der_grid"] = nullptr;
  j["pole_interval"] =
      c.pole_interval ? json::array({c.pole_interval->first, c.pole_interval->second})
                      : json(nullptr);
  j["pole_points"] = c.pole_points;
  return j;
}

FitConfig config_from_json(const json& j) {
  try {
    FitConfig c;
    c.n = j.at("n").get<int>();
    c.m = j.at("m").get<int>();
    if (j.contains("tail_l") && !j["tail_l"].is_null()) c.tail_l = j["tail_l"].get<int>();
    c.q = j.value("q", 1.0);
    c.lambda = j.value("lambda", 0.0);
    c.lambda1 = j.value("lambda1", 0.0);
    c.zero_mask = mask_from(j.value("zero_mask", json(nullptr)));
    if (j.contains("der_grid") && !j["der_grid"].is_null()) {
      const auto& g = j["der_grid"];
      c.der_grid = DerivativeGridSpec{g.at("a").get<double>(), g.at("b").get<double>(),
                                      g.at("count").get<int>(),
                                      placement_from(g.value("placement", "right"))};
    }
    if (j.contains("pole_interval") && !j["pole_interval"].is_null())
      c.pole_interval = std::pair{j["pole_interval"].at(0).get<double>(),
                                  j["pole_interval"].at(1).get<double>()};
    c.pole_points = j.value("pole_points", 1000);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

json to_json(const PoleReport& poles) {
  json changes = json::array();
  for (const auto& sc : poles.sign_changes)
    changes.push_back({{"lo", sc.lo}, {"hi", sc.hi}, {"root", sc.root}});
  return {{"sign_changes", changes},
          {"min_abs_denominator", number(poles.min_abs_denominator)},
          {"interval", {poles.scan_lo, poles.scan_hi}},
          {"points", poles.scan_points}};
}

json to_json(const FitReport& r) {
  json j;
  j["config"] = to_json(r.config);
  j["model"] = to_json(r.model);
  j["s"] = number(r.s);
  j["s0"] = number(r.s0);
  j["d"] = number(r.d);
  j["d0"] = optional_number(r.d0);
  j["d1"] = optional_number(r.d1);
  j["d_der"] = optional_number(r.d_der);
  j["denominator_zero_at_data"] = r.denominator_zero_at_data;
  j["poles"] = to_json(r.poles);
  j["solve"] = {{"pivot_min", r.diagnostics.pivot_min},
                {"pivot_max", r.diagnostics.pivot_max},
                {"residual_inf", r.diagnostics.residual_inf},
                {"condition_flag", r.diagnostics.condition_flag}};
  return j;
}

json to_json(const Candidate& c) {
  json j;
  j["n"] = c.n;
  j["m"] = c.m;
  j["l"] = c.l ? json(*c.l) : json(nullptr);
  j["q"] = c.q;
  if (c.report) {
    j["s"] = number(c.report->s);
    j["d"] = number(c.report->d);
    j["pole_count"] = c.report->poles.count();
    j["error"] = nullptr;
  } else {
    j["s"] = nullptr;
    j["d"] = nullptr;
    j["pole_count"] = nullptr;
    j["error"] = c.error ? json(std::string(to_string(*c.error))) : json(nullptr);
  }
  return j;
}

json to_json(const LambdaSweep& sweep) {
  json rows = json::array();
  for (const auto& r : sweep.rows)
    rows.push_back({{"lambda", r.lambda},
                    {"d", number(r.d)},
                    {"d_der", number(r.d_der)},
                    {"pole_count", r.pole_count},
                    {"error", r.error ? json(std::string(to_string(*r.error))) : json(nullptr)}});
  json j{{"rows", rows}, {"chosen_index", sweep.chosen}};
  if (!sweep.rows.empty()) j["chosen_lambda"] = sweep.rows.at(sweep.chosen).lambda;
  return j;
}

RationalModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (j.contains("model")) return model_from_json(j["model"]);
  for (const char* key : {"best", "chosen"})
    if (j.contains(key) && j[key].contains("model")) return model_from_json(j[key]["model"]);
  return model_from_json(j);
}

}  // namespace padereg
