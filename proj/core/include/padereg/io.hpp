#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "padereg/dataset.hpp"
#include "padereg/fitting.hpp"
#include "padereg/rational.hpp"
#include "padereg/selection.hpp"

namespace padereg {

// Point files: header line `x,y`, then `<x>,<y>` per line, LF or CRLF.

Dataset parse_points(std::string_view text);
Dataset read_points(const std::filesystem::path& path);

/// Shortest round-trip decimal form of each value.
void write_points(std::ostream& out, const Dataset& data);
std::string format_double(double v);

nlohmann::json to_json(const RationalModel& model);
RationalModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitConfig& config);
FitConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PoleReport& poles);
nlohmann::json to_json(const FitReport& report);
nlohmann::json to_json(const Candidate& candidate);
nlohmann::json to_json(const LambdaSweep& sweep);

/// Accepts either a bare model record or a report carrying a "model" key.
RationalModel read_model(const std::filesystem::path& path);

}  // namespace padereg
