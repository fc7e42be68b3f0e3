#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "peakon/core.hpp"
#include "peakon/moments.hpp"
#include "peakon/spectral.hpp"

namespace peakon::cli {

using nlohmann::json;

struct Grid {
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;

  std::vector<double> points() const;
};

// "min:max:step" with min < max and step > 0
Grid parse_grid(const std::string& text);
// comma-separated reals
std::vector<double> parse_list(const std::string& text);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct PeakonInput {
  PeakonConfig config;
  std::optional<KernelParams> kernel;
};
PeakonInput parse_peakon_input(const json& doc);
json peakons_to_json(const PeakonConfig& config);
json kernel_to_json(const KernelParams& params);
KernelParams kernel_from_json(const json& doc);

SpectralData parse_spectral_input(const json& doc);
json spectral_to_json(const SpectralData& data, const StringCoefficients& coeffs);
json state_to_json(double t, const ConservativeState& state);
json collision_to_json(const CollisionSignal& signal);

// 17 significant digits, round-trip exact
std::string fmt(double x);
std::string csv_row(const std::vector<double>& values);

// key = value lines; '#' starts a comment
std::map<std::string, std::string> read_key_values(const std::string& path);

}  // namespace peakon::cli
