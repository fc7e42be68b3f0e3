#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace peakon::cli {

namespace {

constexpr const char* kModule = "cli";

double finite_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidInput(kModule, what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(kModule, what + " must be finite");
  return x;
}

std::vector<double> number_array(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw InvalidInput(kModule, "missing array '" + key + "'");
  std::vector<double> out;
  for (const json& v : doc[key]) out.push_back(finite_number(v, key + " entry"));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput(kModule, "not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x))
    throw InvalidInput(kModule, "not a finite number: '" + text + "'");
  return x;
}

}  // namespace

std::vector<double> Grid::points() const {
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
  std::vector<double> xs;
  xs.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) xs.push_back(min + static_cast<double>(i) * step);
  return xs;
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  if (parts.size() != 3) throw InvalidInput(kModule, "grid must be min:max:step");
  Grid g{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
  if (!(g.min < g.max)) throw InvalidInput(kModule, "grid bounds must be ordered");
  if (!(g.step > 0.0)) throw InvalidInput(kModule, "grid step must be positive");
  if ((g.max - g.min) / g.step > 1e8) throw InvalidInput(kModule, "grid has too many points");
  return g;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(trim(item)));
  if (out.empty()) throw InvalidInput(kModule, "empty list");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(kModule, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(kModule, "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(kModule, "cannot write '" + path + "'");
  out << text;
}

KernelParams kernel_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput(kModule, "kernel must be an object");
  const std::string branch = doc.value("branch", std::string("hyperbolic"));
  auto num = [&](const char* key, double fallback) {
    return doc.contains(key) ? finite_number(doc[key], key) : fallback;
  };
  if (branch == "peakon") return KernelParams::peakon();
  switch (kernel_branch_from_string(branch)) {
    case KernelBranch::hyperbolic:
      return KernelParams::hyperbolic(num("a", 0.0), num("b_plus", 1.0), num("b_minus", -1.0),
                                      num("nu", 1.0));
    case KernelBranch::trigonometric:
      return KernelParams::trigonometric(num("a", 0.0), num("b_plus", 1.0), num("b_minus", 0.0),
                                         num("nu", 1.0));
    case KernelBranch::polynomial:
      return KernelParams::polynomial(num("a", 0.0), num("b", 0.0), num("c", 0.0));
  }
  return KernelParams::peakon();
}

json kernel_to_json(const KernelParams& k) {
  json j;
  j["branch"] = to_string(k.branch);
  j["a"] = k.a;
  if (k.branch == KernelBranch::polynomial) {
    j["b"] = k.b;
    j["c"] = k.c;
  } else {
    j["b_plus"] = k.b_plus;
    j["b_minus"] = k.b_minus;
    j["nu"] = k.nu;
  }
  return j;
}

PeakonInput parse_peakon_input(const json& doc) {
  if (!doc.is_object() || !doc.contains("peakons") || !doc["peakons"].is_array())
    throw InvalidInput(kModule, "input must be an object with a 'peakons' array");
  std::vector<Peak> peaks;
  for (const json& e : doc["peakons"]) {
    if (!e.is_object() || !e.contains("p") || !e.contains("q"))
      throw InvalidInput(kModule, "each peakon needs 'p' and 'q'");
    peaks.push_back({finite_number(e["p"], "p"), finite_number(e["q"], "q")});
  }
  PeakonInput in{PeakonConfig(std::move(peaks)), std::nullopt};
  if (doc.contains("kernel")) in.kernel = kernel_from_json(doc["kernel"]);
  return in;
}

json peakons_to_json(const PeakonConfig& config) {
  json arr = json::array();
  for (const auto& pk : config) arr.push_back({{"p", pk.p}, {"q", pk.q}});
  return json{{"peakons", arr}};
}

SpectralData parse_spectral_input(const json& doc) {
  if (!doc.is_object()) throw InvalidInput(kModule, "spectral input must be an object");
  SpectralData d;
  d.eigenvalues = number_array(doc, "eigenvalues");
  d.gammas = number_array(doc, "gammas");
  if (doc.contains("couplings")) d.couplings = number_array(doc, "couplings");
  if (d.gammas.size() != d.eigenvalues.size() ||
      (!d.couplings.empty() && d.couplings.size() != d.eigenvalues.size()))
    throw InvalidInput(kModule, "spectral arrays differ in length");
  return d;
}

json spectral_to_json(const SpectralData& data, const StringCoefficients& coeffs) {
  return json{{"eigenvalues", data.eigenvalues},
              {"gammas", data.gammas},
              {"couplings", data.couplings},
              {"m", coeffs.m},
              {"l", coeffs.l}};
}

json state_to_json(double t, const ConservativeState& state) {
  json j = peakons_to_json(state.peaks());
  json singular = json::array();
  for (const Atom& a : state.singular_energy()) singular.push_back({{"x", a.x}, {"w", a.w}});
  j["t"] = t;
  j["singular_energy"] = singular;
  j["total_energy"] = state.total_energy();
  return j;
}

json collision_to_json(const CollisionSignal& s) {
  return json{{"collision",
               {{"time", s.time},
                {"determinant_index", s.determinant_index},
                {"peaks", {s.peaks.first, s.peaks.second}},
                {"relative_size", s.relative_size}}}};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) row += ',';
    row += fmt(values[i]);
  }
  row += '\n';
  return row;
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(kModule, "cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput(kModule, path + ":" + std::to_string(lineno) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace peakon::cli
