#pragma once

#include "rpnv/model.hpp"
#include "rpnv/propagate.hpp"
#include "rpnv/montecarlo.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpnv::cli {

/// Schema or parse problem; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SignalSettings {
  double t_max_us = 3.0;
  double points_per_period = 20.0;
};

struct KeffSettings {
  double t_max_us = 20.0;
  std::size_t points = 401;
};

struct SensitivitySettings {
  std::size_t grid_points = 2000;
  double relative_step = 1e-3;
};

struct MapSettings {
  std::size_t theta_points = 13;  // [0, pi] inclusive
  std::size_t phi_points = 24;    // [0, 2 pi) exclusive
};

struct PhiSettings {
  std::size_t phi_points = 48;
  std::vector<double> relaxation_mhz{0.0, 0.1};
};

struct VariantSettings {
  std::string name;
  std::vector<HyperfineTensor> hyperfines;
};

struct PulseSettings {
  double tau_min_ns = 1e-4;
  double tau_max_ns = 1.0;
  std::size_t points = 41;  // log-spaced
  double transverse_b_mt = 0.05;
};

struct MonteCarloSettings {
  double t_m_us = 0.7;
  int repetitions = 500;
  std::size_t events = 100000;
  double grid_max_us = 3.0;
  std::size_t grid_points = 20;
  std::vector<RateComponent> rates{{0.1425e6, 1.0}};
};

struct ExperimentSettings {
  Method method = Method::numeric_dense;
  std::uint64_t seed = 1;
  SignalSettings signal;
  KeffSettings keff;
  SensitivitySettings sensitivity;
  MapSettings keff_map;
  PhiSettings keff_phi;
  std::vector<double> noise_gamma_mhz{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  std::vector<double> relaxation_mhz{0.0, 0.025, 0.05, 0.1, 0.2};
  std::vector<VariantSettings> variants;  // empty: the model's own nuclei
  std::vector<double> depth_nm{5, 6, 7, 8, 9, 10, 12, 15};
  std::vector<double> dipolar_depth_nm{5, 6, 7, 8, 9, 10};
  std::vector<double> permittivity{1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 20.0, 40.0, 80.0};
  PulseSettings pulses;
  MonteCarloSettings montecarlo;
};

struct OutputSettings {
  std::string directory = "results";
  bool csv = true;
  bool json = true;
};

struct Config {
  ModelParams model;
  ExperimentSettings experiment;
  OutputSettings output;
};

/// Parses and validates; every key must be known. Missing keys keep defaults.
Config parse_config(const nlohmann::json& j);
Config parse_config_text(const std::string& text);
Config load_config(const std::filesystem::path& path);

/// Fully resolved configuration in the documented schema and units.
nlohmann::json to_json(const Config& c);

/// FNV-1a 64-bit over the canonical dump of to_json(c), as 16 hex digits.
std::string config_hash(const Config& c);

std::vector<HyperfineTensor> parse_hyperfines(const nlohmann::json& j, const std::string& path);

struct Diagnostic {
  enum class Level { warning, error } level = Level::warning;
  std::string message;
};

/// Regime checks behind the analytic formulas.
std::vector<Diagnostic> diagnose(const Config& c);

}  // namespace rpnv::cli
