#include "rpnv/cli/config.hpp"
#include "rpnv/cli/experiments.hpp"
#include "rpnv/errors.hpp"
#include "rpnv/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericFailure = 3;

int validate(const std::string& path) {
  const rpnv::cli::Config cfg = rpnv::cli::load_config(path);
  const auto diags = rpnv::cli::diagnose(cfg);
  bool error = false;
  for (const auto& d : diags) {
    const bool is_error = d.level == rpnv::cli::Diagnostic::Level::error;
    error = error || is_error;
    std::cout << (is_error ? "error: " : "warning: ") << d.message << "\n";
  }
  std::cout << "config_hash " << rpnv::cli::config_hash(cfg) << "\n";
  std::cout << (error ? "invalid" : diags.empty() ? "ok" : "ok with warnings") << "\n";
  return error ? kConfigError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radical-pair reaction sensing with a single NV center"};
  app.set_version_flag("--version", std::string(rpnv::kVersion));

  std::string experiment;
  std::string config_path;
  std::string out_dir;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;

  std::string names;
  for (const auto& n : rpnv::cli::experiment_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("experiment", experiment, "validate, or one of: " + names)->required();
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--jobs", jobs, "worker threads for sweeps (0 = all cores)");
  app.add_option("--seed", seed, "random seed (overrides experiment.seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (experiment == "validate") return validate(config_path);
    if (!rpnv::cli::is_experiment(experiment)) {
      std::cerr << "error: unknown experiment '" << experiment << "' (expected validate, " << names << ")\n";
      return kConfigError;
    }
    rpnv::cli::Config cfg = rpnv::cli::load_config(config_path);
    if (seed) cfg.experiment.seed = *seed;
    if (!out_dir.empty()) cfg.output.directory = out_dir;

    const auto bundle = rpnv::cli::run_experiment(experiment, cfg, jobs);
    for (const auto& path : rpnv::cli::write_bundle(bundle, cfg, cfg.output.directory)) {
      std::cout << path.string() << "\n";
    }
    if (bundle.partial()) {
      for (const auto& f : bundle.failures) std::cerr << "warning: " << f << "\n";
      std::cerr << "partial results written\n";
      return kNumericFailure;
    }
    return kOk;
  } catch (const rpnv::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rpnv::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rpnv::SingularGeometry& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rpnv::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
