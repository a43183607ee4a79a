#pragma once

#include "rpnv/cli/config.hpp"
#include "rpnv/cli/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace rpnv::cli {

/// In-memory result of one experiment.
struct ResultBundle {
  std::string experiment;
  std::vector<std::pair<std::string, CsvTable>> tables;  // file stem, table
  nlohmann::json results = nlohmann::json::object();     // key scalars
  std::vector<std::string> failures;                     // per-point problems
  bool partial() const { return !failures.empty(); }
};

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

/// Runs one experiment; sweeps use up to `jobs` worker threads.
ResultBundle run_experiment(const std::string& name, const Config& cfg, unsigned jobs = 1);

/// Summary document: experiment, version, config hash, config echo, results.
nlohmann::json summary_json(const ResultBundle& bundle, const Config& cfg);

/// Writes <dir>/<stem>.csv per table and <dir>/<experiment>.json as enabled
/// by the output settings. Returns the written paths.
std::vector<std::filesystem::path> write_bundle(const ResultBundle& bundle, const Config& cfg,
                                                const std::filesystem::path& dir);

}  // namespace rpnv::cli
