#pragma once

#include "rpnv/analytics.hpp"
#include "rpnv/model.hpp"
#include "rpnv/propagate.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace rpnv {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads (0 = hardware
/// concurrency). Work items must be independent; results are written by index
/// so the output does not depend on scheduling. The first exception, by
/// index, is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

SignalTrace simulate_signal(const JointModel& model, const TimeGrid& grid,
                            Method method = Method::numeric_dense, const KrylovOptions& krylov = {});
SignalTrace simulate_signal(const ModelParams& p, const TimeGrid& grid,
                            Method method = Method::numeric_dense, const KrylovOptions& krylov = {});

struct KeffOptions {
  double t_max = 20e-6;
  std::size_t points = 401;
};

/// Fits k_eff to P_E(t). Without NV-radical coupling the NV cannot affect the
/// radical pair, so the fit runs on the radical-pair-only register.
RateFit fit_model_keff(const ModelParams& p, const KeffOptions& options = {});

struct SensitivityOptions {
  std::size_t grid_points = 2000;
  double relative_step = 1e-3;  // delta_k / k
  Method method = Method::numeric_dense;
};

/// Eq.-10 style pipeline on the propagated signal, with k_s = k_t = k taken
/// from `p.rates.k_singlet`. Grid T in (0, 5/(k + gamma)].
SensitivityCurve numeric_sensitivity(const ModelParams& p, const SensitivityOptions& options = {});

struct SensitivityResult {
  RateFit fit;
  double k = 0.0;
  double omega = 0.0;  // bare Rabi frequency 2 k_perp E_perp
  SensitivityCurve curve;
};

/// Fit k_eff from the spin-selective model, then evaluate the sensitivity of
/// the uniform-rate model with k = k_eff.
SensitivityResult sensitivity_pipeline(const ModelParams& p, const KeffOptions& keff = {},
                                       const SensitivityOptions& options = {});

struct KeffMap {
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> k_eff;          // row-major, theta outer; NaN where the fit failed
  std::vector<std::string> failures;  // empty string where the fit succeeded

  double at(std::size_t i, std::size_t j) const { return k_eff[i * phi.size() + j]; }
  /// (max - min) / mean over successful cells.
  double modulation() const;
};

KeffMap keff_map(const ModelParams& p, const std::vector<double>& theta, const std::vector<double>& phi,
                 unsigned jobs = 1, const KeffOptions& options = {});

/// (max - min) / mean of a sample.
double relative_modulation(const std::vector<double>& values);

}  // namespace rpnv
