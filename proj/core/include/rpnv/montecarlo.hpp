#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace rpnv {

/// Recombination rate of one nuclear configuration and its probability.
struct RateComponent {
  double k = 0.0;  // 1/s
  double weight = 1.0;
};

struct ShotConfig {
  double measurement_time = 0.7e-6;  // t_m, s
  int repetitions = 500;             // N readouts per event
  std::size_t events = 100000;       // M
  std::vector<RateComponent> rates{{0.1425e6, 1.0}};
  double omega = 0.0;                // Rabi frequency, rad/s
  std::uint64_t seed = 1;

  void validate() const;
};

struct ShotRecord {
  std::size_t component = 0;
  double t_rec = 0.0;     // sampled recombination time, s
  double truth = 0.0;     // P_r(min(t_m, t_rec))
  double estimate = 0.0;  // Binomial(N, truth) / N
  double error_bar = 0.0; // sqrt((truth - truth^2) / N)
};

/// (1 + cos(omega t)) / 2.
double readout_probability(double omega, double t);

/// One event: configuration by weight, exponential recombination time, frozen
/// Rabi phase after recombination, binomial readout.
ShotRecord sample_trajectory(const ShotConfig& cfg, std::mt19937_64& rng);

/// sum_i w_i [k_i int_0^x P_r(t) e^{-k_i t} dt + P_r(x) e^{-k_i x}].
double closed_form_average(const ShotConfig& cfg, double x);

/// Events for cfg.measurement_time, reproducible from cfg.seed.
std::vector<ShotRecord> sample_events(const ShotConfig& cfg, unsigned jobs = 1);

struct EnsemblePoint {
  double measurement_time = 0.0;
  double mean = 0.0;
  double standard_error = 0.0;
  double closed_form = 0.0;
  double early_fraction = 0.0;  // events with t_rec < t_m
};

/// Monte Carlo mean of the readout over cfg.events per grid point. Events are
/// drawn in fixed chunks seeded from (seed, grid index, chunk index), so the
/// result is identical for any worker count.
std::vector<EnsemblePoint> ensemble_average(const ShotConfig& cfg,
                                            const std::vector<double>& measurement_times,
                                            unsigned jobs = 1);

}  // namespace rpnv
