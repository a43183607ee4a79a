#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rpnv {

/// Rabi frequency omega (rad/s), recombination rate k and NV dephasing gamma (1/s).
struct AnalyticParams {
  double omega = 0.0;
  double k = 0.0;
  double gamma = 0.0;

  void validate() const;
};

struct SignalPoint {
  double p = 0.0;           // P = P^E + P^G
  double p_e_branch = 0.0;  // P^E = [1 + e^{-gamma t} cos(omega t)] e^{-k t} / 2
  double p_g_branch = 0.0;  // P^G = (1 - e^{-k t}) / 2
};

/// Weak-dephasing signal; reduces to the coherent result when gamma = 0.
SignalPoint analytic_signal(const AnalyticParams& p, double t);

/// Dephasing solution valid for any gamma below the bare Rabi frequency.
///
/// Here `p.omega` is the bare frequency 2 k_perp E_perp. The oscillation runs
/// at sqrt(omega^2 - gamma^2) with amplitude C = sqrt(1 + (gamma/Omega)^2)
/// and phase alpha, cos(alpha) = Omega / sqrt(Omega^2 + gamma^2).
/// P is P^E plus k times the integral of P^E. Throws OutOfRegime when
/// gamma >= omega.
struct GeneralSignalPoint {
  double p = 0.0;
  double p_e_branch = 0.0;
  double omega = 0.0;      // damped frequency
  double amplitude = 1.0;  // C
  double phase = 0.0;      // alpha
};
GeneralSignalPoint analytic_signal_general(const AnalyticParams& p, double t);

/// d P / d k of the weak-dephasing signal.
double analytic_dp_dk(const AnalyticParams& p, double t);

/// Closed-form shot-noise-limited sensitivity eta(T), s^-1/2.
double analytic_sensitivity(const AnalyticParams& p, double t);

struct Optimum {
  double t_op = 0.0;
  double eta_op = 0.0;
  bool on_boundary = false;
  std::size_t index = 0;
};

/// eta(T) = sqrt(P (1 - P)) sqrt(T) / |dP/dk| on a grid of interrogation times.
/// Points where |dP/dk| < 1e-18 or P is not strictly inside (0, 1) are flagged
/// divergent and carry eta = +inf.
struct SensitivityCurve {
  std::vector<double> t;
  std::vector<double> eta;
  std::vector<double> p;
  std::vector<char> divergent;
  Optimum optimum;
};

/// Builds the curve from P(T) at k and at k +- delta_k (central difference).
SensitivityCurve sensitivity_from_signals(std::span<const double> t, std::span<const double> p,
                                          std::span<const double> p_plus,
                                          std::span<const double> p_minus, double delta_k);

/// Same pipeline applied to the analytic signal; delta_k defaults to 1e-3 k.
SensitivityCurve analytic_pipeline_sensitivity(const AnalyticParams& p, std::span<const double> t,
                                               double delta_k = 0.0);

/// Closed form evaluated on a grid.
SensitivityCurve analytic_sensitivity_curve(const AnalyticParams& p, std::span<const double> t);

/// T_i = i T_max / n for i = 1..n with T_max = 5 / (k + gamma).
std::vector<double> optimum_grid(double k, double gamma, std::size_t n = 2000);

/// Grid minimum refined by a parabola through its neighbours.
Optimum find_optimum(std::span<const double> t, std::span<const double> eta);

/// Single-exponential fit P_E(t) ~ exp(-k_eff t).
struct RateFit {
  double k_eff = 0.0;
  double k_initial = 0.0;  // log-linear estimate used to seed and window the fit
  double residual = 0.0;   // RMS over the window
  double window_start = 0.0;
  double window_end = 0.0;
  std::size_t samples = 0;
};

/// Nonlinear least squares over t in [t_0, min(t_0 + 3/k_init, t_max)].
/// Throws FitFailure for a non-decaying trace or non-positive P_E in the window.
RateFit fit_keff(std::span<const double> t, std::span<const double> p_e);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace rpnv
