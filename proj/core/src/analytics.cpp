#include "rpnv/analytics.hpp"

#include "rpnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace rpnv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDerivativeFloor = 1e-18;

// Integral of e^{-a s} cos(w s - phase) over [0, t].
double damped_cosine_integral(double a, double w, double phase, double t) {
  const std::complex<double> z(-a, w);
  if (std::abs(z) == 0.0) return std::cos(phase) * t;
  const std::complex<double> val = std::exp(std::complex<double>(0, -phase)) * (std::exp(z * t) - 1.0) / z;
  return val.real();
}

}  // namespace

void AnalyticParams::validate() const {
  if (!(omega > 0)) throw InvalidArgument("analytic model: omega must be positive");
  if (!(k >= 0) || !(gamma >= 0)) throw InvalidArgument("analytic model: k and gamma must be >= 0");
}

SignalPoint analytic_signal(const AnalyticParams& p, double t) {
  p.validate();
  if (!(t >= 0)) throw InvalidArgument("analytic_signal: t must be >= 0");
  const double decay = std::exp(-p.k * t);
  SignalPoint out;
  out.p_e_branch = 0.5 * (1.0 + std::exp(-p.gamma * t) * std::cos(p.omega * t)) * decay;
  out.p_g_branch = 0.5 * (1.0 - decay);
  out.p = out.p_e_branch + out.p_g_branch;
  return out;
}

GeneralSignalPoint analytic_signal_general(const AnalyticParams& p, double t) {
  p.validate();
  if (!(t >= 0)) throw InvalidArgument("analytic_signal_general: t must be >= 0");
  if (p.gamma >= p.omega) {
    throw OutOfRegime("analytic_signal_general: overdamped (gamma >= 2 k_perp E_perp)");
  }
  GeneralSignalPoint out;
  out.omega = std::sqrt(p.omega * p.omega - p.gamma * p.gamma);
  out.amplitude = std::sqrt(1.0 + (p.gamma / out.omega) * (p.gamma / out.omega));
  out.phase = std::acos(out.omega / std::hypot(out.omega, p.gamma));
  const double a = p.k + p.gamma;
  out.p_e_branch = 0.5 * std::exp(-p.k * t) +
                   0.5 * out.amplitude * std::exp(-a * t) * std::cos(out.omega * t - out.phase);
  // k * integral of P^E
  const double integral = (p.k > 0 ? 0.5 * (1.0 - std::exp(-p.k * t)) / p.k : 0.5 * t) +
                          0.5 * out.amplitude * damped_cosine_integral(a, out.omega, out.phase, t);
  out.p = out.p_e_branch + p.k * integral;
  return out;
}

double analytic_dp_dk(const AnalyticParams& p, double t) {
  return -0.5 * t * std::cos(p.omega * t) * std::exp(-(p.k + p.gamma) * t);
}

double analytic_sensitivity(const AnalyticParams& p, double t) {
  p.validate();
  if (!(t > 0)) throw InvalidArgument("analytic_sensitivity: T must be positive");
  const double c = std::cos(p.omega * t);
  if (std::abs(c) < 1e-300) return kInf;
  const double a = (p.k + p.gamma) * t;
  const double inner = 1.0 - std::exp(-2.0 * a) * c * c;
  return std::abs(std::exp(a) / c * std::sqrt(std::max(inner, 0.0)) / std::sqrt(t));
}

SensitivityCurve sensitivity_from_signals(std::span<const double> t, std::span<const double> p,
                                          std::span<const double> p_plus,
                                          std::span<const double> p_minus, double delta_k) {
  if (p.size() != t.size() || p_plus.size() != t.size() || p_minus.size() != t.size()) {
    throw InvalidArgument("sensitivity: signal lengths differ from the time grid");
  }
  if (!(delta_k > 0)) throw InvalidArgument("sensitivity: delta_k must be positive");
  SensitivityCurve out;
  out.t.assign(t.begin(), t.end());
  out.p.assign(p.begin(), p.end());
  out.eta.resize(t.size());
  out.divergent.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dp_dk = (p_plus[i] - p_minus[i]) / (2.0 * delta_k);
    const bool bad = !(t[i] > 0) || !(p[i] > 0 && p[i] < 1) || std::abs(dp_dk) < kDerivativeFloor;
    out.divergent[i] = bad ? 1 : 0;
    out.eta[i] = bad ? kInf : std::sqrt(p[i] * (1.0 - p[i])) * std::sqrt(t[i]) / std::abs(dp_dk);
  }
  out.optimum = find_optimum(out.t, out.eta);
  return out;
}

SensitivityCurve analytic_pipeline_sensitivity(const AnalyticParams& p, std::span<const double> t,
                                               double delta_k) {
  p.validate();
  if (delta_k <= 0) delta_k = 1e-3 * p.k;
  std::vector<double> base(t.size()), plus(t.size()), minus(t.size());
  AnalyticParams hi = p;
  AnalyticParams lo = p;
  hi.k += delta_k;
  lo.k -= delta_k;
  if (lo.k < 0) throw InvalidArgument("sensitivity: delta_k larger than k");
  for (std::size_t i = 0; i < t.size(); ++i) {
    base[i] = analytic_signal(p, t[i]).p;
    plus[i] = analytic_signal(hi, t[i]).p;
    minus[i] = analytic_signal(lo, t[i]).p;
  }
  return sensitivity_from_signals(t, base, plus, minus, delta_k);
}

SensitivityCurve analytic_sensitivity_curve(const AnalyticParams& p, std::span<const double> t) {
  SensitivityCurve out;
  out.t.assign(t.begin(), t.end());
  for (double ti : t) {
    const double eta = analytic_sensitivity(p, ti);
    out.eta.push_back(eta);
    out.p.push_back(analytic_signal(p, ti).p);
    out.divergent.push_back(std::isfinite(eta) ? 0 : 1);
  }
  out.optimum = find_optimum(out.t, out.eta);
  return out;
}

std::vector<double> optimum_grid(double k, double gamma, std::size_t n) {
  if (!(k + gamma > 0)) throw InvalidArgument("optimum_grid: k + gamma must be positive");
  if (n < 3) throw InvalidArgument("optimum_grid: need at least three points");
  const double t_max = 5.0 / (k + gamma);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = t_max * static_cast<double>(i + 1) / static_cast<double>(n);
  return out;
}

Optimum find_optimum(std::span<const double> t, std::span<const double> eta) {
  if (t.size() != eta.size() || t.empty()) throw InvalidArgument("find_optimum: bad curve");
  std::size_t best = t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(eta[i])) continue;
    if (best == t.size() || eta[i] < eta[best]) best = i;
  }
  if (best == t.size()) throw NumericFailure("find_optimum: no finite sensitivity on the grid");

  Optimum out{t[best], eta[best], false, best};
  if (best == 0 || best + 1 == t.size() || !std::isfinite(eta[best - 1]) || !std::isfinite(eta[best + 1])) {
    out.on_boundary = best == 0 || best + 1 == t.size();
    return out;
  }
  // Parabola through three (possibly non-uniform) points, Lagrange form.
  const double x0 = t[best - 1], x1 = t[best], x2 = t[best + 1];
  const double y0 = eta[best - 1], y1 = eta[best], y2 = eta[best + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature > 0) {
    const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    if (vertex > x0 && vertex < x2) {
      out.t_op = vertex;
      out.eta_op = y1 + d01 * (vertex - x1) + curvature * (vertex - x0) * (vertex - x1);
    }
  }
  return out;
}

RateFit fit_keff(std::span<const double> t, std::span<const double> p_e) {
  if (t.size() != p_e.size()) throw InvalidArgument("fit_keff: length mismatch");
  if (t.size() < 3) throw FitFailure("fit_keff: need at least three samples");

  // Seed: ordinary least squares of log P_E against t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(p_e[i] > 0)) continue;
    const double y = std::log(p_e[i]);
    sx += t[i];
    sy += y;
    sxx += t[i] * t[i];
    sxy += t[i] * y;
    ++used;
  }
  if (used < 2) throw FitFailure("fit_keff: fewer than two positive samples");
  const double denom = used * sxx - sx * sx;
  if (!(denom > 0)) throw FitFailure("fit_keff: degenerate time samples");
  const double k_init = -(used * sxy - sx * sy) / denom;
  if (!(k_init > 0) || !std::isfinite(k_init)) throw FitFailure("fit_keff: trace does not decay");

  RateFit out;
  out.k_initial = k_init;
  out.window_start = t.front();
  out.window_end = std::min(t.front() + 3.0 / k_init, t.back());
  std::vector<double> wt, wp;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < out.window_start || t[i] > out.window_end) continue;
    if (!(p_e[i] > 0)) throw FitFailure("fit_keff: P_E not positive inside the fit window");
    wt.push_back(t[i]);
    wp.push_back(p_e[i]);
  }
  if (wt.size() < 2) throw FitFailure("fit_keff: fit window holds fewer than two samples");

  auto cost = [&](double k) {
    double c = 0;
    for (std::size_t i = 0; i < wt.size(); ++i) {
      const double r = std::exp(-k * wt[i]) - wp[i];
      c += r * r;
    }
    return c;
  };

  // Gauss-Newton with step halving on the single parameter k.
  double k = k_init;
  double c = cost(k);
  for (int iter = 0; iter < 200; ++iter) {
    double jtr = 0, jtj = 0;
    for (std::size_t i = 0; i < wt.size(); ++i) {
      const double e = std::exp(-k * wt[i]);
      const double jac = -wt[i] * e;
      jtr += jac * (e - wp[i]);
      jtj += jac * jac;
    }
    if (!(jtj > 0)) break;
    double step = -jtr / jtj;
    double trial = k + step;
    double c_trial = cost(trial);
    int halvings = 0;
    while ((!(trial > 0) || c_trial > c) && halvings < 60) {
      step *= 0.5;
      trial = k + step;
      c_trial = cost(trial);
      ++halvings;
    }
    if (halvings == 60) break;
    const bool converged = std::abs(step) <= 1e-15 * std::abs(k);
    k = trial;
    c = c_trial;
    if (converged) break;
  }
  if (!(k > 0) || !std::isfinite(k)) throw FitFailure("fit_keff: least squares did not converge");
  out.k_eff = k;
  out.samples = wt.size();
  out.residual = std::sqrt(c / static_cast<double>(wt.size()));
  return out;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("log_log_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw InvalidArgument("log_log_slope: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace rpnv
