#include "rpnv/simulation.hpp"

#include "rpnv/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace rpnv {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::vector<std::exception_ptr> errors(n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SignalTrace simulate_signal(const JointModel& model, const TimeGrid& grid, Method method,
                            const KrylovOptions& krylov) {
  SignalRecorder rec(model.reg, method);
  switch (method) {
    case Method::numeric_dense:
      propagate_dense(model.liouvillian, model.rho0, grid, rec.visitor());
      break;
    case Method::numeric_krylov:
      propagate_krylov(model.liouvillian, model.rho0, grid, rec.visitor(), krylov);
      break;
    case Method::analytic:
      throw InvalidArgument("simulate_signal: analytic is not a propagation method");
  }
  return rec.take();
}

SignalTrace simulate_signal(const ModelParams& p, const TimeGrid& grid, Method method,
                            const KrylovOptions& krylov) {
  return simulate_signal(build_joint_model(p), grid, method, krylov);
}

RateFit fit_model_keff(const ModelParams& p, const KeffOptions& options) {
  ModelParams q = p;
  if (!q.dipolar) q.include_nv = false;
  const SignalTrace trace = simulate_signal(q, TimeGrid{0.0, options.t_max, options.points});
  return fit_keff(trace.times, trace.p_e);
}

SensitivityCurve numeric_sensitivity(const ModelParams& p, const SensitivityOptions& options) {
  if (p.rates.k_singlet != p.rates.k_triplet) {
    throw InvalidArgument("numeric_sensitivity: needs uniform recombination (k_s = k_t)");
  }
  if (!p.include_nv) throw InvalidArgument("numeric_sensitivity: the NV site is required");
  const double k = p.rates.k_singlet;
  const double gamma = p.rates.dephasing;
  const double delta_k = options.relative_step * k;
  if (!(delta_k > 0)) throw InvalidArgument("numeric_sensitivity: k must be positive");

  const std::vector<double> t = optimum_grid(k, gamma, options.grid_points);
  const TimeGrid grid{0.0, t.back(), t.size() + 1};

  ModelParams base = radical_spin_is_spectator(p) ? without_nuclei(p) : p;
  auto run = [&](double rate) {
    ModelParams q = base;
    q.rates.k_singlet = rate;
    q.rates.k_triplet = rate;
    const SignalTrace tr = simulate_signal(q, grid, options.method);
    return std::vector<double>(tr.p.begin() + 1, tr.p.end());
  };
  const std::vector<double> p0 = run(k);
  const std::vector<double> p_plus = run(k + delta_k);
  const std::vector<double> p_minus = run(k - delta_k);
  return sensitivity_from_signals(t, p0, p_plus, p_minus, delta_k);
}

SensitivityResult sensitivity_pipeline(const ModelParams& p, const KeffOptions& keff,
                                       const SensitivityOptions& options) {
  SensitivityResult out;
  out.fit = fit_model_keff(p, keff);
  out.k = out.fit.k_eff;
  out.omega = rabi_frequency(p.nv, p.geometry);
  ModelParams q = p;
  q.rates.k_singlet = out.k;
  q.rates.k_triplet = out.k;
  q.include_nv = true;
  out.curve = numeric_sensitivity(q, options);
  return out;
}

double relative_modulation(const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0;
  std::size_t n = 0;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
    ++n;
  }
  if (n == 0) throw NumericFailure("relative_modulation: no finite values");
  return (hi - lo) / (sum / static_cast<double>(n));
}

double KeffMap::modulation() const { return relative_modulation(k_eff); }

KeffMap keff_map(const ModelParams& p, const std::vector<double>& theta, const std::vector<double>& phi,
                 unsigned jobs, const KeffOptions& options) {
  if (theta.empty() || phi.empty()) throw InvalidArgument("keff_map: empty angle grid");
  KeffMap out{theta, phi, std::vector<double>(theta.size() * phi.size()),
              std::vector<std::string>(theta.size() * phi.size())};
  parallel_for(out.k_eff.size(), jobs, [&](std::size_t idx) {
    ModelParams q = p;
    q.field.theta = theta[idx / phi.size()];
    q.field.phi = phi[idx % phi.size()];
    try {
      out.k_eff[idx] = fit_model_keff(q, options).k_eff;
    } catch (const NumericFailure& e) {
      out.k_eff[idx] = std::numeric_limits<double>::quiet_NaN();
      out.failures[idx] = e.what();
    }
  });
  return out;
}

}  // namespace rpnv
