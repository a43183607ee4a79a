#include "rpnv/cli/experiments.hpp"

#include "rpnv/analytics.hpp"
#include "rpnv/errors.hpp"
#include "rpnv/pulses.hpp"
#include "rpnv/simulation.hpp"
#include "rpnv/units.hpp"
#include "rpnv/version.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace rpnv::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double khz(double eta) { return units::to_khz_per_sqrt_hz(eta); }
double us(double t) { return units::s_to_us(t); }
double mhz(double k) { return units::rate_to_mhz(k); }

// JSON has no NaN; missing values become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

KeffOptions keff_options(const Config& c) {
  return {units::us_to_s(c.experiment.keff.t_max_us), c.experiment.keff.points};
}

SensitivityOptions sensitivity_options(const Config& c) {
  return {c.experiment.sensitivity.grid_points, c.experiment.sensitivity.relative_step, c.experiment.method};
}

// Runs `point` for each index; a NumericFailure or OutOfRegime marks that point
// as failed instead of aborting the sweep.
template <class Point>
std::vector<std::string> sweep(std::size_t n, unsigned jobs, Point&& point) {
  std::vector<std::string> errors(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    try {
      point(i);
    } catch (const NumericFailure& e) {
      errors[i] = e.what();
    } catch (const OutOfRegime& e) {
      errors[i] = e.what();
    }
  });
  return errors;
}

void collect(ResultBundle& b, const std::vector<std::string>& errors, const std::string& what,
             const std::vector<double>& values) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) b.failures.push_back(what + "=" + format_number(values[i]) + ": " + errors[i]);
  }
}

std::string status(const std::string& error) { return error.empty() ? "ok" : "failed"; }

ResultBundle run_signal(const Config& c, unsigned) {
  const ModelParams& m = c.model;
  ResultBundle b{"signal", {}, {}, {}};
  const RateFit fit = fit_model_keff(m, keff_options(c));
  const double omega = rabi_frequency(m.nv, m.geometry);
  const TimeGrid grid =
      TimeGrid::resolving(0.0, units::us_to_s(c.experiment.signal.t_max_us), omega, c.experiment.signal.points_per_period);

  const SignalTrace tr = simulate_signal(m, grid, c.experiment.method);
  ModelParams uniform = m;
  uniform.rates.k_singlet = uniform.rates.k_triplet = fit.k_eff;
  if (radical_spin_is_spectator(uniform)) uniform = without_nuclei(uniform);
  const SignalTrace tu = simulate_signal(uniform, grid, c.experiment.method);

  const AnalyticParams ap{omega, fit.k_eff, m.rates.dephasing};
  const bool underdamped = m.rates.dephasing < omega;
  std::vector<std::string> header{"t_us", "P_numeric", "P_analytic", "P_E", "P_G", "P_numeric_keff", "P_E_keff",
                                  "P_E_analytic"};
  if (underdamped) header.push_back("P_analytic_general");
  CsvTable t(header);
  double max_dev = 0, max_dev_keff = 0, max_dev_general = 0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double ti = tr.times[i];
    const SignalPoint a = analytic_signal(ap, ti);
    max_dev = std::max(max_dev, std::abs(tr.p[i] - a.p));
    max_dev_keff = std::max(max_dev_keff, std::abs(tu.p[i] - a.p));
    auto row = t.row();
    row << us(ti) << tr.p[i] << a.p << tr.p_e[i] << tr.p_g[i] << tu.p[i] << tu.p_e[i] << std::exp(-fit.k_eff * ti);
    if (underdamped) {
      const double g = analytic_signal_general(ap, ti).p;
      max_dev_general = std::max(max_dev_general, std::abs(tr.p[i] - g));
      row << g;
    }
  }
  b.tables.emplace_back("signal", std::move(t));
  const double e_perp = transverse_component(nv_frame_efield(m.geometry)).magnitude;
  b.results = {{"k_eff_MHz", mhz(fit.k_eff)},
               {"k_eff_fit_residual", fit.residual},
               {"E_perp_MV_per_m", units::v_per_m_to_mv_per_m(e_perp)},
               {"Omega_rad_per_us", omega * 1e-6},
               {"max_abs_deviation_numeric_vs_analytic", max_dev},
               {"max_abs_deviation_keff_model_vs_analytic", max_dev_keff},
               {"method", std::string(to_string(c.experiment.method))},
               {"samples", tr.times.size()}};
  if (underdamped) b.results["max_abs_deviation_numeric_vs_analytic_general"] = max_dev_general;
  return b;
}

ResultBundle run_sensitivity(const Config& c, unsigned) {
  const ModelParams& m = c.model;
  ResultBundle b{"sensitivity", {}, {}, {}};
  const SensitivityResult s = sensitivity_pipeline(m, keff_options(c), sensitivity_options(c));
  const AnalyticParams ap{s.omega, s.k, m.rates.dephasing};
  const SensitivityCurve an = analytic_sensitivity_curve(ap, s.curve.t);
  CsvTable t({"T_us", "eta_kHz_per_sqrtHz", "eta_analytic_kHz_per_sqrtHz", "P_numeric", "divergent"});
  for (std::size_t i = 0; i < s.curve.t.size(); ++i) {
    t.row() << us(s.curve.t[i]) << khz(s.curve.eta[i]) << khz(an.eta[i]) << s.curve.p[i]
            << static_cast<int>(s.curve.divergent[i]);
  }
  b.tables.emplace_back("sensitivity", std::move(t));
  b.results = {{"eta_op_kHz_per_sqrtHz", khz(s.curve.optimum.eta_op)},
               {"T_op_us", us(s.curve.optimum.t_op)},
               {"optimum_on_boundary", s.curve.optimum.on_boundary},
               {"eta_op_analytic_kHz_per_sqrtHz", khz(an.optimum.eta_op)},
               {"T_op_analytic_us", us(an.optimum.t_op)},
               {"analytic_optimum_on_boundary", an.optimum.on_boundary},
               {"k_eff_MHz", mhz(s.k)},
               {"Omega_rad_per_us", s.omega * 1e-6}};
  if (s.curve.optimum.on_boundary) b.failures.push_back("optimum lies on the grid boundary");
  return b;
}

std::vector<double> linspace_closed(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<double> periodic(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = units::kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return out;
}

json map_stats(const KeffMap& map) {
  double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t n = 0;
  for (double k : map.k_eff) {
    if (!std::isfinite(k)) continue;
    sum += k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    ++n;
  }
  if (n == 0) return {{"cells_ok", 0}};
  return {{"k_eff_mean_MHz", mhz(sum / n)},
          {"k_eff_min_MHz", mhz(lo)},
          {"k_eff_max_MHz", mhz(hi)},
          {"modulation_percent", 100.0 * map.modulation()},
          {"cells_ok", n}};
}

void collect_map(ResultBundle& b, const KeffMap& map, const std::string& prefix) {
  for (std::size_t i = 0; i < map.k_eff.size(); ++i) {
    if (map.failures[i].empty()) continue;
    b.failures.push_back(prefix + "theta=" + format_number(map.theta[i / map.phi.size()]) +
                         " phi=" + format_number(map.phi[i % map.phi.size()]) + ": " + map.failures[i]);
  }
}

ResultBundle run_keff_map(const Config& c, unsigned jobs) {
  ResultBundle b{"keff-map", {}, {}, {}};
  const auto theta = linspace_closed(0.0, units::kPi, c.experiment.keff_map.theta_points);
  const auto phi = periodic(c.experiment.keff_map.phi_points);
  const KeffMap map = keff_map(c.model, theta, phi, jobs, keff_options(c));
  CsvTable t({"theta_rad", "phi_rad", "k_eff_MHz", "status"});
  for (std::size_t i = 0; i < map.k_eff.size(); ++i) {
    t.row() << theta[i / phi.size()] << phi[i % phi.size()] << mhz(map.k_eff[i]) << status(map.failures[i]);
  }
  b.tables.emplace_back("keff-map", std::move(t));
  b.results = map_stats(map);
  b.results["B0_mT"] = units::tesla_to_mt(c.model.field.magnitude);
  collect_map(b, map, "");
  return b;
}

ResultBundle run_keff_phi(const Config& c, unsigned jobs) {
  ResultBundle b{"keff-phi", {}, {}, {}};
  const auto phi = periodic(c.experiment.keff_phi.phi_points);
  CsvTable t({"Gamma_MHz", "theta_rad", "phi_rad", "k_eff_MHz", "status"});
  json per = json::array();
  for (double g : c.experiment.keff_phi.relaxation_mhz) {
    ModelParams m = c.model;
    m.rates.relaxation = units::mhz_to_rate(g);
    const KeffMap map = keff_map(m, {m.field.theta}, phi, jobs, keff_options(c));
    for (std::size_t j = 0; j < phi.size(); ++j) {
      t.row() << g << m.field.theta << phi[j] << mhz(map.k_eff[j]) << status(map.failures[j]);
    }
    json s = map_stats(map);
    s["Gamma_MHz"] = g;
    per.push_back(s);
    collect_map(b, map, "Gamma=" + format_number(g) + " ");
  }
  b.tables.emplace_back("keff-phi", std::move(t));
  b.results = {{"per_relaxation_rate", per}, {"theta_rad", c.model.field.theta}};
  return b;
}

struct OptimumRow {
  double k_eff = kNaN;
  double eta = kNaN;
  double t_op = kNaN;
  double eta_analytic = kNaN;
  double t_analytic = kNaN;
  bool analytic_on_boundary = false;
  double omega = kNaN;
};

OptimumRow optimum_row(const Config& c, const ModelParams& m) {
  const SensitivityResult s = sensitivity_pipeline(m, keff_options(c), sensitivity_options(c));
  OptimumRow r{s.k, s.curve.optimum.eta_op, s.curve.optimum.t_op};
  r.omega = s.omega;
  const SensitivityCurve an = analytic_sensitivity_curve({s.omega, s.k, m.rates.dephasing}, s.curve.t);
  r.eta_analytic = an.optimum.eta_op;
  r.t_analytic = an.optimum.t_op;
  r.analytic_on_boundary = an.optimum.on_boundary;
  return r;
}

template <class Mutate>
ResultBundle optimum_sweep(const Config& c, unsigned jobs, const std::string& name, const std::string& column,
                           const std::vector<double>& values, Mutate&& mutate) {
  ResultBundle b{name, {}, {}, {}};
  std::vector<OptimumRow> rows(values.size());
  const auto errors = sweep(values.size(), jobs, [&](std::size_t i) {
    ModelParams m = c.model;
    mutate(m, values[i]);
    rows[i] = optimum_row(c, m);
  });
  CsvTable t({column, "k_eff_MHz", "eta_op_kHz_per_sqrtHz", "T_op_us", "eta_op_analytic_kHz_per_sqrtHz",
              "T_op_analytic_us", "analytic_on_boundary", "Omega_rad_per_us", "status"});
  std::vector<double> t_ops;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const OptimumRow& r = rows[i];
    t.row() << values[i] << mhz(r.k_eff) << khz(r.eta) << us(r.t_op) << khz(r.eta_analytic) << us(r.t_analytic)
            << static_cast<int>(r.analytic_on_boundary) << r.omega * 1e-6 << status(errors[i]);
    if (std::isfinite(r.t_op)) t_ops.push_back(r.t_op);
  }
  b.tables.emplace_back(name, std::move(t));
  collect(b, errors, column, values);
  if (!t_ops.empty()) {
    const auto [lo, hi] = std::minmax_element(t_ops.begin(), t_ops.end());
    b.results["T_op_spread_percent"] = 100.0 * relative_modulation(t_ops);
    b.results["T_op_min_us"] = us(*lo);
    b.results["T_op_max_us"] = us(*hi);
  }
  json pts = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    pts.push_back({{column, values[i]},
                   {"eta_op_kHz_per_sqrtHz", num(khz(rows[i].eta))},
                   {"T_op_us", num(us(rows[i].t_op))},
                   {"k_eff_MHz", num(mhz(rows[i].k_eff))}});
  }
  b.results["points"] = pts;
  return b;
}

ResultBundle run_noise_sweep(const Config& c, unsigned jobs) {
  return optimum_sweep(c, jobs, "noise-sweep", "gamma_MHz", c.experiment.noise_gamma_mhz,
                       [](ModelParams& m, double g) { m.rates.dephasing = units::mhz_to_rate(g); });
}

ResultBundle run_relaxation(const Config& c, unsigned jobs) {
  return optimum_sweep(c, jobs, "relaxation", "Gamma_MHz", c.experiment.relaxation_mhz,
                       [](ModelParams& m, double g) { m.rates.relaxation = units::mhz_to_rate(g); });
}

ResultBundle run_depth_sweep(const Config& c, unsigned jobs) {
  ResultBundle b = optimum_sweep(c, jobs, "depth-sweep", "d1_nm", c.experiment.depth_nm,
                                 [](ModelParams& m, double d) { m.geometry.nv_depth = units::nm_to_m(d); });
  return b;
}

ResultBundle run_nucleus_variant(const Config& c, unsigned jobs) {
  ResultBundle b{"nucleus-variant", {}, {}, {}};
  std::vector<VariantSettings> variants = c.experiment.variants;
  if (variants.empty()) variants.push_back({"model", c.model.rp.hyperfines});
  std::vector<OptimumRow> rows(variants.size());
  const auto errors = sweep(variants.size(), jobs, [&](std::size_t i) {
    ModelParams m = c.model;
    m.rp.hyperfines = variants[i].hyperfines;
    m.validate();
    rows[i] = optimum_row(c, m);
  });
  CsvTable t({"variant", "nuclei", "k_eff_MHz", "eta_op_kHz_per_sqrtHz", "T_op_us", "status"});
  json pts = json::array();
  for (std::size_t i = 0; i < variants.size(); ++i) {
    std::string nuclei;
    for (const auto& h : variants[i].hyperfines) nuclei += (nuclei.empty() ? "" : " ") + h.nucleus;
    t.row() << variants[i].name << nuclei << mhz(rows[i].k_eff) << khz(rows[i].eta) << us(rows[i].t_op)
            << status(errors[i]);
    pts.push_back({{"variant", variants[i].name},
                   {"eta_op_kHz_per_sqrtHz", num(khz(rows[i].eta))},
                   {"T_op_us", num(us(rows[i].t_op))},
                   {"k_eff_MHz", num(mhz(rows[i].k_eff))}});
    if (!errors[i].empty()) b.failures.push_back(variants[i].name + ": " + errors[i]);
  }
  b.tables.emplace_back("nucleus-variant", std::move(t));
  b.results = {{"variants", pts}};
  return b;
}

ResultBundle run_dipolar_sweep(const Config& c, unsigned jobs) {
  ResultBundle b{"dipolar-sweep", {}, {}, {}};
  const auto& depths = c.experiment.dipolar_depth_nm;
  std::vector<double> with(depths.size(), kNaN), without(depths.size(), kNaN);
  const auto errors = sweep(depths.size(), jobs, [&](std::size_t i) {
    ModelParams m = c.model;
    m.geometry.nv_depth = units::nm_to_m(depths[i]);
    m.dipolar = false;
    without[i] = fit_model_keff(m, keff_options(c)).k_eff;
    m.dipolar = true;
    m.include_nv = true;
    with[i] = fit_model_keff(m, keff_options(c)).k_eff;
  });
  CsvTable t({"d1_nm", "k_eff_dipolar_MHz", "k_eff_reference_MHz", "relative_change", "status"});
  json pts = json::array();
  for (std::size_t i = 0; i < depths.size(); ++i) {
    const double rel = (with[i] - without[i]) / without[i];
    t.row() << depths[i] << mhz(with[i]) << mhz(without[i]) << rel << status(errors[i]);
    pts.push_back({{"d1_nm", depths[i]}, {"relative_change", num(rel)}});
  }
  b.tables.emplace_back("dipolar-sweep", std::move(t));
  collect(b, errors, "d1_nm", depths);
  b.results = {{"points", pts}};
  return b;
}

ResultBundle run_efield_permittivity(const Config& c, unsigned) {
  ResultBundle b{"efield-permittivity", {}, {}, {}};
  CsvTable t({"eps_r1", "E_x_MV_per_m", "E_y_MV_per_m", "E_z_MV_per_m", "E_perp_MV_per_m", "Omega_rad_per_us"});
  std::vector<double> perp;
  for (double eps : c.experiment.permittivity) {
    Geometry g = c.model.geometry;
    g.eps_outside = eps;
    const FieldVector e = nv_frame_efield(g);
    const double ep = transverse_component(e).magnitude;
    perp.push_back(ep);
    t.row() << eps << units::v_per_m_to_mv_per_m(e.value.x()) << units::v_per_m_to_mv_per_m(e.value.y())
            << units::v_per_m_to_mv_per_m(e.value.z()) << units::v_per_m_to_mv_per_m(ep)
            << 2.0 * c.model.nv.k_perpendicular * ep * 1e-6;
  }
  b.tables.emplace_back("efield-permittivity", std::move(t));
  bool monotone = true;
  for (std::size_t i = 1; i < perp.size(); ++i) {
    const bool increasing_eps = c.experiment.permittivity[i] > c.experiment.permittivity[i - 1];
    if (increasing_eps && !(perp[i] < perp[i - 1])) monotone = false;
  }
  const FieldVector e0 = nv_frame_efield(c.model.geometry);
  const TransverseField tf = transverse_component(e0);
  b.results = {{"E_perp_MV_per_m", units::v_per_m_to_mv_per_m(tf.magnitude)},
               {"E_perp_azimuth_rad", tf.azimuth},
               {"E_parallel_MV_per_m", units::v_per_m_to_mv_per_m(e0.value.z())},
               {"dipole_azimuth_rad", c.model.geometry.dipole_azimuth},
               {"decreasing_with_eps_r1", monotone}};
  return b;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(std::log(a) + (std::log(b) - std::log(a)) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

double slope_in(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= lo * (1 - 1e-12) && x[i] <= hi * (1 + 1e-12) && std::isfinite(y[i]) && y[i] > 0) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
  }
  return xs.size() >= 2 ? log_log_slope(xs, ys) : kNaN;
}

ResultBundle run_pulses(const Config& c, unsigned) {
  ResultBundle b{"pulses", {}, {}, {}};
  const PulseSettings& ps = c.experiment.pulses;
  const ModelParams& m = c.model;
  const FieldVector bt{units::mt_to_tesla(ps.transverse_b_mt) *
                           Eigen::Vector3d(std::cos(m.field.phi), std::sin(m.field.phi), 0.0),
                       Frame::nv};
  const FieldVector e = nv_frame_efield(m.geometry);
  const Matrix h = nv_hamiltonian(m.nv, bt, e);
  const Matrix h_omega = decoupled_hamiltonian(m.nv, e);
  const std::vector<double> taus = logspace(ps.tau_min_ns * 1e-9, ps.tau_max_ns * 1e-9, ps.points);
  std::vector<double> err(taus.size()), heff(taus.size(), kNaN);
  CsvTable t({"tau_ns", "sequence_error", "effective_hamiltonian_error_rad_per_s", "D_tau"});
  for (std::size_t i = 0; i < taus.size(); ++i) {
    err[i] = sequence_error(h, h_omega, taus[i]);
    try {
      heff[i] = effective_hamiltonian_error(h, h_omega, taus[i]);
    } catch (const OutOfRegime&) {
      // beyond the principal-log range; left as nan
    }
    t.row() << taus[i] * 1e9 << err[i] << heff[i] << m.nv.zero_field_splitting * taus[i];
  }
  b.tables.emplace_back("pulses", std::move(t));
  // Short-time window: D tau <= 0.1.
  const double short_max = 0.1 / m.nv.zero_field_splitting;
  b.results = {{"slope_sequence_error_0p1_to_1ns", num(slope_in(taus, err, 1e-10, 1e-9))},
               {"slope_sequence_error_short_tau", num(slope_in(taus, err, 0.0, short_max))},
               {"slope_effective_hamiltonian_error_short_tau", num(slope_in(taus, heff, 0.0, short_max))},
               {"short_tau_limit_ns", short_max * 1e9},
               {"B_perp_mT", ps.transverse_b_mt}};
  return b;
}

ResultBundle run_montecarlo(const Config& c, unsigned jobs) {
  ResultBundle b{"montecarlo", {}, {}, {}};
  const MonteCarloSettings& s = c.experiment.montecarlo;
  ShotConfig cfg;
  cfg.measurement_time = units::us_to_s(s.t_m_us);
  cfg.repetitions = s.repetitions;
  cfg.events = s.events;
  cfg.rates = s.rates;
  cfg.omega = rabi_frequency(c.model.nv, c.model.geometry);
  cfg.seed = c.experiment.seed;

  const auto events = sample_events(cfg, jobs);
  CsvTable ev({"event", "component", "t_rec_us", "truth", "estimate", "error_bar"});
  std::size_t early = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const ShotRecord& r = events[i];
    ev.row() << i << r.component << us(r.t_rec) << r.truth << r.estimate << r.error_bar;
    if (r.t_rec < cfg.measurement_time) ++early;
  }

  std::vector<double> grid(s.grid_points);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = units::us_to_s(s.grid_max_us) * static_cast<double>(i + 1) / static_cast<double>(grid.size());
  }
  const auto avg = ensemble_average(cfg, grid, jobs);
  CsvTable t({"t_m_us", "P_montecarlo", "standard_error", "P_closed_form", "early_fraction",
              "early_fraction_expected"});
  double max_z = 0;
  for (const auto& p : avg) {
    double expected = 0;
    for (const auto& r : cfg.rates) expected += r.weight * (1.0 - std::exp(-r.k * p.measurement_time));
    t.row() << us(p.measurement_time) << p.mean << p.standard_error << p.closed_form << p.early_fraction << expected;
    if (p.standard_error > 0) max_z = std::max(max_z, std::abs(p.mean - p.closed_form) / p.standard_error);
  }
  double expected_early = 0;
  for (const auto& r : cfg.rates) expected_early += r.weight * (1.0 - std::exp(-r.k * cfg.measurement_time));
  b.tables.emplace_back("montecarlo", std::move(t));
  b.tables.emplace_back("montecarlo-events", std::move(ev));
  b.results = {{"max_standard_errors_from_closed_form", max_z},
               {"early_fraction", static_cast<double>(early) / static_cast<double>(events.size())},
               {"early_fraction_expected", expected_early},
               {"late_fraction_expected", 1.0 - expected_early},
               {"Omega_rad_per_us", cfg.omega * 1e-6},
               {"seed", cfg.seed}};
  return b;
}

using Runner = std::function<ResultBundle(const Config&, unsigned)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"signal", run_signal},
      {"sensitivity", run_sensitivity},
      {"keff-map", run_keff_map},
      {"keff-phi", run_keff_phi},
      {"noise-sweep", run_noise_sweep},
      {"relaxation", run_relaxation},
      {"nucleus-variant", run_nucleus_variant},
      {"depth-sweep", run_depth_sweep},
      {"dipolar-sweep", run_dipolar_sweep},
      {"efield-permittivity", run_efield_permittivity},
      {"pulses", run_pulses},
      {"montecarlo", run_montecarlo},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "signal",      "sensitivity",   "keff-map",      "keff-phi",
      "noise-sweep", "relaxation",    "nucleus-variant", "depth-sweep",
      "dipolar-sweep", "efield-permittivity", "pulses", "montecarlo"};
  return names;
}

bool is_experiment(const std::string& name) { return runners().count(name) > 0; }

ResultBundle run_experiment(const std::string& name, const Config& cfg, unsigned jobs) {
  auto it = runners().find(name);
  if (it == runners().end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second(cfg, jobs);
}

json summary_json(const ResultBundle& bundle, const Config& cfg) {
  json files = json::array();
  for (const auto& [stem, table] : bundle.tables) files.push_back(stem + ".csv");
  return {{"experiment", bundle.experiment},
          {"version", kVersion},
          {"config_hash", config_hash(cfg)},
          {"partial", bundle.partial()},
          {"failures", bundle.failures},
          {"results", bundle.results},
          {"tables", files},
          {"config", to_json(cfg)}};
}

std::vector<std::filesystem::path> write_bundle(const ResultBundle& bundle, const Config& cfg,
                                                const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  const Provenance prov{bundle.experiment, config_hash(cfg), kVersion};
  if (cfg.output.csv) {
    for (const auto& [stem, table] : bundle.tables) {
      written.push_back(dir / (stem + ".csv"));
      write_csv(written.back(), prov, table);
    }
  }
  if (cfg.output.json) {
    written.push_back(dir / (bundle.experiment + ".json"));
    write_json(written.back(), summary_json(bundle, cfg));
  }
  return written;
}

}  // namespace rpnv::cli
