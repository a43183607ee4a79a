#include "rpnv/cli/config.hpp"

#include "rpnv/errors.hpp"
#include "rpnv/units.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace rpnv::cli {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  const json* child(const char* key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void number(const char* key, double& out) {
    if (const json* v = child(key)) out = as_number(*v, path(key));
  }

  // Stores convert(value) only when the key is present, so absent keys keep
  // the exact default instead of a unit round trip.
  void number(const char* key, double& out, double (*convert)(double)) {
    if (const json* v = child(key)) out = convert(as_number(*v, path(key)));
  }

  void count(const char* key, std::size_t& out) {
    if (const json* v = child(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        throw ConfigError(path(key) + ": expected a non-negative integer");
      }
      out = v->get<std::size_t>();
    }
  }

  void integer(const char* key, int& out) {
    if (const json* v = child(key)) {
      if (!v->is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
      out = v->get<int>();
    }
  }

  void seed(const char* key, std::uint64_t& out) {
    if (const json* v = child(key)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
        throw ConfigError(path(key) + ": expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* v = child(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const char* key, std::string& out) {
    if (const json* v = child(key)) {
      if (!v->is_string()) throw ConfigError(path(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = child(key)) {
      if (!v->is_array()) throw ConfigError(path(key) + ": expected an array of numbers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        out.push_back(as_number((*v)[i], path(key) + "[" + std::to_string(i) + "]"));
      }
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(path(it.key().c_str()) + ": unknown key");
    }
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
    return x;
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ConfigError(where + ": " + what);
}

Eigen::Vector3d vec3(const json& v, const std::string& where) {
  require(v.is_array() && v.size() == 3, where, "expected three numbers");
  return {Reader::as_number(v[0], where + "[0]"), Reader::as_number(v[1], where + "[1]"),
          Reader::as_number(v[2], where + "[2]")};
}

HyperfineTensor parse_tensor(const json& j, const std::string& path) {
  Reader r(j, path);
  HyperfineTensor t;
  t.principal_mt.setZero();
  t.axes.setIdentity();
  r.string("nucleus", t.nucleus);
  require(!t.nucleus.empty(), r.path("nucleus"), "required");
  r.integer("electron", t.electron);
  require(t.electron == 1 || t.electron == 2, r.path("electron"), "must be 1 or 2");
  r.integer("nuclear_spin_2s", t.nuclear_two_s);
  require(t.nuclear_two_s >= 1, r.path("nuclear_spin_2s"), "must be >= 1");
  const json* pv = r.child("principal_mT");
  require(pv != nullptr, r.path("principal_mT"), "required");
  t.principal_mt = vec3(*pv, r.path("principal_mT"));
  if (const json* ax = r.child("axes")) {
    require(ax->is_array() && ax->size() == 3, r.path("axes"), "expected a 3x3 array (rows)");
    for (int i = 0; i < 3; ++i) {
      t.axes.row(i) = vec3((*ax)[i], r.path("axes") + "[" + std::to_string(i) + "]").transpose();
    }
  }
  r.finish();
  try {
    t.validate();
  } catch (const rpnv::Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return t;
}

json tensor_json(const HyperfineTensor& t) {
  json axes = json::array();
  for (int i = 0; i < 3; ++i) axes.push_back({t.axes(i, 0), t.axes(i, 1), t.axes(i, 2)});
  return {{"nucleus", t.nucleus},
          {"electron", t.electron},
          {"nuclear_spin_2s", t.nuclear_two_s},
          {"principal_mT", {t.principal_mt[0], t.principal_mt[1], t.principal_mt[2]}},
          {"axes", axes}};
}

json tensors_json(const std::vector<HyperfineTensor>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(tensor_json(t));
  return out;
}

Method parse_method(const std::string& s, const std::string& where) {
  if (s == "dense") return Method::numeric_dense;
  if (s == "krylov") return Method::numeric_krylov;
  throw ConfigError(where + ": expected \"dense\" or \"krylov\"");
}

void parse_model(const json& j, ModelParams& m) {
  Reader r(j, "model");
  if (const json* v = r.child("nv")) {
    Reader n(*v, "model.nv");
    n.number("D_GHz", m.nv.zero_field_splitting, units::ghz_to_angular);
    n.number("k_parallel_Hz_m_per_V", m.nv.k_parallel, units::hz_m_per_v_to_angular);
    n.number("k_perpendicular_Hz_m_per_V", m.nv.k_perpendicular, units::hz_m_per_v_to_angular);
    n.number("gyro_GHz_per_T", m.nv.gyro, units::ghz_per_t_to_angular);
    n.finish();
    m.rp.gyro = m.nv.gyro;
  }
  if (const json* v = r.child("radical_pair")) {
    Reader rp(*v, "model.radical_pair");
    if (const json* h = rp.child("hyperfine")) m.rp.hyperfines = parse_hyperfines(*h, rp.path("hyperfine"));
    rp.finish();
  }
  if (const json* v = r.child("rates")) {
    Reader rr(*v, "model.rates");
    rr.number("k_s_MHz", m.rates.k_singlet, units::mhz_to_rate);
    rr.number("k_t_MHz", m.rates.k_triplet, units::mhz_to_rate);
    rr.number("gamma_MHz", m.rates.dephasing, units::mhz_to_rate);
    rr.number("Gamma_MHz", m.rates.relaxation, units::mhz_to_rate);
    rr.finish();
  }
  if (const json* v = r.child("geometry")) {
    Reader g(*v, "model.geometry");
    g.number("d1_nm", m.geometry.nv_depth, units::nm_to_m);
    g.number("d2_nm", m.geometry.pair_separation, units::nm_to_m);
    g.number("d3_nm", m.geometry.lateral_offset, units::nm_to_m);
    g.number("eps_r1", m.geometry.eps_outside);
    g.number("eps_r2", m.geometry.eps_diamond);
    g.number("dipole_azimuth_rad", m.geometry.dipole_azimuth);
    g.finish();
  }
  if (const json* v = r.child("field")) {
    Reader f(*v, "model.field");
    f.number("B0_mT", m.field.magnitude, units::mt_to_tesla);
    f.number("theta_rad", m.field.theta);
    f.number("phi_rad", m.field.phi);
    f.finish();
  }
  r.boolean("include_nv", m.include_nv);
  r.boolean("dipolar", m.dipolar);
  r.finish();
  try {
    m.validate();
  } catch (const rpnv::Error& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

void positive(double x, const std::string& where) { require(x > 0, where, "must be positive"); }

void non_negative(const std::vector<double>& xs, const std::string& where) {
  for (double x : xs) require(x >= 0, where, "values must be >= 0");
}

void parse_experiment(const json& j, ExperimentSettings& e) {
  Reader r(j, "experiment");
  if (const json* v = r.child("method")) {
    require(v->is_string(), r.path("method"), "expected a string");
    e.method = parse_method(v->get<std::string>(), r.path("method"));
  }
  r.seed("seed", e.seed);
  if (const json* v = r.child("signal")) {
    Reader s(*v, "experiment.signal");
    s.number("t_max_us", e.signal.t_max_us);
    s.number("points_per_period", e.signal.points_per_period);
    s.finish();
    positive(e.signal.t_max_us, s.path("t_max_us"));
    positive(e.signal.points_per_period, s.path("points_per_period"));
  }
  if (const json* v = r.child("keff")) {
    Reader s(*v, "experiment.keff");
    s.number("t_max_us", e.keff.t_max_us);
    s.count("points", e.keff.points);
    s.finish();
    positive(e.keff.t_max_us, s.path("t_max_us"));
    require(e.keff.points >= 3, s.path("points"), "must be >= 3");
  }
  if (const json* v = r.child("sensitivity")) {
    Reader s(*v, "experiment.sensitivity");
    s.count("grid_points", e.sensitivity.grid_points);
    s.number("relative_step", e.sensitivity.relative_step);
    s.finish();
    require(e.sensitivity.grid_points >= 3, s.path("grid_points"), "must be >= 3");
    require(e.sensitivity.relative_step > 0 && e.sensitivity.relative_step < 1, s.path("relative_step"),
            "must lie in (0, 1)");
  }
  if (const json* v = r.child("keff_map")) {
    Reader s(*v, "experiment.keff_map");
    s.count("theta_points", e.keff_map.theta_points);
    s.count("phi_points", e.keff_map.phi_points);
    s.finish();
    require(e.keff_map.theta_points >= 2, s.path("theta_points"), "must be >= 2");
    require(e.keff_map.phi_points >= 1, s.path("phi_points"), "must be >= 1");
  }
  if (const json* v = r.child("keff_phi")) {
    Reader s(*v, "experiment.keff_phi");
    s.count("phi_points", e.keff_phi.phi_points);
    s.numbers("Gamma_MHz", e.keff_phi.relaxation_mhz);
    s.finish();
    require(e.keff_phi.phi_points >= 1, s.path("phi_points"), "must be >= 1");
    non_negative(e.keff_phi.relaxation_mhz, s.path("Gamma_MHz"));
  }
  if (const json* v = r.child("noise_sweep")) {
    Reader s(*v, "experiment.noise_sweep");
    s.numbers("gamma_MHz", e.noise_gamma_mhz);
    s.finish();
    non_negative(e.noise_gamma_mhz, s.path("gamma_MHz"));
  }
  if (const json* v = r.child("relaxation")) {
    Reader s(*v, "experiment.relaxation");
    s.numbers("Gamma_MHz", e.relaxation_mhz);
    s.finish();
    non_negative(e.relaxation_mhz, s.path("Gamma_MHz"));
  }
  if (const json* v = r.child("nucleus_variant")) {
    Reader s(*v, "experiment.nucleus_variant");
    if (const json* list = s.child("variants")) {
      require(list->is_array(), s.path("variants"), "expected an array");
      e.variants.clear();
      for (std::size_t i = 0; i < list->size(); ++i) {
        const std::string where = s.path("variants") + "[" + std::to_string(i) + "]";
        Reader vr((*list)[i], where);
        VariantSettings var;
        vr.string("name", var.name);
        require(!var.name.empty(), vr.path("name"), "required");
        const json* h = vr.child("hyperfine");
        require(h != nullptr, vr.path("hyperfine"), "required");
        var.hyperfines = parse_hyperfines(*h, vr.path("hyperfine"));
        vr.finish();
        e.variants.push_back(std::move(var));
      }
    }
    s.finish();
  }
  if (const json* v = r.child("depth_sweep")) {
    Reader s(*v, "experiment.depth_sweep");
    s.numbers("d1_nm", e.depth_nm);
    s.finish();
    for (double d : e.depth_nm) positive(d, s.path("d1_nm"));
  }
  if (const json* v = r.child("dipolar_sweep")) {
    Reader s(*v, "experiment.dipolar_sweep");
    s.numbers("d1_nm", e.dipolar_depth_nm);
    s.finish();
    for (double d : e.dipolar_depth_nm) positive(d, s.path("d1_nm"));
  }
  if (const json* v = r.child("efield_permittivity")) {
    Reader s(*v, "experiment.efield_permittivity");
    s.numbers("eps_r1", e.permittivity);
    s.finish();
    for (double d : e.permittivity) positive(d, s.path("eps_r1"));
  }
  if (const json* v = r.child("pulses")) {
    Reader s(*v, "experiment.pulses");
    s.number("tau_min_ns", e.pulses.tau_min_ns);
    s.number("tau_max_ns", e.pulses.tau_max_ns);
    s.count("points", e.pulses.points);
    s.number("B_perp_mT", e.pulses.transverse_b_mt);
    s.finish();
    positive(e.pulses.tau_min_ns, s.path("tau_min_ns"));
    require(e.pulses.tau_max_ns > e.pulses.tau_min_ns, s.path("tau_max_ns"), "must exceed tau_min_ns");
    require(e.pulses.points >= 2, s.path("points"), "must be >= 2");
    require(e.pulses.transverse_b_mt >= 0, s.path("B_perp_mT"), "must be >= 0");
  }
  if (const json* v = r.child("montecarlo")) {
    Reader s(*v, "experiment.montecarlo");
    MonteCarloSettings& mc = e.montecarlo;
    s.number("t_m_us", mc.t_m_us);
    s.integer("repetitions", mc.repetitions);
    s.count("events", mc.events);
    s.number("grid_max_us", mc.grid_max_us);
    s.count("grid_points", mc.grid_points);
    if (const json* list = s.child("rates")) {
      require(list->is_array() && !list->empty(), s.path("rates"), "expected a non-empty array");
      mc.rates.clear();
      for (std::size_t i = 0; i < list->size(); ++i) {
        Reader rr((*list)[i], s.path("rates") + "[" + std::to_string(i) + "]");
        double k = 0, w = 1;
        rr.number("k_MHz", k);
        rr.number("weight", w);
        rr.finish();
        mc.rates.push_back({units::mhz_to_rate(k), w});
      }
    }
    s.finish();
    require(mc.t_m_us >= 0, s.path("t_m_us"), "must be >= 0");
    require(mc.repetitions >= 1, s.path("repetitions"), "must be >= 1");
    require(mc.events >= 1, s.path("events"), "must be >= 1");
    positive(mc.grid_max_us, s.path("grid_max_us"));
    require(mc.grid_points >= 1, s.path("grid_points"), "must be >= 1");
    ShotConfig probe;
    probe.rates = mc.rates;
    try {
      probe.validate();
    } catch (const rpnv::Error& ex) {
      throw ConfigError(s.path("rates") + ": " + ex.what());
    }
  }
  r.finish();
}

void parse_output(const json& j, OutputSettings& o) {
  Reader r(j, "output");
  r.string("directory", o.directory);
  require(!o.directory.empty(), r.path("directory"), "must not be empty");
  if (const json* f = r.child("formats")) {
    require(f->is_array() && !f->empty(), r.path("formats"), "expected a non-empty array");
    o.csv = o.json = false;
    for (const auto& x : *f) {
      require(x.is_string(), r.path("formats"), "entries must be strings");
      const std::string s = x.get<std::string>();
      if (s == "csv") {
        o.csv = true;
      } else if (s == "json") {
        o.json = true;
      } else {
        throw ConfigError(r.path("formats") + ": unknown format \"" + s + "\" (csv, json)");
      }
    }
  }
  r.finish();
}

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::vector<HyperfineTensor> parse_hyperfines(const json& j, const std::string& path) {
  require(j.is_array(), path, "expected an array of tensors");
  std::vector<HyperfineTensor> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_tensor(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Config parse_config(const json& j) {
  Config c;
  Reader r(j, "");
  if (const json* v = r.child("model")) parse_model(*v, c.model);
  if (const json* v = r.child("experiment")) parse_experiment(*v, c.experiment);
  if (const json* v = r.child("output")) parse_output(*v, c.output);
  r.finish();
  return c;
}

Config parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error at " + line_context(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  return parse_config(j);
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const Config& c) {
  const ModelParams& m = c.model;
  const ExperimentSettings& e = c.experiment;
  json model = {
      {"nv",
       {{"D_GHz", units::angular_to_ghz(m.nv.zero_field_splitting)},
        {"k_parallel_Hz_m_per_V", units::angular_to_hz_m_per_v(m.nv.k_parallel)},
        {"k_perpendicular_Hz_m_per_V", units::angular_to_hz_m_per_v(m.nv.k_perpendicular)},
        {"gyro_GHz_per_T", units::angular_to_ghz_per_t(m.nv.gyro)}}},
      {"radical_pair", {{"hyperfine", tensors_json(m.rp.hyperfines)}}},
      {"rates",
       {{"k_s_MHz", units::rate_to_mhz(m.rates.k_singlet)},
        {"k_t_MHz", units::rate_to_mhz(m.rates.k_triplet)},
        {"gamma_MHz", units::rate_to_mhz(m.rates.dephasing)},
        {"Gamma_MHz", units::rate_to_mhz(m.rates.relaxation)}}},
      {"geometry",
       {{"d1_nm", units::m_to_nm(m.geometry.nv_depth)},
        {"d2_nm", units::m_to_nm(m.geometry.pair_separation)},
        {"d3_nm", units::m_to_nm(m.geometry.lateral_offset)},
        {"eps_r1", m.geometry.eps_outside},
        {"eps_r2", m.geometry.eps_diamond},
        {"dipole_azimuth_rad", m.geometry.dipole_azimuth}}},
      {"field",
       {{"B0_mT", units::tesla_to_mt(m.field.magnitude)},
        {"theta_rad", m.field.theta},
        {"phi_rad", m.field.phi}}},
      {"include_nv", m.include_nv},
      {"dipolar", m.dipolar}};

  json variants = json::array();
  for (const auto& v : e.variants) variants.push_back({{"name", v.name}, {"hyperfine", tensors_json(v.hyperfines)}});
  json mc_rates = json::array();
  for (const auto& r : e.montecarlo.rates) mc_rates.push_back({{"k_MHz", units::rate_to_mhz(r.k)}, {"weight", r.weight}});

  json experiment = {
      {"method", e.method == Method::numeric_krylov ? "krylov" : "dense"},
      {"seed", e.seed},
      {"signal", {{"t_max_us", e.signal.t_max_us}, {"points_per_period", e.signal.points_per_period}}},
      {"keff", {{"t_max_us", e.keff.t_max_us}, {"points", e.keff.points}}},
      {"sensitivity",
       {{"grid_points", e.sensitivity.grid_points}, {"relative_step", e.sensitivity.relative_step}}},
      {"keff_map", {{"theta_points", e.keff_map.theta_points}, {"phi_points", e.keff_map.phi_points}}},
      {"keff_phi", {{"phi_points", e.keff_phi.phi_points}, {"Gamma_MHz", e.keff_phi.relaxation_mhz}}},
      {"noise_sweep", {{"gamma_MHz", e.noise_gamma_mhz}}},
      {"relaxation", {{"Gamma_MHz", e.relaxation_mhz}}},
      {"nucleus_variant", {{"variants", variants}}},
      {"depth_sweep", {{"d1_nm", e.depth_nm}}},
      {"dipolar_sweep", {{"d1_nm", e.dipolar_depth_nm}}},
      {"efield_permittivity", {{"eps_r1", e.permittivity}}},
      {"pulses",
       {{"tau_min_ns", e.pulses.tau_min_ns},
        {"tau_max_ns", e.pulses.tau_max_ns},
        {"points", e.pulses.points},
        {"B_perp_mT", e.pulses.transverse_b_mt}}},
      {"montecarlo",
       {{"t_m_us", e.montecarlo.t_m_us},
        {"repetitions", e.montecarlo.repetitions},
        {"events", e.montecarlo.events},
        {"grid_max_us", e.montecarlo.grid_max_us},
        {"grid_points", e.montecarlo.grid_points},
        {"rates", mc_rates}}}};

  json formats = json::array();
  if (c.output.csv) formats.push_back("csv");
  if (c.output.json) formats.push_back("json");
  return {{"model", model},
          {"experiment", experiment},
          {"output", {{"directory", c.output.directory}, {"formats", formats}}}};
}

namespace {

// Unit conversions on the way in and out move values by an ulp or so; the
// hash sees 12 significant digits so an echoed config hashes like its source.
void round_floats(json& j) {
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    j = std::strtod(buf, nullptr);
  } else if (j.is_structured()) {
    for (auto& v : j) round_floats(v);
  }
}

}  // namespace

std::string config_hash(const Config& c) {
  json j = to_json(c);
  // The output location does not change results.
  j["output"].erase("directory");
  round_floats(j);
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Diagnostic> diagnose(const Config& c) {
  std::vector<Diagnostic> out;
  const ModelParams& m = c.model;
  auto warn = [&](std::string msg) { out.push_back({Diagnostic::Level::warning, std::move(msg)}); };
  char buf[256];

  const double zeeman = m.nv.gyro * m.field.magnitude;
  if (zeeman >= 0.05 * m.nv.zero_field_splitting) {
    std::snprintf(buf, sizeof buf,
                  "g mu_B B0 / D = %.3g: the Zeeman term is not small against the zero-field splitting, "
                  "so the analytic signal (B-independent NV dynamics) does not apply",
                  zeeman / m.nv.zero_field_splitting);
    warn(buf);
  }
  double coupling = 0;
  try {
    coupling = 0.5 * rabi_frequency(m.nv, m.geometry);  // k_perp E_perp
  } catch (const rpnv::Error& e) {
    out.push_back({Diagnostic::Level::error, std::string("electric field: ") + e.what()});
    return out;
  }
  const double k_max = std::max(m.rates.k_singlet, m.rates.k_triplet);
  if (k_max >= 0.1 * coupling) {
    std::snprintf(buf, sizeof buf,
                  "recombination rate %.3g MHz is not small against k_perp E_perp = %.3g rad/us; "
                  "the analytic signal assumes k << k_perp E_perp",
                  units::rate_to_mhz(k_max), coupling * 1e-6);
    warn(buf);
  }
  const double gamma = m.rates.dephasing;
  if (gamma >= 2.0 * coupling) {
    std::snprintf(buf, sizeof buf,
                  "dephasing gamma = %.3g MHz >= 2 k_perp E_perp: overdamped, the general dephasing "
                  "solution requires 2 k_perp E_perp > gamma",
                  units::rate_to_mhz(gamma));
    warn(buf);
  } else if (gamma >= coupling) {
    std::snprintf(buf, sizeof buf,
                  "dephasing gamma = %.3g MHz is not small against k_perp E_perp; use the general "
                  "dephasing solution rather than the weak-dephasing signal",
                  units::rate_to_mhz(gamma));
    warn(buf);
  }
  if (m.geometry.nv_depth < units::nm_to_m(5.0) && !m.dipolar) {
    warn("NV depth below 5 nm: NV-radical spin coupling may no longer be negligible (set model.dipolar)");
  }
  return out;
}

}  // namespace rpnv::cli
