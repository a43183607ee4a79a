#include "rpnv/montecarlo.hpp"

#include "rpnv/errors.hpp"
#include "rpnv/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace rpnv {

namespace {

constexpr std::size_t kChunk = 4096;

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(chunk)};
  return std::mt19937_64(seq);
}

template <class F>
void for_chunks(const ShotConfig& cfg, std::uint64_t stream, unsigned jobs, F&& body) {
  const std::size_t chunks = (cfg.events + kChunk - 1) / kChunk;
  parallel_for(chunks, jobs, [&](std::size_t c) {
    std::mt19937_64 rng = chunk_rng(cfg.seed, stream, c);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(cfg.events, begin + kChunk);
    body(c, begin, end, rng);
  });
}

}  // namespace

void ShotConfig::validate() const {
  if (!(measurement_time >= 0)) throw InvalidArgument("montecarlo: t_m must be >= 0");
  if (repetitions < 1) throw InvalidArgument("montecarlo: repetitions must be >= 1");
  if (events < 1) throw InvalidArgument("montecarlo: events must be >= 1");
  if (rates.empty()) throw InvalidArgument("montecarlo: at least one rate component required");
  double total = 0;
  for (const auto& r : rates) {
    if (!(r.k > 0)) throw InvalidArgument("montecarlo: rates must be positive");
    if (!(r.weight >= 0)) throw InvalidArgument("montecarlo: weights must be >= 0");
    total += r.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("montecarlo: weights must sum to 1");
  if (!std::isfinite(omega)) throw InvalidArgument("montecarlo: omega must be finite");
}

double readout_probability(double omega, double t) { return 0.5 * (1.0 + std::cos(omega * t)); }

ShotRecord sample_trajectory(const ShotConfig& cfg, std::mt19937_64& rng) {
  ShotRecord r;
  if (cfg.rates.size() > 1) {
    std::vector<double> w;
    for (const auto& c : cfg.rates) w.push_back(c.weight);
    r.component = std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng);
  }
  r.t_rec = std::exponential_distribution<double>(cfg.rates[r.component].k)(rng);
  r.truth = readout_probability(cfg.omega, std::min(cfg.measurement_time, r.t_rec));
  r.truth = std::clamp(r.truth, 0.0, 1.0);
  const int hits = std::binomial_distribution<int>(cfg.repetitions, r.truth)(rng);
  r.estimate = static_cast<double>(hits) / cfg.repetitions;
  r.error_bar = std::sqrt(std::max(0.0, r.truth - r.truth * r.truth) / cfg.repetitions);
  return r;
}

double closed_form_average(const ShotConfig& cfg, double x) {
  double out = 0;
  for (const auto& c : cfg.rates) {
    const double decay = std::exp(-c.k * x);
    // k int_0^x (1 + cos(w t)) / 2 e^{-k t} dt
    const std::complex<double> z(-c.k, cfg.omega);
    const double osc = ((std::exp(z * x) - 1.0) / z).real();
    const double integral = 0.5 * (1.0 - decay) + 0.5 * c.k * osc;
    out += c.weight * (integral + readout_probability(cfg.omega, x) * decay);
  }
  return out;
}

std::vector<ShotRecord> sample_events(const ShotConfig& cfg, unsigned jobs) {
  cfg.validate();
  std::vector<ShotRecord> out(cfg.events);
  for_chunks(cfg, 0, jobs, [&](std::size_t, std::size_t begin, std::size_t end, std::mt19937_64& rng) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_trajectory(cfg, rng);
  });
  return out;
}

std::vector<EnsemblePoint> ensemble_average(const ShotConfig& cfg,
                                            const std::vector<double>& measurement_times,
                                            unsigned jobs) {
  cfg.validate();
  std::vector<EnsemblePoint> out;
  for (std::size_t g = 0; g < measurement_times.size(); ++g) {
    ShotConfig c = cfg;
    c.measurement_time = measurement_times[g];
    c.validate();
    const std::size_t chunks = (c.events + kChunk - 1) / kChunk;
    std::vector<double> sum(chunks), sum_sq(chunks), early(chunks);
    for_chunks(c, g + 1, jobs, [&](std::size_t k, std::size_t begin, std::size_t end, std::mt19937_64& rng) {
      for (std::size_t i = begin; i < end; ++i) {
        const ShotRecord r = sample_trajectory(c, rng);
        sum[k] += r.estimate;
        sum_sq[k] += r.estimate * r.estimate;
        if (r.t_rec < c.measurement_time) early[k] += 1.0;
      }
    });
    double s = 0, s2 = 0, e = 0;
    for (std::size_t k = 0; k < chunks; ++k) {
      s += sum[k];
      s2 += sum_sq[k];
      e += early[k];
    }
    const double m = static_cast<double>(c.events);
    EnsemblePoint p;
    p.measurement_time = c.measurement_time;
    p.mean = s / m;
    const double var = c.events > 1 ? std::max(0.0, (s2 - m * p.mean * p.mean) / (m - 1.0)) : 0.0;
    p.standard_error = std::sqrt(var / m);
    p.closed_form = closed_form_average(c, c.measurement_time);
    p.early_fraction = e / m;
    out.push_back(p);
  }
  return out;
}

}  // namespace rpnv
