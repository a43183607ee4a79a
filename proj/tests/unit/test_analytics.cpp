#include "rpnv/analytics.hpp"
#include "rpnv/errors.hpp"
#include "rpnv/units.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace rpnv;

namespace {

constexpr double kOmega = 6.718e6;  // bare Rabi frequency of the default geometry
constexpr double kK = 0.1425e6;

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("signal at t = 0 and at half a Rabi period") {
    const AnalyticParams p{kOmega, kK, 0.0};
    const SignalPoint s0 = analytic_signal(p, 0.0);
    CHECK(s0.p == doctest::Approx(1.0));
    CHECK(s0.p_e_branch == doctest::Approx(1.0));
    CHECK(s0.p_g_branch == doctest::Approx(0.0));

    const double t = units::kPi / kOmega;
    const SignalPoint s = analytic_signal(p, t);
    CHECK(s.p == doctest::Approx(0.5 * (1.0 - std::exp(-kK * t))).epsilon(1e-12));
    CHECK(std::abs(s.p - 0.0317) < 1e-3);
    CHECK(s.p == doctest::Approx(s.p_e_branch + s.p_g_branch).epsilon(1e-14));
  }

  TEST_CASE("signal with dephasing matches its closed form") {
    const AnalyticParams p{kOmega, kK, 0.5e6};
    for (double t : {0.1e-6, 0.46e-6, 2e-6}) {
      const double expected = 0.5 * (1.0 + std::cos(kOmega * t) * std::exp(-(kK + 0.5e6) * t));
      CHECK(analytic_signal(p, t).p == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((AnalyticParams{-1.0, kK, 0.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((AnalyticParams{kOmega, -1.0, 0.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((AnalyticParams{kOmega, kK, -1.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS(analytic_signal({kOmega, kK, 0.0}, -1e-9), InvalidArgument);
  }

  TEST_CASE("general dephasing solution") {
    SUBCASE("gamma = 0 reduces to the coherent signal") {
      const AnalyticParams p{kOmega, kK, 0.0};
      for (double t : linspace(0.0, 5e-6, 51)) {
        const GeneralSignalPoint g = analytic_signal_general(p, t);
        CHECK(g.amplitude == doctest::Approx(1.0));
        CHECK(g.phase == doctest::Approx(0.0));
        CHECK(g.p_e_branch == doctest::Approx(analytic_signal(p, t).p_e_branch).epsilon(1e-12));
      }
    }
    SUBCASE("vanishing gamma converges to the weak-dephasing branch") {
      // The phase alpha ~ gamma / Omega makes the difference first order in gamma.
      for (double ratio : {1e-6, 1e-8}) {
        const AnalyticParams p{kOmega, kK, ratio * kOmega};
        double err = 0.0;
        for (double t : linspace(0.0, 10e-6, 201)) {
          err = std::max(err, std::abs(analytic_signal_general(p, t).p_e_branch - analytic_signal(p, t).p_e_branch));
        }
        CHECK(err <= ratio);
      }
    }
    SUBCASE("C >= 1 and alpha in (0, pi/2)") {
      for (double g : {0.1e6, 1e6, 3e6, 6e6}) {
        const GeneralSignalPoint s = analytic_signal_general({kOmega, kK, g}, 1e-6);
        CHECK(s.amplitude >= 1.0);
        CHECK(s.phase > 0.0);
        CHECK(s.phase < units::kPi / 2);
        CHECK(s.omega == doctest::Approx(std::sqrt(kOmega * kOmega - g * g)));
      }
    }
    SUBCASE("P^E at t = 0 is one") {
      CHECK(analytic_signal_general({kOmega, kK, 2e6}, 0.0).p_e_branch == doctest::Approx(1.0));
    }
    SUBCASE("overdamped regime is rejected") {
      CHECK_THROWS_AS(analytic_signal_general({kOmega, kK, kOmega}, 1e-6), OutOfRegime);
      CHECK_THROWS_AS(analytic_signal_general({kOmega, kK, 10e6}, 1e-6), OutOfRegime);
    }
  }

  TEST_CASE("finite-difference derivative matches the analytic one") {
    const AnalyticParams p{kOmega, kK, 0.5e6};
    const double dk = 1e-3 * kK;
    for (double t : linspace(0.05e-6, 10e-6, 40)) {
      const double exact = analytic_dp_dk(p, t);
      if (std::abs(exact) < 1e-10) continue;
      const double fd = (analytic_signal({kOmega, kK + dk, 0.5e6}, t).p -
                         analytic_signal({kOmega, kK - dk, 0.5e6}, t).p) / (2 * dk);
      CHECK(std::abs(fd - exact) <= 1e-4 * std::abs(exact));
    }
  }

  TEST_CASE("closed-form sensitivity equals the finite-difference pipeline") {
    for (double gamma : {0.0, 0.5e6, 2e6}) {
      const AnalyticParams p{kOmega, kK, gamma};
      const std::vector<double> t = optimum_grid(kK, gamma, 400);
      // step 1e-4 k keeps the O(dk^2) truncation well below the tolerance
      const SensitivityCurve fd = analytic_pipeline_sensitivity(p, t, 1e-4 * kK);
      const SensitivityCurve cf = analytic_sensitivity_curve(p, t);
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (fd.divergent[i] || cf.divergent[i]) continue;
        CHECK(std::abs(fd.eta[i] - cf.eta[i]) <= 1e-6 * cf.eta[i]);
      }
    }
  }

  TEST_CASE("analytic optimum near T = 0.46 us for the default parameters") {
    const AnalyticParams p{kOmega, kK, 0.0};
    CHECK(units::to_khz_per_sqrt_hz(analytic_sensitivity(p, 0.46e-6)) == doctest::Approx(0.55).epsilon(0.05));
    const std::vector<double> t = optimum_grid(kK, 0.0);
    const SensitivityCurve c = analytic_sensitivity_curve(p, t);
    CHECK_FALSE(c.optimum.on_boundary);
    CHECK(std::abs(c.optimum.t_op - 0.46e-6) < 0.02e-6);
    CHECK(units::to_khz_per_sqrt_hz(c.optimum.eta_op) == doctest::Approx(0.54).epsilon(0.05));
  }

  TEST_CASE("divergent points are flagged") {
    const std::vector<double> t{1e-6, 2e-6, 3e-6};
    const std::vector<double> p{0.5, 1.0, 0.5};
    const std::vector<double> plus{0.5, 1.0, 0.6};
    const std::vector<double> minus{0.5, 1.0, 0.4};
    const SensitivityCurve c = sensitivity_from_signals(t, p, plus, minus, 1.0);
    CHECK(c.divergent[0]);
    CHECK(c.divergent[1]);
    CHECK_FALSE(c.divergent[2]);
    CHECK(std::isinf(c.eta[0]));
    CHECK(c.optimum.index == 2);
    const std::vector<double> same{0.5, 1.0, 0.5};
    CHECK_THROWS_AS(sensitivity_from_signals(t, p, same, same, 1.0), NumericFailure);
    CHECK_THROWS_AS(sensitivity_from_signals(t, p, plus, minus, 0.0), InvalidArgument);
  }

  TEST_CASE("optimum grid spans (0, 5/(k + gamma)]") {
    const std::vector<double> t = optimum_grid(kK, 0.5e6, 2000);
    REQUIRE(t.size() == 2000);
    CHECK(t.front() > 0.0);
    CHECK(t.back() == doctest::Approx(5.0 / (kK + 0.5e6)));
  }

  TEST_CASE("find_optimum refines an interior parabola and flags boundaries") {
    std::vector<double> t, eta;
    for (int i = 0; i <= 20; ++i) {
      t.push_back(0.1 * i);
      eta.push_back(std::pow(0.1 * i - 0.737, 2) + 3.0);
    }
    const Optimum o = find_optimum(t, eta);
    CHECK_FALSE(o.on_boundary);
    CHECK(o.t_op == doctest::Approx(0.737).epsilon(1e-12));
    CHECK(o.eta_op == doctest::Approx(3.0).epsilon(1e-12));

    std::vector<double> rising(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) rising[i] = 1.0 + t[i];
    const Optimum b = find_optimum(t, rising);
    CHECK(b.on_boundary);
    CHECK(b.index == 0);
  }

  TEST_CASE("k_eff fit") {
    const std::vector<double> t = linspace(0.0, 40e-6, 801);
    SUBCASE("exact exponential") {
      std::vector<double> pe(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) pe[i] = std::exp(-kK * t[i]);
      const RateFit f = fit_keff(t, pe);
      CHECK(std::abs(f.k_eff - kK) <= 1e-9 * kK);
      CHECK(f.residual < 1e-12);
      CHECK(f.window_start == 0.0);
      CHECK(f.window_end == doctest::Approx(3.0 / kK).epsilon(1e-6));
    }
    SUBCASE("scale equivariance") {
      const double c = 2.5;
      std::vector<double> pe(t.size()), ts(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        pe[i] = 0.7 * std::exp(-kK * t[i]) + 0.3 * std::exp(-3 * kK * t[i]);
        ts[i] = c * t[i];
      }
      const RateFit a = fit_keff(t, pe);
      const RateFit b = fit_keff(ts, pe);
      CHECK(b.k_eff == doctest::Approx(a.k_eff / c).epsilon(1e-9));
      CHECK(a.residual > 0.0);
    }
    SUBCASE("failures") {
      std::vector<double> flat(t.size(), 1.0);
      CHECK_THROWS_AS(fit_keff(t, flat), FitFailure);
      std::vector<double> neg(t.size(), -0.5);
      CHECK_THROWS_AS(fit_keff(t, neg), FitFailure);
      CHECK_THROWS_AS(fit_keff(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0, 0.5}), FitFailure);
      CHECK_THROWS_AS(fit_keff(std::vector<double>{0.0, 1.0}, std::vector<double>{1.0}), InvalidArgument);
    }
  }

  TEST_CASE("log-log slope") {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
      x.push_back(i);
      y.push_back(4.0 * std::pow(i, 2.5));
    }
    CHECK(log_log_slope(x, y) == doctest::Approx(2.5).epsilon(1e-12));
  }
}
