#pragma once

#include <numbers>

// Internal convention: energies and coherent couplings are angular frequencies
// (rad/s), incoherent rates are plain 1/s, lengths are meters, fields are
// tesla and V/m. The helpers below are the only place where the user-facing
// units (GHz, MHz, mT, MV/m, nm, us) are converted.
namespace rpnv::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kElementaryCharge = 1.602176634e-19;     // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kVacuumPermeability = 1.25663706212e-6;  // N/A^2
inline constexpr double kHbar = 1.054571817e-34;                 // J s

constexpr double ghz_to_angular(double f) { return kTwoPi * 1e9 * f; }
constexpr double angular_to_ghz(double w) { return w / (kTwoPi * 1e9); }
constexpr double ghz_per_t_to_angular(double g) { return ghz_to_angular(g); }
constexpr double angular_to_ghz_per_t(double g) { return angular_to_ghz(g); }

/// g_e mu_B / hbar for a free electron, rad/s per tesla (2 pi x 28.024 GHz/T).
inline constexpr double kElectronGyro = ghz_per_t_to_angular(28.024);
constexpr double mhz_to_angular(double f) { return kTwoPi * 1e6 * f; }
constexpr double angular_to_mhz(double w) { return w / (kTwoPi * 1e6); }

// Reaction and noise rates quoted "in MHz" are 10^6 events per second.
constexpr double mhz_to_rate(double k) { return 1e6 * k; }
constexpr double rate_to_mhz(double k) { return 1e-6 * k; }

// Electric susceptibilities are quoted as k/(2 pi) in Hz m/V.
constexpr double hz_m_per_v_to_angular(double k) { return kTwoPi * k; }
constexpr double angular_to_hz_m_per_v(double k) { return k / kTwoPi; }

constexpr double mt_to_tesla(double b) { return 1e-3 * b; }
constexpr double tesla_to_mt(double b) { return 1e3 * b; }
constexpr double nm_to_m(double x) { return 1e-9 * x; }
constexpr double m_to_nm(double x) { return 1e9 * x; }
constexpr double us_to_s(double t) { return 1e-6 * t; }
constexpr double s_to_us(double t) { return 1e6 * t; }
constexpr double mv_per_m_to_v_per_m(double e) { return 1e6 * e; }
constexpr double v_per_m_to_mv_per_m(double e) { return 1e-6 * e; }

/// Sensitivity of a rate estimate, s^-1 Hz^-1/2 -> kHz Hz^-1/2.
constexpr double to_khz_per_sqrt_hz(double eta) { return 1e-3 * eta; }

}  // namespace rpnv::units
