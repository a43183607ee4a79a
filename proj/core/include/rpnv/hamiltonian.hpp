#pragma once

#include "rpnv/geometry.hpp"
#include "rpnv/spin_algebra.hpp"
#include "rpnv/units.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rpnv {

// Site labels used by the model builders.
inline constexpr const char* kNvSite = "NV";
inline constexpr const char* kElectron1Site = "e1";  // carries the nuclear hyperfine couplings by default
inline constexpr const char* kElectron2Site = "e2";
inline constexpr const char* kChargeSite = "charge";

/// NV ground-state constants, all in rad/s (susceptibilities in rad/s per V/m).
struct NVParams {
  double zero_field_splitting = units::ghz_to_angular(2.87);
  double k_parallel = units::hz_m_per_v_to_angular(0.0035);
  double k_perpendicular = units::hz_m_per_v_to_angular(0.17);
  double gyro = units::kElectronGyro;

  void validate() const;
};

/// Hyperfine tensor from principal values (mT) and principal axes.
/// Column i of `axes` is the unit axis belonging to `principal_mt[i]`.
/// Axes are expressed in the NV frame, which is also the molecular frame.
struct HyperfineTensor {
  std::string nucleus;
  int electron = 1;       // 1 or 2
  int nuclear_two_s = 1;  // 1 for H, 2 for 14N
  Eigen::Vector3d principal_mt = Eigen::Vector3d::Zero();
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();

  /// Rejects axes further than 1e-3 from orthonormal.
  void validate() const;
  Eigen::Matrix3d orthonormal_axes() const;
  Eigen::Matrix3d tensor_mt() const;
  /// Tensor in rad/s: tensor_mt converted to tesla and multiplied by `gyro`.
  Eigen::Matrix3d tensor_angular(double gyro = units::kElectronGyro) const;
};

/// Flavin H6 hyperfine tensor (dominant anisotropic coupling of FH radical).
HyperfineTensor h6_tensor();

struct RPParams {
  std::vector<HyperfineTensor> hyperfines{h6_tensor()};
  double gyro = units::kElectronGyro;
};

/// Recombination and noise rates, 1/s.
struct RateParams {
  double k_singlet = units::mhz_to_rate(0.02);
  double k_triplet = units::mhz_to_rate(0.2);
  double dephasing = 0.0;   // NV pure dephasing gamma
  double relaxation = 0.0;  // radical electron relaxation Gamma

  void validate() const;
  static RateParams uniform(double k, double dephasing = 0.0, double relaxation = 0.0) {
    return {k, k, dephasing, relaxation};
  }
};

/// B0 (sin t cos p, sin t sin p, cos t) in the NV frame.
struct MagneticField {
  double magnitude = units::mt_to_tesla(0.05);  // tesla
  double theta = units::kPi / 2.0;
  double phi = 2.0;

  FieldVector vector() const;
};

/// g mu_B sum_k B.S_k + sum_{k,i} S_k.A_i^k.I_i^k on the register.
/// Every nucleus of `p` must be a site of `reg` (labelled by HyperfineTensor::nucleus).
Matrix build_h_rp(const RPParams& p, const FieldVector& b_field, const SpinRegister& reg);

/// 3x3 NV Hamiltonian in the (|+1>, |0>, |-1>) basis.
Matrix nv_hamiltonian(const NVParams& p, const FieldVector& b_field, const FieldVector& e_field);

/// NV Hamiltonian embedded on the "NV" site of the register.
Matrix build_h_nv(const NVParams& p, const FieldVector& b_field, const FieldVector& e_field,
                  const SpinRegister& reg);

/// (H_NV + H_RP) x |E><E| + H_NV(E=0) x |G><G|. Inputs carry identity on the charge site.
Matrix build_h_total(const Matrix& h_nv, const Matrix& h_rp, const Matrix& h_nv_zero_field,
                     const SpinRegister& reg);

/// Point-dipole coupling between the NV spin and each radical electron.
/// Electron 1 sits on the negative radical, electron 2 on the positive one.
Matrix build_h_dipolar(const Geometry& g, const SpinRegister& reg,
                       double gyro = units::kElectronGyro);

/// mu0 hbar gyro^2 / (4 pi r^3), rad/s.
double dipolar_coupling_strength(double distance, double gyro = units::kElectronGyro);

}  // namespace rpnv
