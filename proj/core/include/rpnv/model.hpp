#pragma once

#include "rpnv/geometry.hpp"
#include "rpnv/hamiltonian.hpp"
#include "rpnv/liouvillian.hpp"
#include "rpnv/spin_algebra.hpp"

namespace rpnv {

/// Everything needed to build the joint NV + radical-pair model.
/// Defaults reproduce the reference parameter set (H6 nucleus, B0 = 0.05 mT,
/// theta = pi/2, phi = 2.0, k_s = 0.02 MHz, k_t = 0.2 MHz, d1/d2/d3 = 5/2/4 nm).
struct ModelParams {
  NVParams nv;
  RPParams rp;
  RateParams rates;
  Geometry geometry;
  MagneticField field;
  bool include_nv = true;
  bool dipolar = false;  // NV-radical point-dipole coupling

  void validate() const;
};

/// Sites in order: NV (optional), e1, e2, one site per nucleus, charge.
SpinRegister build_register(const ModelParams& p);

/// Electric field of the charge-separated pair at the NV, NV frame.
FieldVector nv_frame_efield(const Geometry& g);

/// Bare Rabi frequency 2 k_perp E_perp, rad/s.
double rabi_frequency(const NVParams& nv, const Geometry& g);

struct JointModel {
  SpinRegister reg;
  Matrix hamiltonian;
  Liouvillian liouvillian;
  Matrix rho0;
  FieldVector e_field;  // NV frame
};

JointModel build_joint_model(const ModelParams& p);

/// True when the radical-pair spin cannot influence the NV: uniform
/// recombination and no NV-radical coupling. The nuclei can then be dropped
/// without changing any NV or charge observable.
bool radical_spin_is_spectator(const ModelParams& p);

/// Copy of `p` with the nuclei removed (exact for spectator models).
ModelParams without_nuclei(const ModelParams& p);

}  // namespace rpnv
