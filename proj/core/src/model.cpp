#include "rpnv/model.hpp"

#include "rpnv/errors.hpp"
#include "rpnv/propagate.hpp"

#include <set>

namespace rpnv {

void ModelParams::validate() const {
  nv.validate();
  rates.validate();
  geometry.validate();
  if (!(field.magnitude >= 0)) throw InvalidArgument("magnetic field magnitude must be >= 0");
  if (dipolar && !include_nv) throw InvalidArgument("dipolar coupling requires the NV site");
  std::set<std::string> seen;
  for (const auto& hf : rp.hyperfines) {
    hf.validate();
    if (hf.nucleus.empty()) throw InvalidArgument("hyperfine tensor without nucleus label");
    if (!seen.insert(hf.nucleus).second) throw InvalidArgument("duplicate nucleus '" + hf.nucleus + "'");
  }
}

SpinRegister build_register(const ModelParams& p) {
  std::vector<SpinSite> sites;
  if (p.include_nv) sites.push_back(SpinSite::spin(kNvSite, 2));
  sites.push_back(SpinSite::spin(kElectron1Site, 1));
  sites.push_back(SpinSite::spin(kElectron2Site, 1));
  for (const auto& hf : p.rp.hyperfines) sites.push_back(SpinSite::spin(hf.nucleus, hf.nuclear_two_s));
  sites.push_back(SpinSite::charge_flag(kChargeSite));
  return SpinRegister(std::move(sites));
}

FieldVector nv_frame_efield(const Geometry& g) { return lab_to_nv_frame(image_charge_field(g)); }

double rabi_frequency(const NVParams& nv, const Geometry& g) {
  return 2.0 * nv.k_perpendicular * transverse_component(nv_frame_efield(g)).magnitude;
}

namespace {

JointModel assemble_model(const ModelParams& p) {
  SpinRegister reg = build_register(p);
  const FieldVector b = p.field.vector();
  const FieldVector e = nv_frame_efield(p.geometry);

  Matrix h_rp = build_h_rp(p.rp, b, reg);
  if (p.dipolar) h_rp += build_h_dipolar(p.geometry, reg, p.rp.gyro);

  Matrix h;
  if (p.include_nv) {
    const Matrix h_nv = build_h_nv(p.nv, b, e, reg);
    const Matrix h_nv0 = build_h_nv(p.nv, b, FieldVector{Eigen::Vector3d::Zero(), Frame::nv}, reg);
    h = build_h_total(h_nv, h_rp, h_nv0, reg);
  } else {
    const Matrix zero = Matrix::Zero(reg.dim(), reg.dim());
    h = build_h_total(zero, h_rp, zero, reg);
  }

  std::vector<JumpTerm> jumps = recombination_jumps(p.rates, reg);
  if (p.include_nv && p.rates.dephasing > 0) jumps.push_back(dephasing_jump(p.rates.dephasing, reg));
  for (auto& j : relaxation_jumps(p.rates.relaxation, reg)) jumps.push_back(std::move(j));

  Liouvillian l = assemble(h, std::move(jumps));
  Matrix rho0 = initial_state(reg);
  return JointModel{std::move(reg), std::move(h), std::move(l), std::move(rho0), e};
}

}  // namespace

JointModel build_joint_model(const ModelParams& p) {
  p.validate();
  return assemble_model(p);
}

bool radical_spin_is_spectator(const ModelParams& p) {
  return p.rates.k_singlet == p.rates.k_triplet && !p.dipolar;
}

ModelParams without_nuclei(const ModelParams& p) {
  ModelParams out = p;
  out.rp.hyperfines.clear();
  return out;
}

}  // namespace rpnv
