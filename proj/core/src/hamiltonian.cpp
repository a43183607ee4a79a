#include "rpnv/hamiltonian.hpp"

#include "rpnv/errors.hpp"

#include <cmath>

namespace rpnv {

void NVParams::validate() const {
  if (!(zero_field_splitting > 0)) throw InvalidArgument("NV zero-field splitting D must be positive");
  if (!std::isfinite(k_parallel) || !std::isfinite(k_perpendicular) || !std::isfinite(gyro)) {
    throw InvalidArgument("NV parameters must be finite");
  }
}

void HyperfineTensor::validate() const {
  if (nucleus.empty()) throw InvalidArgument("hyperfine tensor needs a nucleus label");
  if (electron != 1 && electron != 2) {
    throw InvalidArgument("hyperfine tensor '" + nucleus + "': electron index must be 1 or 2");
  }
  if (nuclear_two_s < 1) throw InvalidArgument("hyperfine tensor '" + nucleus + "': bad nuclear spin");
  const double err = (axes.transpose() * axes - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= 1e-3)) {
    throw InvalidArgument("hyperfine tensor '" + nucleus + "': principal axes are not orthonormal");
  }
}

Eigen::Matrix3d HyperfineTensor::orthonormal_axes() const {
  // Nearest orthogonal matrix (polar factor); tabulated axes carry rounding.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(axes, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Eigen::Matrix3d HyperfineTensor::tensor_mt() const {
  const Eigen::Matrix3d r = orthonormal_axes();
  return r * principal_mt.asDiagonal() * r.transpose();
}

Eigen::Matrix3d HyperfineTensor::tensor_angular(double gyro) const {
  return units::mt_to_tesla(1.0) * gyro * tensor_mt();
}

HyperfineTensor h6_tensor() {
  HyperfineTensor t;
  t.nucleus = "H6";
  t.electron = 1;
  t.nuclear_two_s = 1;
  t.principal_mt << -0.218, -0.202, -0.054;
  // Printed to four decimals; orthonormal to ~1e-4.
  t.axes << -0.0362, 0.2937, 0.9552,
             0.7948, 0.5879, -0.1507,
            -0.6059, 0.7537, -0.2546;
  return t;
}

void RateParams::validate() const {
  if (!(k_singlet >= 0) || !(k_triplet >= 0) || !(dephasing >= 0) || !(relaxation >= 0)) {
    throw InvalidArgument("rates must be non-negative");
  }
}

FieldVector MagneticField::vector() const {
  return {magnitude * Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                                      std::sin(theta) * std::sin(phi), std::cos(theta)),
          Frame::nv};
}

namespace {

const char* electron_label(int index) { return index == 1 ? kElectron1Site : kElectron2Site; }

}  // namespace

Matrix build_h_rp(const RPParams& p, const FieldVector& b_field, const SpinRegister& reg) {
  if (b_field.frame != Frame::nv) throw InvalidArgument("build_h_rp: field must be in the NV frame");
  for (const char* label : {kElectron1Site, kElectron2Site}) {
    if (!reg.contains(label)) throw InvalidArgument(std::string("build_h_rp: register lacks site ") + label);
  }
  const SpinMatrices half = spin_matrices_2s(1);
  Matrix h = Matrix::Zero(reg.dim(), reg.dim());
  for (const char* label : {kElectron1Site, kElectron2Site}) {
    for (int a = 0; a < 3; ++a) {
      if (b_field.value[a] != 0.0) h += p.gyro * b_field.value[a] * reg.embed(half[a], label);
    }
  }
  for (const auto& hf : p.hyperfines) {
    hf.validate();
    if (!reg.contains(hf.nucleus)) {
      throw InvalidArgument("build_h_rp: register lacks nucleus site '" + hf.nucleus + "'");
    }
    if (reg.site(hf.nucleus).two_s() != hf.nuclear_two_s) {
      throw InvalidArgument("build_h_rp: nuclear spin of '" + hf.nucleus + "' does not match register");
    }
    const Eigen::Matrix3d a = hf.tensor_angular(p.gyro);
    const SpinMatrices nuc = spin_matrices_2s(hf.nuclear_two_s);
    const char* e = electron_label(hf.electron);
    for (int i = 0; i < 3; ++i) {
      const Matrix s_i = reg.embed(half[i], e);
      for (int j = 0; j < 3; ++j) {
        if (a(i, j) != 0.0) h += a(i, j) * s_i * reg.embed(nuc[j], hf.nucleus);
      }
    }
  }
  return h;
}

Matrix nv_hamiltonian(const NVParams& p, const FieldVector& b_field, const FieldVector& e_field) {
  if (b_field.frame != Frame::nv || e_field.frame != Frame::nv) {
    throw InvalidArgument("nv_hamiltonian: fields must be in the NV frame");
  }
  const SpinMatrices s = spin_matrices_2s(2);
  const Matrix id = Matrix::Identity(3, 3);
  const Eigen::Vector3d& b = b_field.value;
  const Eigen::Vector3d& e = e_field.value;
  Matrix h = (p.zero_field_splitting + p.k_parallel * e.z()) * (s.z * s.z - (2.0 / 3.0) * id);
  h += p.gyro * (b.x() * s.x + b.y() * s.y + b.z() * s.z);
  h -= p.k_perpendicular * e.x() * (s.x * s.x - s.y * s.y);
  h += p.k_perpendicular * e.y() * (s.x * s.y + s.y * s.x);
  return h;
}

Matrix build_h_nv(const NVParams& p, const FieldVector& b_field, const FieldVector& e_field,
                  const SpinRegister& reg) {
  return reg.embed(nv_hamiltonian(p, b_field, e_field), kNvSite);
}

Matrix build_h_total(const Matrix& h_nv, const Matrix& h_rp, const Matrix& h_nv_zero_field,
                     const SpinRegister& reg) {
  const int n = reg.dim();
  if (h_nv.rows() != n || h_rp.rows() != n || h_nv_zero_field.rows() != n) {
    throw InvalidArgument("build_h_total: operator dimensions do not match the register");
  }
  Matrix pe = Matrix::Zero(2, 2);
  pe(0, 0) = 1.0;
  Matrix pg = Matrix::Zero(2, 2);
  pg(1, 1) = 1.0;
  const Matrix proj_e = reg.embed(pe, kChargeSite);
  const Matrix proj_g = reg.embed(pg, kChargeSite);
  return (h_nv + h_rp) * proj_e + h_nv_zero_field * proj_g;
}

double dipolar_coupling_strength(double distance, double gyro) {
  if (!(distance > 0)) throw InvalidArgument("dipolar coupling: zero separation");
  return units::kVacuumPermeability * units::kHbar * gyro * gyro /
         (4.0 * units::kPi * distance * distance * distance);
}

Matrix build_h_dipolar(const Geometry& g, const SpinRegister& reg, double gyro) {
  const ChargeLayout layout = charge_layout(g);
  const SpinMatrices nv = spin_matrices_2s(2);
  const SpinMatrices half = spin_matrices_2s(1);
  const std::pair<const char*, Eigen::Vector3d> electrons[] = {
      {kElectron1Site, layout.negative}, {kElectron2Site, layout.positive}};

  Matrix h = Matrix::Zero(reg.dim(), reg.dim());
  for (const auto& [label, position] : electrons) {
    const Eigen::Vector3d r_lab = layout.nv - position;
    const double dist = r_lab.norm();
    if (dist < 1e-15) throw SingularGeometry("dipolar coupling: zero NV-radical separation");
    const Eigen::Vector3d n = nv_frame_axes() * (r_lab / dist);
    const double j = dipolar_coupling_strength(dist, gyro);
    for (int a = 0; a < 3; ++a) {
      const Matrix s_nv = reg.embed(nv[a], kNvSite);
      for (int b = 0; b < 3; ++b) {
        const double coeff = j * ((a == b ? 1.0 : 0.0) - 3.0 * n[a] * n[b]);
        if (coeff != 0.0) h += coeff * s_nv * reg.embed(half[b], label);
      }
    }
  }
  return h;
}

}  // namespace rpnv
