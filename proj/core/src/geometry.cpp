#include "rpnv/geometry.hpp"

#include "rpnv/errors.hpp"

#include <cmath>

namespace rpnv {

void Geometry::validate() const {
  if (!(nv_depth > 0)) throw InvalidArgument("geometry: NV depth d1 must be positive");
  if (!(lateral_offset > 0)) throw InvalidArgument("geometry: lateral offset d3 must be positive");
  if (!(pair_separation >= 0)) throw InvalidArgument("geometry: pair separation d2 must be >= 0");
  if (!(eps_outside >= 1) || !(eps_diamond >= 1)) {
    throw InvalidArgument("geometry: relative permittivities must be >= 1");
  }
  if (!std::isfinite(dipole_azimuth)) throw InvalidArgument("geometry: dipole azimuth not finite");
}

ChargeLayout charge_layout(const Geometry& g) {
  const Eigen::Vector3d axis(std::cos(g.dipole_azimuth), std::sin(g.dipole_azimuth), 0.0);
  return {0.5 * g.pair_separation * axis, -0.5 * g.pair_separation * axis,
          Eigen::Vector3d(g.lateral_offset, 0.0, -g.nv_depth)};
}

FieldVector screened_point_charge_field(const Eigen::Vector3d& source, double charge,
                                        const Eigen::Vector3d& at, double eps_outside,
                                        double eps_diamond) {
  const Eigen::Vector3d r = at - source;
  const double dist = r.norm();
  if (dist < 1e-15) throw SingularGeometry("NV center coincides with a point charge");
  const double screening = 2.0 / (eps_outside + eps_diamond);
  const double coulomb = charge / (4.0 * units::kPi * units::kVacuumPermittivity);
  return {coulomb * screening * r / (dist * dist * dist), Frame::lab};
}

FieldVector image_charge_field(const Geometry& g) {
  g.validate();
  const ChargeLayout layout = charge_layout(g);
  const double q = units::kElementaryCharge;
  const FieldVector plus =
      screened_point_charge_field(layout.positive, q, layout.nv, g.eps_outside, g.eps_diamond);
  const FieldVector minus =
      screened_point_charge_field(layout.negative, -q, layout.nv, g.eps_outside, g.eps_diamond);
  return {plus.value + minus.value, Frame::lab};
}

Eigen::Matrix3d nv_frame_axes() {
  Eigen::Matrix3d axes;
  axes.row(0) = Eigen::Vector3d(-1, -1, 2).normalized();
  axes.row(1) = Eigen::Vector3d(1, -1, 0).normalized();
  axes.row(2) = Eigen::Vector3d(1, 1, 1).normalized();
  return axes;
}

FieldVector lab_to_nv_frame(const FieldVector& v) {
  if (v.frame != Frame::lab) throw InvalidArgument("lab_to_nv_frame: vector is not in the lab frame");
  return {nv_frame_axes() * v.value, Frame::nv};
}

FieldVector nv_to_lab_frame(const FieldVector& v) {
  if (v.frame != Frame::nv) throw InvalidArgument("nv_to_lab_frame: vector is not in the NV frame");
  return {nv_frame_axes().transpose() * v.value, Frame::lab};
}

TransverseField transverse_component(const FieldVector& v) {
  if (v.frame != Frame::nv) throw InvalidArgument("transverse_component: vector is not in the NV frame");
  return {std::hypot(v.value.x(), v.value.y()), std::atan2(v.value.y(), v.value.x())};
}

}  // namespace rpnv
