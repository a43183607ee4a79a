#pragma once

#include "rpnv/units.hpp"

#include <Eigen/Dense>

namespace rpnv {

// Lab frame: x along the [100] crystal axis, z along the outward normal of
// the <001> diamond surface, surface plane at z = 0, diamond at z < 0.
// NV frame: z along the [111] NV axis, x in the mirror plane containing [001].

/// Default in-plane orientation of the charge-pair axis, measured from lab x.
/// Chosen so that the default geometry gives E_perp = 3.15 MV/m.
inline constexpr double kDefaultDipoleAzimuth = units::kPi / 6.0;

/// Placement of the NV center and the surface radical pair (meters).
struct Geometry {
  double nv_depth = units::nm_to_m(5.0);         // d1
  double pair_separation = units::nm_to_m(2.0);  // d2
  double lateral_offset = units::nm_to_m(4.0);   // d3, along lab x
  double eps_outside = 1.0;                      // eps_r1, medium above the surface
  double eps_diamond = 5.7;                      // eps_r2
  double dipole_azimuth = kDefaultDipoleAzimuth;

  void validate() const;
};

enum class Frame { lab, nv };

struct FieldVector {
  Eigen::Vector3d value = Eigen::Vector3d::Zero();
  Frame frame = Frame::lab;
};

/// Positions of the two radicals and of the NV center (lab frame, meters).
/// The positive charge sits at +d2/2 along the dipole azimuth.
struct ChargeLayout {
  Eigen::Vector3d positive;
  Eigen::Vector3d negative;
  Eigen::Vector3d nv;
};
ChargeLayout charge_layout(const Geometry& g);

/// Field at `at` from a point charge `charge` (coulombs) located on the
/// dielectric interface, screened by 2/(eps1 + eps2).
FieldVector screened_point_charge_field(const Eigen::Vector3d& source, double charge,
                                        const Eigen::Vector3d& at, double eps_outside,
                                        double eps_diamond);

/// Electric field of the charge-separated pair at the NV (lab frame).
FieldVector image_charge_field(const Geometry& g);

/// Rows are the NV-frame unit vectors x, y, z expressed in lab coordinates.
Eigen::Matrix3d nv_frame_axes();

FieldVector lab_to_nv_frame(const FieldVector& v);
FieldVector nv_to_lab_frame(const FieldVector& v);

struct TransverseField {
  double magnitude = 0.0;  // sqrt(x^2 + y^2)
  double azimuth = 0.0;    // atan2(y, x), radians
};
TransverseField transverse_component(const FieldVector& nv_frame_vector);

}  // namespace rpnv
