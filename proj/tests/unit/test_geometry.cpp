#include "rpnv/errors.hpp"
#include "rpnv/geometry.hpp"
#include "rpnv/units.hpp"

#include <doctest.h>

#include <cmath>

using namespace rpnv;

TEST_SUITE("geometry") {
  TEST_CASE("coincident charges give zero field") {
    Geometry g;
    g.pair_separation = 0.0;
    CHECK(image_charge_field(g).value.norm() == 0.0);
  }

  TEST_CASE("default geometry reproduces the quoted transverse field") {
    const FieldVector e = lab_to_nv_frame(image_charge_field(Geometry{}));
    const double e_perp = transverse_component(e).magnitude;
    CHECK(e_perp == doctest::Approx(3.15e6).epsilon(0.10));
    // pi / Omega with Omega = 2 k_perp E_perp sits near the quoted 0.46 us
    const double omega = 2.0 * units::hz_m_per_v_to_angular(0.17) * e_perp;
    CHECK(units::kPi / omega == doctest::Approx(0.46e-6).epsilon(0.05));
  }

  TEST_CASE("field decreases with the outside permittivity") {
    Geometry g;
    double prev = INFINITY;
    for (double eps = 1.0; eps <= 10.0; eps += 0.5) {
      g.eps_outside = eps;
      const double mag = image_charge_field(g).value.norm();
      CHECK(mag < prev);
      prev = mag;
    }
  }

  TEST_CASE("superposition of the two screened charges") {
    const Geometry g;
    const ChargeLayout c = charge_layout(g);
    const double q = units::kElementaryCharge;
    const Eigen::Vector3d sum =
        screened_point_charge_field(c.positive, q, c.nv, g.eps_outside, g.eps_diamond).value +
        screened_point_charge_field(c.negative, -q, c.nv, g.eps_outside, g.eps_diamond).value;
    CHECK((sum - image_charge_field(g).value).norm() < 1e-12 * sum.norm());
  }

  TEST_CASE("equal permittivities scale the vacuum field by 1/eps") {
    Geometry vac;
    vac.eps_outside = vac.eps_diamond = 1.0;
    Geometry med = vac;
    med.eps_outside = med.eps_diamond = 4.0;
    CHECK((image_charge_field(med).value - image_charge_field(vac).value / 4.0).norm() <
          1e-12 * image_charge_field(vac).value.norm());
  }

  TEST_CASE("uniform dilation scales the field as 1/L^2") {
    Geometry g;
    Geometry big = g;
    big.nv_depth *= 3.0;
    big.pair_separation *= 3.0;
    big.lateral_offset *= 3.0;
    CHECK((image_charge_field(big).value - image_charge_field(g).value / 9.0).norm() <
          1e-12 * image_charge_field(g).value.norm());
  }

  TEST_CASE("point charge at the NV is singular") {
    const Eigen::Vector3d p(1e-9, 0, 0);
    CHECK_THROWS_AS(screened_point_charge_field(p, 1.0, p, 1.0, 5.7), SingularGeometry);
  }

  TEST_CASE("invalid geometry is rejected") {
    Geometry g;
    g.nv_depth = 0.0;
    CHECK_THROWS_AS(image_charge_field(g), InvalidArgument);
    g = Geometry{};
    g.eps_outside = 0.5;
    CHECK_THROWS_AS(image_charge_field(g), InvalidArgument);
  }

  TEST_CASE("frame rotation") {
    const FieldVector along{Eigen::Vector3d(2, 2, 2), Frame::lab};
    const FieldVector nv = lab_to_nv_frame(along);
    CHECK(nv.frame == Frame::nv);
    CHECK((nv.value - Eigen::Vector3d(0, 0, std::sqrt(12.0))).norm() < 1e-12);

    const FieldVector v{Eigen::Vector3d(0.3, -1.2, 0.7), Frame::lab};
    const FieldVector r = lab_to_nv_frame(v);
    CHECK(r.value.norm() == doctest::Approx(v.value.norm()).epsilon(1e-14));
    CHECK((nv_to_lab_frame(r).value - v.value).norm() < 1e-12);
    CHECK(nv_frame_axes().determinant() == doctest::Approx(1.0));
    CHECK_THROWS_AS(lab_to_nv_frame(r), InvalidArgument);
    CHECK_THROWS_AS(nv_to_lab_frame(v), InvalidArgument);
    // NV x axis lies in the mirror plane spanned by the NV axis and [001]
    const Eigen::Vector3d x = nv_frame_axes().row(0);
    CHECK(std::abs(x.dot(Eigen::Vector3d(1, 1, 1).cross(Eigen::Vector3d(0, 0, 1)))) < 1e-15);
  }

  TEST_CASE("transverse component") {
    const auto a = transverse_component({Eigen::Vector3d(0, 0, 5), Frame::nv});
    CHECK(a.magnitude == 0.0);
    const auto b = transverse_component({Eigen::Vector3d(3e6, 4e6, 1e6), Frame::nv});
    CHECK(b.magnitude == doctest::Approx(5e6));
    CHECK(b.azimuth == doctest::Approx(std::atan2(4.0, 3.0)));
  }
}
