#include "support.hpp"

#include "rpnv/errors.hpp"
#include "rpnv/hamiltonian.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rpnv;
using rpnv::test::max_abs;

namespace {

SpinRegister pair_register(bool with_h6) {
  std::vector<SpinSite> s{SpinSite::spin(kElectron1Site, 1), SpinSite::spin(kElectron2Site, 1)};
  if (with_h6) s.push_back(SpinSite::spin("H6", 1));
  return SpinRegister(s);
}

Eigen::VectorXd sorted_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvalues();
}

const FieldVector kZeroNv{Eigen::Vector3d::Zero(), Frame::nv};

}  // namespace

TEST_SUITE("hamiltonian") {
  TEST_CASE("no field and no nuclei gives a zero radical-pair Hamiltonian") {
    RPParams p;
    p.hyperfines.clear();
    CHECK(max_abs(build_h_rp(p, kZeroNv, pair_register(false))) == 0.0);
  }

  TEST_CASE("Zeeman ladder along z") {
    RPParams p;
    p.hyperfines.clear();
    const double b = 1e-3;
    const Matrix h = build_h_rp(p, {Eigen::Vector3d(0, 0, b), Frame::nv}, pair_register(false));
    const double w = p.gyro * b;
    const Eigen::VectorXd ev = sorted_eigenvalues(h);
    CHECK(ev(0) == doctest::Approx(-w));
    CHECK(std::abs(ev(1)) < 1e-6 * w);
    CHECK(std::abs(ev(2)) < 1e-6 * w);
    CHECK(ev(3) == doctest::Approx(w));
  }

  TEST_CASE("H6 tensor reproduces its principal values") {
    const HyperfineTensor h6 = h6_tensor();
    const Eigen::Matrix3d a = h6.tensor_mt();
    CHECK((a - a.transpose()).norm() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
    Eigen::Vector3d expected(-0.218, -0.202, -0.054);
    std::sort(expected.data(), expected.data() + 3);
    CHECK((es.eigenvalues() - expected).norm() < 1e-12);
    // printed axes are orthonormal only to table precision
    const Eigen::Matrix3d r = h6.orthonormal_axes();
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK((r - h6.axes).norm() < 1e-3);
  }

  TEST_CASE("unit round trip of the tensor") {
    const HyperfineTensor h6 = h6_tensor();
    const double gyro = units::kElectronGyro;
    const Eigen::Matrix3d back = h6.tensor_angular(gyro) / gyro / units::mt_to_tesla(1.0);
    CHECK((back - h6.tensor_mt()).norm() < 1e-12);
  }

  TEST_CASE("non-orthonormal axes are rejected") {
    HyperfineTensor t = h6_tensor();
    t.axes *= 1.1;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
  }

  TEST_CASE("isotropic coupling conserves total Sz of the electron-nucleus pair for B along z") {
    RPParams p;
    HyperfineTensor iso;
    iso.nucleus = "H6";
    iso.principal_mt = Eigen::Vector3d::Constant(0.3);
    p.hyperfines = {iso};
    const SpinRegister reg = pair_register(true);
    const Matrix h = build_h_rp(p, {Eigen::Vector3d(0, 0, 5e-5), Frame::nv}, reg);
    const auto s = spin_matrices_2s(1);
    const Matrix sz = reg.embed(s.z, kElectron1Site) + reg.embed(s.z, "H6");
    CHECK(max_abs(commutator(h, sz)) < 1e-9 * max_abs(h));
    CHECK(is_hermitian(h));
  }

  TEST_CASE("missing register sites are reported") {
    RPParams p;
    SpinRegister no_nucleus = pair_register(false);
    CHECK_THROWS_AS(build_h_rp(p, kZeroNv, no_nucleus), InvalidArgument);
    SpinRegister one({SpinSite::spin(kElectron1Site, 1)});
    CHECK_THROWS_AS(build_h_rp(p, kZeroNv, one), InvalidArgument);
  }

  TEST_CASE("NV Hamiltonian spectrum") {
    NVParams p;
    const Matrix h0 = nv_hamiltonian(p, kZeroNv, kZeroNv);
    const Eigen::VectorXd ev = sorted_eigenvalues(h0);
    const double d = p.zero_field_splitting;
    CHECK(ev(0) == doctest::Approx(-2.0 * d / 3.0));
    CHECK(ev(1) == doctest::Approx(d / 3.0));
    CHECK(ev(2) == doctest::Approx(d / 3.0));
    CHECK(std::abs(h0.trace()) < 1e-15 * d);

    // transverse E splits the |+1>, |-1> doublet by 2 k_perp E_perp
    const double e_perp = 3e6;
    const Matrix he = nv_hamiltonian(p, kZeroNv, {Eigen::Vector3d(e_perp * 0.6, e_perp * 0.8, 0), Frame::nv});
    const Eigen::VectorXd ee = sorted_eigenvalues(he);
    CHECK(ee(2) - ee(1) == doctest::Approx(2.0 * p.k_perpendicular * e_perp).epsilon(1e-9));
    CHECK(is_hermitian(he));
    CHECK_THROWS_AS(nv_hamiltonian(p, {Eigen::Vector3d::Zero(), Frame::lab}, kZeroNv), InvalidArgument);
  }

  TEST_CASE("block total Hamiltonian") {
    SpinRegister reg({SpinSite::spin(kNvSite, 2), SpinSite::spin(kElectron1Site, 1),
                      SpinSite::spin(kElectron2Site, 1), SpinSite::charge_flag(kChargeSite)});
    NVParams nv;
    RPParams rp;
    rp.hyperfines.clear();
    const FieldVector b{Eigen::Vector3d(1e-5, 2e-5, 3e-5), Frame::nv};
    const FieldVector e{Eigen::Vector3d(1e6, -2e6, 5e5), Frame::nv};
    const Matrix h_nv = build_h_nv(nv, b, e, reg);
    const Matrix h_rp = build_h_rp(rp, b, reg);
    const Matrix h_nv0 = build_h_nv(nv, b, kZeroNv, reg);
    const Matrix h = build_h_total(h_nv, h_rp, h_nv0, reg);
    Matrix pe = Matrix::Zero(2, 2);
    pe(0, 0) = 1.0;
    const Matrix proj = reg.embed(pe, kChargeSite);
    const double scale = max_abs(h);
    CHECK(max_abs(proj * h * proj - (h_nv + h_rp) * proj) < 1e-12 * scale);
    CHECK(max_abs(commutator(h, proj)) < 1e-12 * scale);
    CHECK(is_hermitian(h));
  }

  TEST_CASE("dipolar coupling follows the 1/r^3 law") {
    SpinRegister reg({SpinSite::spin(kNvSite, 2), SpinSite::spin(kElectron1Site, 1),
                      SpinSite::spin(kElectron2Site, 1)});
    Geometry g;
    Geometry far = g;
    far.nv_depth *= 2.0;
    far.pair_separation *= 2.0;
    far.lateral_offset *= 2.0;
    const Matrix near_h = build_h_dipolar(g, reg);
    const Matrix far_h = build_h_dipolar(far, reg);
    CHECK(is_hermitian(near_h));
    CHECK(near_h.norm() / far_h.norm() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(dipolar_coupling_strength(1e-9) == doctest::Approx(8.0 * dipolar_coupling_strength(2e-9)));
    CHECK_THROWS_AS(dipolar_coupling_strength(0.0), InvalidArgument);
  }
}
