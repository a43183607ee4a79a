#include "support.hpp"

#include "rpnv/analytics.hpp"
#include "rpnv/errors.hpp"
#include "rpnv/pulses.hpp"

#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

using namespace rpnv;
using rpnv::test::max_abs;

namespace {

const FieldVector kE{Eigen::Vector3d(2.0e6, -1.5e6, 0.8e6), Frame::nv};

Matrix nv_h(double bx, double by, double bz) {
  return nv_hamiltonian(NVParams{}, {Eigen::Vector3d(bx, by, bz), Frame::nv}, kE);
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace

TEST_SUITE("pulses") {
  TEST_CASE("U_z gate") {
    const Matrix uz = uz_gate();
    CHECK(max_abs(uz * uz - Matrix::Identity(3, 3)) == 0.0);
    CHECK(uz(0, 0) == Complex(1.0));
    CHECK(uz(1, 1) == Complex(-1.0));
    CHECK(uz(2, 2) == Complex(1.0));
  }

  TEST_CASE("no transverse field: the sequence is exact") {
    const Matrix h = nv_h(0, 0, 1e-4);
    const Matrix h_omega = decoupled_hamiltonian(NVParams{}, kE);
    // Bz commutes with U_z, so it is not removed; compare against the free evolution of h.
    for (double tau : {1e-12, 1e-10, 1e-9}) {
      const Matrix u = sequence_unitary(h, tau);
      CHECK(max_abs(u - (Complex(0, -4 * tau) * h).exp()) < 1e-12);
    }
    const Matrix h0 = nv_h(0, 0, 0);
    CHECK(max_abs(h0 - h_omega) < 1e-6);
    CHECK(sequence_error(h0, h_omega, 1e-9) < 1e-12);
    // exact up to roundoff: eps ||H|| is the floor for a Hamiltonian of ~1e10 rad/s
    CHECK(effective_hamiltonian_error(h0, h_omega, 1e-11) < 1e-14 * spectral_norm(h0));
  }

  TEST_CASE("sequence unitary is unitary") {
    const Matrix u = sequence_unitary(nv_h(5e-5, 3e-5, 1e-5), 0.3e-9);
    CHECK(max_abs(u * u.adjoint() - Matrix::Identity(3, 3)) < 1e-12);
  }

  TEST_CASE("transverse field is removed to second order in tau") {
    const Matrix h = nv_h(5e-5, 2e-5, 0.0);
    const Matrix h_omega = decoupled_hamiltonian(NVParams{}, kE);
    const std::vector<double> tau = logspace(1e-13, 1e-12, 8);
    std::vector<double> seq, eff;
    for (double t : tau) {
      seq.push_back(sequence_error(h, h_omega, t));
      eff.push_back(effective_hamiltonian_error(h, h_omega, t));
    }
    CHECK(log_log_slope(tau, seq) >= 2.9);
    CHECK(log_log_slope(tau, eff) >= 1.9);
  }

  TEST_CASE("effective-Hamiltonian deviation grows with B_x") {
    // Leading residual is tau^2 [H0, [H0, H_B]], linear in B while gyro B << D.
    const Matrix h_omega = decoupled_hamiltonian(NVParams{}, kE);
    const std::vector<double> b = logspace(1e-5, 1e-4, 6);
    std::vector<double> err;
    for (double bx : b) err.push_back(effective_hamiltonian_error(nv_h(bx, 0, 0), h_omega, 1e-12));
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] > err[i - 1]);
    CHECK(log_log_slope(b, err) == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("input checks") {
    const Matrix h = nv_h(5e-5, 0, 0);
    const Matrix h_omega = decoupled_hamiltonian(NVParams{}, kE);
    CHECK_THROWS_AS(effective_hamiltonian_error(h, h_omega, 1e-9), OutOfRegime);
    CHECK_THROWS_AS(sequence_unitary(h, -1e-9), InvalidArgument);
    CHECK_THROWS_AS(sequence_unitary(Matrix::Identity(4, 4), 1e-9), InvalidArgument);
    Matrix bad = h;
    bad(0, 1) += 1.0;
    CHECK_THROWS_AS(sequence_unitary(bad, 1e-9), InvalidArgument);
  }
}
