#include "rpnv/pulses.hpp"

#include "rpnv/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace rpnv {

namespace {

void check_nv_hamiltonian(const Matrix& h) {
  if (h.rows() != 3 || h.cols() != 3) throw InvalidArgument("pulses: expected a 3x3 NV Hamiltonian");
  if (!is_hermitian(h)) throw InvalidArgument("pulses: Hamiltonian is not Hermitian");
}

Matrix evolution(const Matrix& h, double t) { return (Complex(0, -t) * h).exp(); }

}  // namespace

Matrix uz_gate() {
  Matrix u = Matrix::Identity(3, 3);
  u(1, 1) = -1.0;
  return u;
}

Matrix sequence_unitary(const Matrix& h, double tau) {
  check_nv_hamiltonian(h);
  if (!(tau >= 0)) throw InvalidArgument("pulses: tau must be >= 0");
  const Matrix u0 = evolution(h, tau);
  const Matrix uz = uz_gate();
  const Matrix flipped = uz * u0 * uz;
  return u0 * flipped * flipped * u0;
}

Matrix decoupled_hamiltonian(const NVParams& p, const FieldVector& e_field) {
  return nv_hamiltonian(p, FieldVector{Eigen::Vector3d::Zero(), Frame::nv}, e_field);
}

double spectral_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double sequence_error(const Matrix& h, const Matrix& h_omega, double tau) {
  check_nv_hamiltonian(h_omega);
  return spectral_norm(sequence_unitary(h, tau) - evolution(h_omega, 4.0 * tau));
}

double effective_hamiltonian_error(const Matrix& h, const Matrix& h_omega, double tau) {
  check_nv_hamiltonian(h_omega);
  if (!(tau > 0)) throw InvalidArgument("pulses: tau must be positive");
  if (4.0 * tau * spectral_norm(h) >= units::kPi) {
    throw OutOfRegime("pulses: tau too long, 4 tau ||H|| >= pi makes the matrix log ambiguous");
  }
  const Matrix residual = sequence_unitary(h, tau) * evolution(h_omega, -4.0 * tau);
  const Matrix log_r = residual.log();
  return spectral_norm(Complex(0, 1.0 / (4.0 * tau)) * log_r);
}

}  // namespace rpnv
