#pragma once

#include "rpnv/hamiltonian.hpp"
#include "rpnv/spin_algebra.hpp"

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace rpnv {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Dissipator rate * (L rho L^dag - 1/2 {L^dag L, rho}).
///
/// Recombination k/2 {2 L rho L^dag - ...} maps to rate k; dephasing
/// gamma {Sz rho Sz - 1/2 ...} maps to rate gamma; Pauli relaxation
/// Gamma/2 {2 s rho s - ...} maps to rate Gamma.
struct JumpTerm {
  Matrix op;
  double rate = 0.0;
  std::string name;
};

/// Lindblad generator on N x N density matrices.
///
/// The superoperator acts on column-stacked vec(rho) of length N^2, using
/// vec(A X B) = (B^T kron A) vec(X). It is stored sparse; exact zeros are
/// dropped so structural sparsity survives.
class Liouvillian {
 public:
  Liouvillian(Matrix hamiltonian, std::vector<JumpTerm> jumps);

  int dim() const noexcept { return static_cast<int>(hamiltonian_.rows()); }
  const Matrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<JumpTerm>& jumps() const noexcept { return jumps_; }

  /// d rho / dt evaluated directly on the matrix.
  Matrix apply(const Matrix& rho) const;

  const SparseMatrix& superoperator() const noexcept { return super_; }
  Matrix dense_superoperator() const { return Matrix(super_); }

  /// max over columns of |Tr L(E_col)|; zero for a trace-preserving generator.
  double trace_preservation_error() const;

 private:
  Matrix hamiltonian_;
  std::vector<JumpTerm> jumps_;
  SparseMatrix super_;
};

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int n);

/// Validates dimensions and builds the generator.
Liouvillian assemble(const Matrix& hamiltonian, std::vector<JumpTerm> jumps);

/// |u,G><u,E| for u in {s, t0, t+, t-} with rates k_s, k_t, k_t, k_t.
std::vector<JumpTerm> recombination_jumps(const RateParams& rates, const SpinRegister& reg);

/// Sz of the NV with rate gamma.
JumpTerm dephasing_jump(double gamma, const SpinRegister& reg);

/// Pauli x, y, z on each radical electron with rate Gamma; empty when Gamma = 0.
std::vector<JumpTerm> relaxation_jumps(double relaxation_rate, const SpinRegister& reg);

}  // namespace rpnv
