#pragma once

#include "rpnv/hamiltonian.hpp"
#include "rpnv/spin_algebra.hpp"

#include <vector>

namespace rpnv {

/// |+1><+1| - |0><0| + |-1><-1| in the (|+1>, |0>, |-1>) basis.
Matrix uz_gate();

/// U0 (Uz U0 Uz)(Uz U0 Uz) U0 with U0 = exp(-i H tau); gates are instantaneous.
Matrix sequence_unitary(const Matrix& h, double tau);

/// NV Hamiltonian with the Zeeman term removed (what the sequence should leave).
Matrix decoupled_hamiltonian(const NVParams& p, const FieldVector& e_field);

/// Spectral norm of U - exp(-i 4 tau H_omega).
double sequence_error(const Matrix& h, const Matrix& h_omega, double tau);

/// || (i / 4 tau) log(U exp(+i 4 tau H_omega)) ||, rad/s.
/// Throws OutOfRegime when 4 tau ||H|| >= pi (principal log is ambiguous).
double effective_hamiltonian_error(const Matrix& h, const Matrix& h_omega, double tau);

/// Largest singular value.
double spectral_norm(const Matrix& a);

}  // namespace rpnv
