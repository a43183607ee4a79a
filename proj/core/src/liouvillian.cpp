#include "rpnv/liouvillian.hpp"

#include "rpnv/errors.hpp"

#include <cmath>

namespace rpnv {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Appends coeff * (left kron right) to the triplet list, skipping exact zeros.
void add_kron(const Matrix& left, const Matrix& right, Complex coeff, std::vector<Triplet>& out) {
  const Eigen::Index n = right.rows();
  for (Eigen::Index i = 0; i < left.rows(); ++i) {
    for (Eigen::Index j = 0; j < left.cols(); ++j) {
      const Complex l = left(i, j);
      if (l == Complex(0)) continue;
      for (Eigen::Index a = 0; a < right.rows(); ++a) {
        for (Eigen::Index b = 0; b < right.cols(); ++b) {
          const Complex r = right(a, b);
          if (r == Complex(0)) continue;
          out.emplace_back(static_cast<int>(i * n + a), static_cast<int>(j * n + b), coeff * l * r);
        }
      }
    }
  }
}

}  // namespace

Liouvillian::Liouvillian(Matrix hamiltonian, std::vector<JumpTerm> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const Eigen::Index n = hamiltonian_.rows();
  if (hamiltonian_.cols() != n) throw InvalidArgument("Liouvillian: Hamiltonian not square");
  for (const auto& j : jumps_) {
    if (j.op.rows() != n || j.op.cols() != n) {
      throw InvalidArgument("Liouvillian: jump '" + j.name + "' has the wrong dimension");
    }
    if (!(j.rate >= 0)) throw InvalidArgument("Liouvillian: jump '" + j.name + "' has a negative rate");
  }

  const Matrix id = Matrix::Identity(n, n);
  const Complex minus_i(0, -1);
  std::vector<Triplet> triplets;
  add_kron(id, hamiltonian_, minus_i, triplets);
  add_kron(hamiltonian_.transpose(), id, -minus_i, triplets);
  for (const auto& j : jumps_) {
    if (j.rate == 0.0) continue;
    const Matrix ldl = j.op.adjoint() * j.op;
    add_kron(j.op.conjugate(), j.op, j.rate, triplets);
    add_kron(id, ldl, -0.5 * j.rate, triplets);
    add_kron(ldl.transpose(), id, -0.5 * j.rate, triplets);
  }
  super_.resize(n * n, n * n);
  super_.setFromTriplets(triplets.begin(), triplets.end());
  super_.prune(Complex(0), 0.0);
  super_.makeCompressed();
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) throw InvalidArgument("Liouvillian::apply: dimension mismatch");
  const Complex minus_i(0, -1);
  Matrix out = minus_i * (hamiltonian_ * rho - rho * hamiltonian_);
  for (const auto& j : jumps_) {
    if (j.rate == 0.0) continue;
    const Matrix ldl = j.op.adjoint() * j.op;
    out += j.rate * (j.op * rho * j.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

double Liouvillian::trace_preservation_error() const {
  const int n = dim();
  Eigen::VectorXcd trace_row = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) trace_row(i * n + i) = 1.0;
  const Eigen::VectorXcd col_traces = super_.adjoint() * trace_row;
  return col_traces.cwiseAbs().maxCoeff();
}

Vector vectorize(const Matrix& rho) { return rho.reshaped(); }

Matrix unvectorize(const Vector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) throw InvalidArgument("unvectorize: size mismatch");
  return v.reshaped(n, n);
}

Liouvillian assemble(const Matrix& hamiltonian, std::vector<JumpTerm> jumps) {
  return Liouvillian(hamiltonian, std::move(jumps));
}

std::vector<JumpTerm> recombination_jumps(const RateParams& rates, const SpinRegister& reg) {
  rates.validate();
  for (const char* label : {kElectron1Site, kElectron2Site, kChargeSite}) {
    if (!reg.contains(label)) {
      throw InvalidArgument(std::string("recombination_jumps: register lacks site ") + label);
    }
  }
  // |a><c| on a spin-1/2 site.
  auto unit = [](int a, int c) {
    Matrix m = Matrix::Zero(2, 2);
    m(a, c) = 1.0;
    return m;
  };
  std::vector<Matrix> e1(4), e2(4);
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      e1[2 * a + c] = reg.embed(unit(a, c), kElectron1Site);
      e2[2 * a + c] = reg.embed(unit(a, c), kElectron2Site);
    }
  }
  const Matrix g_from_e = reg.embed(unit(1, 0), kChargeSite);

  auto jump = [&](const Eigen::Vector4cd& u) {
    Matrix op = Matrix::Zero(reg.dim(), reg.dim());
    // |u><u| = sum u_{ab} conj(u_{cd}) |a><c|_1 |b><d|_2, with index 2a + b.
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          for (int d = 0; d < 2; ++d) {
            const Complex coeff = u(2 * a + b) * std::conj(u(2 * c + d));
            if (coeff != Complex(0)) op += coeff * e1[2 * a + c] * e2[2 * b + d];
          }
        }
      }
    }
    return Matrix(op * g_from_e);
  };

  const PairBasis basis = pair_basis();
  return {{jump(basis.singlet), rates.k_singlet, "recombination_s"},
          {jump(basis.t0), rates.k_triplet, "recombination_t0"},
          {jump(basis.t_plus), rates.k_triplet, "recombination_t+"},
          {jump(basis.t_minus), rates.k_triplet, "recombination_t-"}};
}

JumpTerm dephasing_jump(double gamma, const SpinRegister& reg) {
  if (!(gamma >= 0)) throw InvalidArgument("dephasing rate must be non-negative");
  return {reg.embed(spin_matrices_2s(2).z, kNvSite), gamma, "dephasing"};
}

std::vector<JumpTerm> relaxation_jumps(double relaxation_rate, const SpinRegister& reg) {
  if (!(relaxation_rate >= 0)) throw InvalidArgument("relaxation rate must be non-negative");
  std::vector<JumpTerm> out;
  if (relaxation_rate == 0.0) return out;
  const SpinMatrices pauli = pauli_matrices();
  const char* axis_names[] = {"x", "y", "z"};
  for (const char* label : {kElectron1Site, kElectron2Site}) {
    for (int a = 0; a < 3; ++a) {
      out.push_back({reg.embed(pauli[a], label), relaxation_rate,
                     std::string("relaxation_") + label + axis_names[a]});
    }
  }
  return out;
}

}  // namespace rpnv
