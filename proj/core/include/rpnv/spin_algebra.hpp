#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace rpnv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// One tensor factor of the composite Hilbert space.
///
/// Spin sites use the |s, m> basis ordered m = s, s-1, ..., -s. The charge
/// flag is a two-level label ordered (|E>, |G>): charge separated, recombined.
class SpinSite {
 public:
  enum class Kind { spin, charge_flag };

  /// `two_s` is twice the spin quantum number (1 for spin-1/2, 2 for spin-1).
  static SpinSite spin(std::string label, int two_s);
  static SpinSite charge_flag(std::string label);

  const std::string& label() const noexcept { return label_; }
  Kind kind() const noexcept { return kind_; }
  int two_s() const noexcept { return two_s_; }
  double spin_quantum_number() const noexcept { return 0.5 * two_s_; }
  int dim() const noexcept { return kind_ == Kind::spin ? two_s_ + 1 : 2; }

 private:
  SpinSite(std::string label, Kind kind, int two_s)
      : label_(std::move(label)), kind_(kind), two_s_(two_s) {}

  std::string label_;
  Kind kind_;
  int two_s_;
};

/// Ordered list of sites; operators on the register are Kronecker products
/// in this order (first site is the most significant index).
class SpinRegister {
 public:
  explicit SpinRegister(std::vector<SpinSite> sites);

  const std::vector<SpinSite>& sites() const noexcept { return sites_; }
  int dim() const noexcept { return total_dim_; }
  bool contains(std::string_view label) const noexcept;
  std::size_t index_of(std::string_view label) const;
  const SpinSite& site(std::string_view label) const;

  /// Kronecker-embeds a single-site operator, identity elsewhere.
  Matrix embed(const Matrix& op, std::string_view label) const;
  Matrix identity() const;

 private:
  std::vector<SpinSite> sites_;
  int total_dim_ = 1;
};

struct SpinMatrices {
  Matrix x;
  Matrix y;
  Matrix z;

  const Matrix& operator[](int axis) const { return axis == 0 ? x : axis == 1 ? y : z; }
};

/// Angular-momentum matrices for spin `s` (any positive half-integer).
SpinMatrices spin_matrices(double s);
SpinMatrices spin_matrices_2s(int two_s);

/// Pauli matrices, eigenvalues +-1.
SpinMatrices pauli_matrices();

/// Two-electron singlet/triplet states in the |m1 m2> product basis
/// (|uu>, |ud>, |du>, |dd>).
struct PairBasis {
  Eigen::Vector4cd singlet;
  Eigen::Vector4cd t0;
  Eigen::Vector4cd t_plus;
  Eigen::Vector4cd t_minus;
};
PairBasis pair_basis();

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix projector(const Vector& ket);

/// ||A - A^dagger||_F / max(||A||_F, tiny). Zero for Hermitian input.
double hermiticity_error(const Matrix& a);
bool is_hermitian(const Matrix& a, double rel_tol = 1e-12);

/// Reduced operator on the `keep` sites (output ordered as in the register).
Matrix partial_trace(const Matrix& rho, const std::vector<std::string>& keep,
                     const SpinRegister& reg);

}  // namespace rpnv
