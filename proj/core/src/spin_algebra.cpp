#include "rpnv/spin_algebra.hpp"

#include "rpnv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rpnv {

SpinSite SpinSite::spin(std::string label, int two_s) {
  if (two_s < 1) throw InvalidArgument("spin site '" + label + "': 2s must be a positive integer");
  return SpinSite(std::move(label), Kind::spin, two_s);
}

SpinSite SpinSite::charge_flag(std::string label) {
  return SpinSite(std::move(label), Kind::charge_flag, 0);
}

SpinRegister::SpinRegister(std::vector<SpinSite> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw InvalidArgument("spin register needs at least one site");
  std::set<std::string> seen;
  for (const auto& s : sites_) {
    if (!seen.insert(s.label()).second) {
      throw InvalidArgument("duplicate site label '" + s.label() + "'");
    }
    total_dim_ *= s.dim();
  }
}

bool SpinRegister::contains(std::string_view label) const noexcept {
  return std::any_of(sites_.begin(), sites_.end(),
                     [&](const SpinSite& s) { return s.label() == label; });
}

std::size_t SpinRegister::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i].label() == label) return i;
  }
  throw InvalidArgument("unknown site label '" + std::string(label) + "'");
}

const SpinSite& SpinRegister::site(std::string_view label) const {
  return sites_[index_of(label)];
}

Matrix SpinRegister::embed(const Matrix& op, std::string_view label) const {
  const std::size_t target = index_of(label);
  const int d = sites_[target].dim();
  if (op.rows() != d || op.cols() != d) {
    throw InvalidArgument("operator dimension " + std::to_string(op.rows()) + " does not match site '" +
                          std::string(label) + "' of dimension " + std::to_string(d));
  }
  int before = 1;
  int after = 1;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i < target) before *= sites_[i].dim();
    if (i > target) after *= sites_[i].dim();
  }
  return kron(kron(Matrix::Identity(before, before), op), Matrix::Identity(after, after));
}

Matrix SpinRegister::identity() const { return Matrix::Identity(total_dim_, total_dim_); }

SpinMatrices spin_matrices_2s(int two_s) {
  if (two_s < 1) throw InvalidArgument("spin_matrices: 2s must be a positive integer");
  const int d = two_s + 1;
  const double s = 0.5 * two_s;
  Matrix plus = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = s - i;
    z(i, i) = m;
    if (i > 0) plus(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Matrix minus = plus.adjoint();
  return {0.5 * (plus + minus), Complex(0, -0.5) * (plus - minus), z};
}

SpinMatrices spin_matrices(double s) {
  const double two_s = 2.0 * s;
  const double rounded = std::round(two_s);
  if (!(s > 0) || std::abs(two_s - rounded) > 1e-12) {
    throw InvalidArgument("spin_matrices: s must be a positive half-integer");
  }
  return spin_matrices_2s(static_cast<int>(rounded));
}

SpinMatrices pauli_matrices() {
  SpinMatrices half = spin_matrices_2s(1);
  return {2.0 * half.x, 2.0 * half.y, 2.0 * half.z};
}

PairBasis pair_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  PairBasis b;
  b.t_plus << 1, 0, 0, 0;
  b.singlet << 0, r, -r, 0;
  b.t0 << 0, r, r, 0;
  b.t_minus << 0, 0, 0, 1;
  return b;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix projector(const Vector& ket) { return ket * ket.adjoint(); }

double hermiticity_error(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("hermiticity_error: matrix not square");
  const double norm = a.norm();
  const double diff = (a - a.adjoint()).norm();
  return norm > 0 ? diff / norm : diff;
}

bool is_hermitian(const Matrix& a, double rel_tol) { return hermiticity_error(a) <= rel_tol; }

Matrix partial_trace(const Matrix& rho, const std::vector<std::string>& keep,
                     const SpinRegister& reg) {
  if (rho.rows() != reg.dim() || rho.cols() != reg.dim()) {
    throw InvalidArgument("partial_trace: operator does not match register dimension");
  }
  std::vector<bool> kept(reg.sites().size(), false);
  for (const auto& label : keep) {
    const std::size_t i = reg.index_of(label);
    if (kept[i]) throw InvalidArgument("partial_trace: label '" + label + "' listed twice");
    kept[i] = true;
  }

  // Split every full index into (kept, traced) sub-indices.
  const int n = reg.dim();
  std::vector<int> kept_index(n, 0);
  std::vector<int> traced_index(n, 0);
  int kept_dim = 1;
  for (std::size_t s = 0; s < kept.size(); ++s) {
    if (kept[s]) kept_dim *= reg.sites()[s].dim();
  }
  for (int full = 0; full < n; ++full) {
    int rem = full;
    int k = 0;
    int t = 0;
    int k_stride = 1;
    int t_stride = 1;
    for (std::size_t s = reg.sites().size(); s-- > 0;) {
      const int d = reg.sites()[s].dim();
      const int digit = rem % d;
      rem /= d;
      if (kept[s]) {
        k += digit * k_stride;
        k_stride *= d;
      } else {
        t += digit * t_stride;
        t_stride *= d;
      }
    }
    kept_index[full] = k;
    traced_index[full] = t;
  }

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (traced_index[a] == traced_index[b]) out(kept_index[a], kept_index[b]) += rho(a, b);
    }
  }
  return out;
}

}  // namespace rpnv
