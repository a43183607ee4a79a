#include "rpnv/propagate.hpp"

#include "rpnv/errors.hpp"
#include "rpnv/hamiltonian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <deque>

namespace rpnv {

void TimeGrid::validate() const {
  if (!(t0 >= 0)) throw InvalidArgument("time grid: t0 must be >= 0");
  if (!(t1 > t0)) throw InvalidArgument("time grid: t1 must exceed t0");
  if (points < 2) throw InvalidArgument("time grid: need at least two points");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = time(i);
  return out;
}

TimeGrid TimeGrid::resolving(double t0, double t1, double omega, double per_period) {
  if (!(omega > 0) || !(per_period > 0)) throw InvalidArgument("time grid: omega and per_period must be positive");
  const double max_step = units::kTwoPi / (per_period * omega);
  const auto intervals = static_cast<std::size_t>(std::ceil((t1 - t0) / max_step));
  TimeGrid g{t0, t1, std::max<std::size_t>(intervals, 1) + 1};
  g.validate();
  return g;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::numeric_dense: return "numeric-dense";
    case Method::numeric_krylov: return "numeric-krylov";
    case Method::analytic: return "analytic";
  }
  return "unknown";
}

Matrix initial_state(const SpinRegister& reg) {
  const PairBasis basis = pair_basis();
  Matrix rho(1, 1);
  rho(0, 0) = 1.0;
  bool pair_done = false;
  for (const auto& site : reg.sites()) {
    const int d = site.dim();
    if (site.label() == kNvSite) {
      Matrix p = Matrix::Zero(3, 3);
      p(0, 0) = 1.0;
      rho = kron(rho, p);
    } else if (site.label() == kElectron1Site || site.label() == kElectron2Site) {
      if (pair_done) continue;
      // The singlet projector spans both electron sites; they must be adjacent.
      const std::size_t i1 = reg.index_of(kElectron1Site);
      const std::size_t i2 = reg.index_of(kElectron2Site);
      if (i2 != i1 + 1) throw InvalidArgument("initial_state: electron sites must be adjacent (e1, e2)");
      rho = kron(rho, projector(basis.singlet));
      pair_done = true;
    } else if (site.kind() == SpinSite::Kind::charge_flag) {
      Matrix p = Matrix::Zero(2, 2);
      p(0, 0) = 1.0;
      rho = kron(rho, p);
    } else {
      rho = kron(rho, Matrix::Identity(d, d) / static_cast<double>(d));
    }
  }
  if (!pair_done) throw InvalidArgument("initial_state: register lacks the radical pair");
  return rho;
}

void validate_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw InvalidArgument("density matrix not square");
  if (hermiticity_error(rho) > tol) throw InvalidArgument("density matrix not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol) throw InvalidArgument("density matrix trace is not 1");
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw InvalidArgument("density matrix is not positive semidefinite");
}

std::vector<Eigen::Index> reachable_support(const SparseMatrix& generator, const Vector& v0) {
  const Eigen::Index n = generator.rows();
  if (v0.size() != n) throw InvalidArgument("reachable_support: size mismatch");
  // Column-major storage: column j lists the rows that element j feeds into.
  std::vector<char> seen(n, 0);
  std::deque<Eigen::Index> queue;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v0(i) != Complex(0)) {
      seen[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const Eigen::Index j = queue.front();
    queue.pop_front();
    for (SparseMatrix::InnerIterator it(generator, j); it; ++it) {
      if (!seen[it.row()]) {
        seen[it.row()] = 1;
        queue.push_back(it.row());
      }
    }
  }
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

namespace {

// Generator restricted to the reachable support of the initial state.
struct ReducedProblem {
  std::vector<Eigen::Index> support;
  SparseMatrix generator;
  Vector state;
  int dim = 0;

  Matrix expand(const Vector& reduced) const {
    Vector full = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
    for (std::size_t i = 0; i < support.size(); ++i) full(support[i]) = reduced(static_cast<Eigen::Index>(i));
    Matrix rho = unvectorize(full, dim);
    return 0.5 * (rho + rho.adjoint());
  }
};

ReducedProblem reduce(const Liouvillian& l, const Matrix& rho0) {
  validate_density_matrix(rho0);
  if (rho0.rows() != l.dim()) throw InvalidArgument("initial state does not match the generator dimension");
  ReducedProblem out;
  out.dim = l.dim();
  const Vector v0 = vectorize(rho0);
  const SparseMatrix& full = l.superoperator();
  out.support = reachable_support(full, v0);

  std::vector<Eigen::Index> position(full.rows(), -1);
  for (std::size_t i = 0; i < out.support.size(); ++i) position[out.support[i]] = static_cast<Eigen::Index>(i);

  const auto m = static_cast<Eigen::Index>(out.support.size());
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(full.nonZeros());
  for (Eigen::Index c = 0; c < full.outerSize(); ++c) {
    if (position[c] < 0) continue;
    for (SparseMatrix::InnerIterator it(full, c); it; ++it) {
      const Eigen::Index r = position[it.row()];
      if (r >= 0) triplets.emplace_back(static_cast<int>(r), static_cast<int>(position[c]), it.value());
    }
  }
  out.generator.resize(m, m);
  out.generator.setFromTriplets(triplets.begin(), triplets.end());
  out.generator.makeCompressed();
  out.state.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) out.state(i) = v0(out.support[i]);
  return out;
}

}  // namespace

void propagate_dense(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid,
                     const StateVisitor& visit) {
  grid.validate();
  ReducedProblem problem = reduce(l, rho0);
  const Matrix step = (Matrix(problem.generator) * grid.step()).exp();
  Vector state = problem.state;
  for (std::size_t i = 0; i < grid.points; ++i) {
    if (i > 0) state = step * state;
    visit(i, grid.time(i), problem.expand(state));
  }
}

Trajectory propagate_dense(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid) {
  Trajectory out;
  propagate_dense(l, rho0, grid, [&](std::size_t, double t, const Matrix& rho) {
    out.times.push_back(t);
    out.states.push_back(rho);
  });
  return out;
}

KrylovStats propagate_krylov(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid,
                             const StateVisitor& visit, const KrylovOptions& options) {
  grid.validate();
  ReducedProblem problem = reduce(l, rho0);
  KrylovExponential expv(problem.generator, options);
  KrylovStats total;
  Vector state = problem.state;
  for (std::size_t i = 0; i < grid.points; ++i) {
    if (i > 0) {
      const KrylovStats s = expv.advance(state, grid.step());
      total.substeps += s.substeps;
      total.matvecs += s.matvecs;
      total.rejections += s.rejections;
      total.error_estimate += s.error_estimate;
    }
    visit(i, grid.time(i), problem.expand(state));
  }
  return total;
}

Trajectory propagate_krylov(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid,
                            const KrylovOptions& options) {
  Trajectory out;
  propagate_krylov(
      l, rho0, grid,
      [&](std::size_t, double t, const Matrix& rho) {
        out.times.push_back(t);
        out.states.push_back(rho);
      },
      options);
  return out;
}

SignalRecorder::SignalRecorder(const SpinRegister& reg, Method method) {
  trace_.method = method;
  has_nv_ = reg.contains(kNvSite);
  if (has_nv_) {
    Matrix p = Matrix::Zero(3, 3);
    p(0, 0) = 1.0;
    bright_ = reg.embed(p, kNvSite);
  } else {
    bright_ = reg.identity();
  }
  Matrix e = Matrix::Zero(2, 2);
  e(0, 0) = 1.0;
  charge_e_ = reg.embed(e, kChargeSite);
  bright_e_ = bright_ * charge_e_;
}

void SignalRecorder::operator()(std::size_t, double t, const Matrix& rho) {
  const double p = (bright_.cwiseProduct(rho.transpose())).sum().real();
  const double pe = (charge_e_.cwiseProduct(rho.transpose())).sum().real();
  const double pbe = (bright_e_.cwiseProduct(rho.transpose())).sum().real();
  trace_.times.push_back(t);
  trace_.p.push_back(has_nv_ ? p : std::nan(""));
  trace_.p_e.push_back(pe);
  trace_.p_g.push_back(1.0 - pe);
  trace_.p_bright_e.push_back(has_nv_ ? pbe : std::nan(""));
}

StateVisitor SignalRecorder::visitor() {
  return [this](std::size_t i, double t, const Matrix& rho) { (*this)(i, t, rho); };
}

SignalTrace observables(const Trajectory& trajectory, const SpinRegister& reg, Method method) {
  SignalRecorder rec(reg, method);
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) rec(i, trajectory.times[i], trajectory.states[i]);
  return rec.take();
}

}  // namespace rpnv
