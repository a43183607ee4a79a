#pragma once

#include "rpnv/krylov.hpp"
#include "rpnv/liouvillian.hpp"
#include "rpnv/spin_algebra.hpp"

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace rpnv {

/// Uniform grid of `points` sample times from t0 to t1 inclusive (seconds).
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1e-6;
  std::size_t points = 2;

  void validate() const;
  double step() const { return (t1 - t0) / static_cast<double>(points - 1); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * step(); }
  std::vector<double> times() const;

  /// Smallest uniform grid on [t0, t1] with at least `per_period` samples per
  /// period 2 pi / omega.
  static TimeGrid resolving(double t0, double t1, double omega, double per_period = 20.0);
};

enum class Method { numeric_dense, numeric_krylov, analytic };
std::string_view to_string(Method m);

/// P(t) = population of |+1> on the NV; P_E, P_G charge populations;
/// p_bright_e = Tr[rho (|+1><+1| x |E><E|)], the part of P carried by the E block.
struct SignalTrace {
  std::vector<double> times;
  std::vector<double> p;
  std::vector<double> p_e;
  std::vector<double> p_g;
  std::vector<double> p_bright_e;
  Method method = Method::numeric_dense;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
};

using StateVisitor = std::function<void(std::size_t index, double t, const Matrix& rho)>;

/// |+1><+1| (NV, if present) x |s><s| x (x_j I_j / d_j) x |E><E|.
Matrix initial_state(const SpinRegister& reg);

/// Throws InvalidArgument unless rho is Hermitian, unit trace and positive
/// semidefinite to `tol`.
void validate_density_matrix(const Matrix& rho, double tol = 1e-9);

/// Indices of vec(rho) reachable from the support of `v0` under `generator`.
/// The generator leaves the span of these indices invariant.
std::vector<Eigen::Index> reachable_support(const SparseMatrix& generator, const Vector& v0);

/// Reference path: one dense exponential of the (support-restricted)
/// generator over the grid step, applied repeatedly.
void propagate_dense(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid,
                     const StateVisitor& visit);
Trajectory propagate_dense(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid);

/// Krylov exponential action from grid point to grid point.
KrylovStats propagate_krylov(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid,
                             const StateVisitor& visit, const KrylovOptions& options = {});
Trajectory propagate_krylov(const Liouvillian& l, const Matrix& rho0, const TimeGrid& grid,
                            const KrylovOptions& options = {});

/// Streams states into a SignalTrace.
class SignalRecorder {
 public:
  SignalRecorder(const SpinRegister& reg, Method method);

  void operator()(std::size_t index, double t, const Matrix& rho);
  StateVisitor visitor();
  const SignalTrace& trace() const noexcept { return trace_; }
  SignalTrace take() { return std::move(trace_); }

 private:
  Matrix bright_;    // |+1><+1| on the NV (identity if the register has no NV)
  Matrix charge_e_;  // |E><E| on the charge flag
  Matrix bright_e_;
  bool has_nv_ = false;
  SignalTrace trace_;
};

SignalTrace observables(const Trajectory& trajectory, const SpinRegister& reg,
                        Method method = Method::numeric_dense);

}  // namespace rpnv
