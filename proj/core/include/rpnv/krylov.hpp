#pragma once

#include "rpnv/liouvillian.hpp"

#include <cstddef>

namespace rpnv {

struct KrylovOptions {
  int subspace = 30;       // Arnoldi dimension m
  double tol = 1e-8;       // local error tolerance per unit time step
  int max_rejections = 25;
};

struct KrylovStats {
  std::size_t substeps = 0;
  std::size_t matvecs = 0;
  std::size_t rejections = 0;
  double error_estimate = 0.0;  // accumulated local error estimates
};

/// w <- exp(t A) w by Arnoldi projection with adaptive sub-stepping.
///
/// Step sizes follow the classic expokit error estimator; a step whose
/// estimated local error exceeds the tolerance is shrunk and retried. The
/// last accepted step size is reused by the next call.
class KrylovExponential {
 public:
  KrylovExponential(const SparseMatrix& generator, KrylovOptions options = {});

  KrylovStats advance(Vector& w, double t);

  double generator_norm() const noexcept { return norm_; }

 private:
  const SparseMatrix& a_;
  KrylovOptions opts_;
  double norm_ = 0.0;
  double next_step_ = 0.0;
};

/// Induced 1-norm (max absolute column sum).
double one_norm(const SparseMatrix& a);

}  // namespace rpnv
