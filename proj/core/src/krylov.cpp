#include "rpnv/krylov.hpp"

#include "rpnv/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rpnv {

namespace {

constexpr double kShrink = 0.9;   // safety factor on step-size updates
constexpr double kAccept = 1.2;   // accept when err <= kAccept * t_step * tol
constexpr double kHappy = 1e-13;  // relative happy-breakdown threshold

double round_step(double t) {
  if (!(t > 0) || !std::isfinite(t)) return t;
  const double s = std::pow(10.0, std::floor(std::log10(t)) - 1.0);
  return std::ceil(t / s) * s;
}

}  // namespace

double one_norm(const SparseMatrix& a) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(a, c); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

KrylovExponential::KrylovExponential(const SparseMatrix& generator, KrylovOptions options)
    : a_(generator), opts_(options), norm_(one_norm(generator)) {
  if (opts_.subspace < 2) throw InvalidArgument("Krylov subspace dimension must be >= 2");
  if (!(opts_.tol > 0)) throw InvalidArgument("Krylov tolerance must be positive");
}

KrylovStats KrylovExponential::advance(Vector& w, double t_out) {
  KrylovStats stats;
  if (!(t_out >= 0)) throw InvalidArgument("Krylov advance: negative time");
  double beta = w.norm();
  if (beta == 0.0 || t_out == 0.0 || norm_ == 0.0) return stats;

  const Eigen::Index n = a_.rows();
  const int m = static_cast<int>(std::min<Eigen::Index>(opts_.subspace, n));
  const double tol = opts_.tol;

  if (!(next_step_ > 0)) {
    // log of ((m+1)/e)^(m+1) sqrt(2 pi (m+1)), kept in logs so large m does not overflow.
    const double mp1 = m + 1.0;
    const double log_fact = mp1 * std::log(mp1 / std::exp(1.0)) + 0.5 * std::log(2.0 * std::numbers::pi * mp1);
    const double log_step =
        -std::log(norm_) + (log_fact + std::log(tol) - std::log(4.0 * beta * norm_)) / m;
    next_step_ = round_step(std::exp(log_step));
  }

  Matrix v(n, m + 1);
  Matrix h(m + 2, m + 2);
  double t_now = 0.0;
  while (t_now < t_out) {
    double t_step = std::min(t_out - t_now, next_step_);
    h.setZero();
    v.col(0) = w / beta;

    int basis = m;
    int extra = 2;  // augmented rows used by the error estimate; 0 after happy breakdown
    for (int j = 0; j < m; ++j) {
      Vector p = a_ * v.col(j);
      ++stats.matvecs;
      for (int pass = 0; pass < 2; ++pass) {  // Gram-Schmidt with one re-orthogonalization
        for (int i = 0; i <= j; ++i) {
          const Complex c = v.col(i).dot(p);
          h(i, j) += c;
          p -= c * v.col(i);
        }
      }
      const double s = p.norm();
      if (s <= kHappy * norm_ || j + 1 == n) {
        extra = 0;
        basis = j + 1;
        t_step = t_out - t_now;
        break;
      }
      h(j + 1, j) = s;
      v.col(j + 1) = p / s;
    }

    double av_norm = 0.0;
    if (extra != 0) {
      h(m + 1, m) = 1.0;
      av_norm = (a_ * v.col(m)).norm();
      ++stats.matvecs;
    }

    Matrix f;
    double err_loc = 0.0;
    double order = 1.0 / m;
    int rejections = 0;
    while (true) {
      const int mx = basis + extra;
      f = (t_step * h.topLeftCorner(mx, mx)).exp();
      if (extra == 0) {
        err_loc = std::numeric_limits<double>::epsilon() * beta;
        break;
      }
      const double phi1 = std::abs(beta * f(m, 0));
      const double phi2 = std::abs(beta * f(m + 1, 0) * av_norm);
      if (phi1 > 10.0 * phi2) {
        err_loc = phi2;
      } else if (phi1 > phi2) {
        err_loc = phi1 * phi2 / (phi1 - phi2);
      } else {
        err_loc = phi1;
        order = 1.0 / (m - 1);
      }
      if (err_loc <= kAccept * t_step * tol) break;
      if (++rejections > opts_.max_rejections) {
        throw KrylovBreakdown("Krylov step rejected too often; achieved local residual " +
                                  std::to_string(err_loc),
                              err_loc);
      }
      t_step = round_step(kShrink * t_step * std::pow(t_step * tol / err_loc, order));
    }
    stats.rejections += rejections;

    const int mx = basis + std::max(0, extra - 1);
    w = v.leftCols(mx) * (beta * f.col(0).head(mx));
    beta = w.norm();
    t_now += t_step;
    ++stats.substeps;
    stats.error_estimate += err_loc;

    const double safe_err = std::max(err_loc, std::numeric_limits<double>::min());
    const double proposal = round_step(kShrink * t_step * std::pow(t_step * tol / safe_err, order));
    if (extra != 0) next_step_ = proposal;
    if (beta == 0.0) break;
  }
  return stats;
}

}  // namespace rpnv
