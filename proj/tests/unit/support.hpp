#pragma once

#include "rpnv/spin_algebra.hpp"

#include <random>

namespace rpnv::test {

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

/// Random density matrix G G^dag / Tr, reproducible from `seed`.
inline Matrix random_density(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  return rho / rho.trace();
}

inline Matrix random_hermitian(int n, unsigned seed) {
  Matrix a = random_density(n, seed);
  Matrix b = random_density(n, seed + 1000);
  return a - b;
}

}  // namespace rpnv::test
