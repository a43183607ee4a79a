#include "support.hpp"

#include "rpnv/errors.hpp"
#include "rpnv/spin_algebra.hpp"

#include <doctest.h>

using namespace rpnv;
using rpnv::test::max_abs;

TEST_SUITE("spin_algebra") {
  TEST_CASE("spin-1/2 and spin-1 Sz are diagonal with descending m") {
    const auto half = spin_matrices(0.5);
    CHECK(half.z(0, 0).real() == doctest::Approx(0.5));
    CHECK(half.z(1, 1).real() == doctest::Approx(-0.5));
    const auto one = spin_matrices(1.0);
    CHECK(max_abs(one.z - Matrix(Eigen::Vector3cd(1, 0, -1).asDiagonal())) < 1e-15);
  }

  TEST_CASE("su(2) algebra holds for several spins") {
    for (int two_s = 1; two_s <= 5; ++two_s) {
      const auto s = spin_matrices_2s(two_s);
      const double q = 0.5 * two_s;
      const Matrix id = Matrix::Identity(two_s + 1, two_s + 1);
      CHECK(max_abs(commutator(s.x, s.y) - Complex(0, 1) * s.z) < 1e-12);
      CHECK(max_abs(commutator(s.y, s.z) - Complex(0, 1) * s.x) < 1e-12);
      CHECK(max_abs(s.x * s.x + s.y * s.y + s.z * s.z - q * (q + 1) * id) < 1e-12);
      CHECK(is_hermitian(s.x));
      CHECK(is_hermitian(s.y));
    }
  }

  TEST_CASE("non-half-integer spin is rejected") {
    CHECK_THROWS_AS(spin_matrices(0.3), InvalidArgument);
    CHECK_THROWS_AS(spin_matrices(0.0), InvalidArgument);
    CHECK_THROWS_AS(spin_matrices_2s(0), InvalidArgument);
  }

  TEST_CASE("Pauli matrices") {
    const auto p = pauli_matrices();
    const Matrix id = Matrix::Identity(2, 2);
    CHECK(max_abs(p.z - Matrix(Eigen::Vector2cd(1, -1).asDiagonal())) < 1e-15);
    CHECK(max_abs(p.x * p.y - Complex(0, 1) * p.z) < 1e-15);
    for (int a = 0; a < 3; ++a) CHECK(max_abs(p[a] * p[a] - id) < 1e-15);
  }

  TEST_CASE("register dimension and embedding") {
    SpinRegister reg({SpinSite::spin("NV", 2), SpinSite::spin("e", 1), SpinSite::charge_flag("c")});
    CHECK(reg.dim() == 12);
    const auto s1 = spin_matrices_2s(2);
    const auto sh = spin_matrices_2s(1);
    const Matrix a = reg.embed(s1.z, "NV");
    CHECK(std::abs(a.trace()) < 1e-15);
    // oracle: explicit Kronecker product in register order
    CHECK(max_abs(a - kron(kron(s1.z, Matrix::Identity(2, 2)), Matrix::Identity(2, 2))) < 1e-15);
    const Matrix b = reg.embed(sh.x, "e");
    CHECK(max_abs(a * b - b * a) < 1e-15);
    CHECK(max_abs(reg.embed(Matrix::Identity(2, 2), "c") - reg.identity()) < 1e-15);
    // spectral norm and Hermiticity preserved
    CHECK(is_hermitian(b));
    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() == doctest::Approx(0.5));
  }

  TEST_CASE("embedding errors") {
    SpinRegister reg({SpinSite::spin("a", 1), SpinSite::spin("b", 2)});
    CHECK_THROWS_AS(reg.embed(Matrix::Identity(2, 2), "x"), InvalidArgument);
    CHECK_THROWS_AS(reg.embed(Matrix::Identity(2, 2), "b"), InvalidArgument);
    CHECK_THROWS_AS(SpinRegister({SpinSite::spin("a", 1), SpinSite::spin("a", 1)}), InvalidArgument);
  }

  TEST_CASE("pair basis is orthonormal and complete") {
    const PairBasis b = pair_basis();
    const Eigen::Vector4cd v[] = {b.singlet, b.t0, b.t_plus, b.t_minus};
    Matrix sum = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) CHECK(std::abs(v[i].dot(v[j]) - (i == j ? 1.0 : 0.0)) < 1e-15);
      sum += projector(v[i]);
    }
    CHECK(max_abs(sum - Matrix::Identity(4, 4)) < 1e-15);
    // total spin S^2 annihilates the singlet
    SpinRegister reg({SpinSite::spin("1", 1), SpinSite::spin("2", 1)});
    const auto s = spin_matrices_2s(1);
    Matrix s2 = Matrix::Zero(4, 4);
    for (int a = 0; a < 3; ++a) {
      const Matrix t = reg.embed(s[a], "1") + reg.embed(s[a], "2");
      s2 += t * t;
    }
    CHECK((s2 * b.singlet).norm() < 1e-15);
    CHECK(std::abs(b.t0.dot(s2 * b.t0) - 2.0) < 1e-14);
  }

  TEST_CASE("partial trace") {
    SpinRegister reg({SpinSite::spin("A", 2), SpinSite::spin("B", 1), SpinSite::charge_flag("C")});
    const Matrix ra = rpnv::test::random_density(3, 1);
    const Matrix rb = rpnv::test::random_density(2, 2);
    const Matrix rc = rpnv::test::random_density(2, 3);
    const Matrix rho = kron(kron(ra, rb), rc);
    CHECK(max_abs(partial_trace(rho, {"A"}, reg) - ra) < 1e-14);
    CHECK(max_abs(partial_trace(rho, {"B"}, reg) - rb) < 1e-14);
    CHECK(max_abs(partial_trace(rho, {"A", "C"}, reg) - kron(ra, rc)) < 1e-14);

    const Matrix mixed = rpnv::test::random_density(12, 4);
    const Matrix red = partial_trace(mixed, {"B"}, reg);
    CHECK(std::abs(red.trace() - mixed.trace()) < 1e-14);
    Eigen::SelfAdjointEigenSolver<Matrix> es(red);
    CHECK(es.eigenvalues().minCoeff() > -1e-14);

    SpinRegister pair({SpinSite::spin("1", 1), SpinSite::spin("2", 1)});
    const Matrix one = partial_trace(projector(pair_basis().singlet), {"1"}, pair);
    CHECK(max_abs(one - 0.5 * Matrix::Identity(2, 2)) < 1e-15);

    CHECK_THROWS_AS(partial_trace(mixed, {"Z"}, reg), InvalidArgument);
  }
}
