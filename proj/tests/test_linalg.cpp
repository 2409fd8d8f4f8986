#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitlab/haar.hpp"
#include "orbitlab/linalg.hpp"
#include "orbitlab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace orbitlab;

namespace {

SymMatrix random_sym(int n, RandomStream& rs, double scale = 1.0) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = scale * rs.next_normal();
  return SymMatrix(a);
}

}  // namespace

TEST_CASE("sym_eigen identity and diagonal") {
  auto e = sym_eigen(SymMatrix(Eigen::MatrixXd::Identity(3, 3)));
  for (int i = 0; i < 3; ++i) CHECK(e.values[i] == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::VectorXd d(3);
  d << -1, 0, 1;
  auto e2 = sym_eigen(SymMatrix::from_diag(d));
  CHECK(e2.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e2.values[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e2.values[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen on the bordered Fan-Pall example") {
  // border sqrt(0.375) recovers spectrum (-1, 0, 1); the characteristic
  // polynomial vanishing at t = -1, 0, 1 is the independent oracle
  const double z = std::sqrt(0.375);
  Eigen::MatrixXd m(3, 3);
  m << -0.5, 0, z, 0, 0.5, z, z, z, 0;
  for (double t : {-1.0, 0.0, 1.0}) {
    Eigen::MatrixXd shifted = m - t * Eigen::MatrixXd::Identity(3, 3);
    CHECK(std::abs(shifted.determinant()) < 1e-12);
  }
  auto e = sym_eigen(SymMatrix(m));
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(e.values[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(e.values[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sym_eigen round trip and orthogonality across dimensions") {
  RandomStream rs(11, 0);
  for (int n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const SymMatrix m = random_sym(n, rs, rep % 3 == 0 ? 100.0 : 1.0);
      const auto e = sym_eigen(m);
      const SmallMat rec =
          e.vectors * e.values.asDiagonal() * e.vectors.transpose();
      CHECK((rec - m.mat()).norm() < 1e-10 * (1.0 + m.frobenius_norm()));
      CHECK((e.vectors.transpose() * e.vectors - SmallMat::Identity(n, n)).norm() < 1e-12);
      for (int i = 0; i + 1 < n; ++i) CHECK(e.values[i] <= e.values[i + 1]);

      // cross-check eigenvalues against Eigen's solver
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m.mat());
      for (int i = 0; i < n; ++i)
        CHECK(e.values[i] ==
              doctest::Approx(ref.eigenvalues()[i]).epsilon(1e-10).scale(1.0 + m.frobenius_norm()));
    }
  }
}

TEST_CASE("conjugate basics") {
  Eigen::VectorXd d(3);
  d << 2, -1, 5;
  const SymMatrix m = SymMatrix::from_diag(d);
  Rotation id;
  id.mat = SmallMat::Identity(3, 3);
  CHECK((conjugate(id, m).mat() - m.mat()).norm() == 0.0);

  RandomStream rs(3, 7);
  SamplerConfig cfg{42, 3};
  const Rotation k = haar_rotation(cfg, 0);
  const SymMatrix zero(Eigen::MatrixXd::Zero(3, 3));
  CHECK(conjugate(k, zero).mat().norm() == 0.0);

  // quarter-turn in the first two coordinates swaps the entries
  Rotation quarter;
  quarter.mat = plane_rotation(3, 0, 1, M_PI / 2);
  const SymMatrix swapped = conjugate(quarter, m);
  CHECK(swapped(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(swapped(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(swapped(2, 2) == doctest::Approx(5.0).epsilon(1e-14));

  // Frobenius norm preserved
  const SymMatrix r = conjugate(k, m);
  CHECK(r.frobenius_norm() == doctest::Approx(m.frobenius_norm()).epsilon(1e-12));

  Rotation wrong;
  wrong.mat = SmallMat::Identity(4, 4);
  CHECK_THROWS_AS(conjugate(wrong, m), std::invalid_argument);
}

TEST_CASE("sorted eigenvalues are conjugation invariant") {
  RandomStream rs(5, 1);
  SamplerConfig cfg{99, 4};
  for (int rep = 0; rep < 20; ++rep) {
    const SymMatrix m = random_sym(4, rs);
    const Rotation k = haar_rotation(cfg, rep);
    const auto e1 = sym_eigen(m);
    const auto e2 = sym_eigen(conjugate(k, m));
    for (int i = 0; i < 4; ++i)
      CHECK(e1.values[i] == doctest::Approx(e2.values[i]).epsilon(1e-9).scale(1.0 + m.frobenius_norm()));
  }
}

TEST_CASE("diag_part and diag_norm") {
  Eigen::VectorXd d(3);
  d << -1, 0, 1;
  CHECK(diag_norm(SymMatrix::from_diag(d)) == doctest::Approx(std::sqrt(2.0)));

  Eigen::MatrixXd offdiag = Eigen::MatrixXd::Zero(3, 3);
  offdiag(0, 1) = offdiag(1, 0) = 4.0;
  CHECK(diag_norm(SymMatrix(offdiag)) == 0.0);

  Rotation quarter;
  quarter.mat = plane_rotation(3, 0, 1, M_PI / 2);
  const SymMatrix m = SymMatrix::from_diag(d);
  CHECK(diag_norm(conjugate(quarter, m)) == doctest::Approx(diag_norm(m)).epsilon(1e-12));
}

TEST_CASE("iwasawa projection") {
  CHECK(iwasawa_h(Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);

  // already diagonal with det 1
  Eigen::VectorXd h0(3);
  h0 << 0.3, -0.5, 0.2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  for (int i = 0; i < 3; ++i) a(i, i) = std::exp(h0[i]);
  const SmallVec h = iwasawa_h(a);
  for (int i = 0; i < 3; ++i) CHECK(h[i] == doctest::Approx(h0[i]).epsilon(1e-12));

  // pure rotation projects to zero
  SamplerConfig cfg{7, 4};
  const Rotation k = haar_rotation(cfg, 3);
  CHECK(iwasawa_h(Eigen::MatrixXd(k.mat)).norm() < 1e-12);

  CHECK_THROWS_AS(iwasawa_h(2.0 * Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("iwasawa recovers h from n exp(h) k") {
  RandomStream rs(17, 2);
  SamplerConfig cfg{17, 0};
  for (int n = 2; n <= 5; ++n) {
    cfg.n = n;
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXd h0(n);
      double s = 0;
      for (int i = 0; i < n; ++i) {
        h0[i] = rs.next_uniform(-1.5, 1.5);
        s += h0[i];
      }
      for (int i = 0; i < n; ++i) h0[i] -= s / n;

      Eigen::MatrixXd upper = Eigen::MatrixXd::Identity(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) upper(i, j) = rs.next_uniform(-2, 2);
      Eigen::MatrixXd expa = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) expa(i, i) = std::exp(h0[i]);
      const Rotation k0 = haar_rotation(cfg, 1000 + rep);
      const Eigen::MatrixXd g = upper * expa * k0.mat;

      const SmallVec h = iwasawa_h(g);
      CHECK(std::abs(h.sum()) < 1e-10);
      for (int i = 0; i < n; ++i)
        CHECK(h[i] == doctest::Approx(h0[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("rotation_from_skew") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 2);
  const double th = 0.37;
  x(0, 1) = -th;
  x(1, 0) = th;
  const SmallMat r = rotation_from_skew(x);
  CHECK((r - plane_rotation(2, 0, 1, th)).norm() < 1e-14);

  RandomStream rs(23, 0);
  Eigen::MatrixXd y(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) y(i, j) = rs.next_normal();
  Eigen::MatrixXd skew = y - y.transpose();
  const SmallMat q = rotation_from_skew(skew);
  CHECK((q.transpose() * q - SmallMat::Identity(4, 4)).norm() < 1e-12);
  CHECK(q.determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("SymMatrix validation") {
  Eigen::MatrixXd bad(2, 3);
  CHECK_THROWS_AS(SymMatrix(bad), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 3, 0;
  const SymMatrix s(asym);
  CHECK(s(0, 1) == s(1, 0));
  CHECK(s(0, 1) == doctest::Approx(2.0));
}
