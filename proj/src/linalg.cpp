#include "orbitlab/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace orbitlab {

SymMatrix::SymMatrix(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("SymMatrix: matrix must be square");
  if (a.rows() < 1 || a.rows() > kMaxDim)
    throw std::invalid_argument("SymMatrix: dimension out of range");
  m_ = 0.5 * (a + a.transpose());
  // force exact symmetry bit-for-bit
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = 0; j < i; ++j) m_(i, j) = m_(j, i);
  if (!m_.allFinite()) throw std::invalid_argument("SymMatrix: entries must be finite");
}

SymMatrix SymMatrix::from_diag(const Eigen::Ref<const Eigen::VectorXd>& d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d.size(), d.size());
  m.diagonal() = d;
  return SymMatrix(m);
}

SymEigen sym_eigen(const SymMatrix& m) {
  const int n = m.dim();
  SmallMat a = m.mat();
  SmallMat v = SmallMat::Identity(n, n);

  auto off_norm = [&]() {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double scale = m.frobenius_norm();
  const double tol = 1e-13 * scale;
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  if (scale > 0) {
    for (; sweep < kMaxSweeps && off_norm() > tol; ++sweep) {
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (apq == 0.0) continue;
          const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          for (int k = 0; k < n; ++k) {
            const double akp = a(k, p), akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(k, q) = s * akp + c * akq;
          }
          for (int k = 0; k < n; ++k) {
            const double apk = a(p, k), aqk = a(q, k);
            a(p, k) = c * apk - s * aqk;
            a(q, k) = s * apk + c * aqk;
          }
          for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    if (off_norm() > tol)
      throw std::runtime_error("sym_eigen: Jacobi sweeps did not converge");
  }

  SymEigen out;
  std::array<int, kMaxDim> idx{};
  std::iota(idx.begin(), idx.begin() + n, 0);
  std::sort(idx.begin(), idx.begin() + n,
            [&](int i, int j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    out.vectors.col(k) = v.col(idx[k]);
  }
  out.sweeps = sweep;
  return out;
}

SymMatrix conjugate(const Rotation& k, const SymMatrix& m) {
  if (k.dim() != m.dim())
    throw std::invalid_argument("conjugate: dimension mismatch");
  SmallMat r = k.mat * m.mat() * k.mat.transpose();
  return SymMatrix(r);
}

SmallVec diag_part(const SymMatrix& m) { return m.mat().diagonal(); }

double diag_norm(const SymMatrix& m) { return m.mat().diagonal().norm(); }

SmallVec iwasawa_h(const Eigen::Ref<const Eigen::MatrixXd>& g) {
  const int n = static_cast<int>(g.rows());
  if (g.rows() != g.cols() || n < 1 || n > kMaxDim)
    throw std::invalid_argument("iwasawa_h: bad dimensions");
  const double det = g.determinant();
  if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-9)
    throw std::invalid_argument("iwasawa_h: det g must equal 1");

  SmallMat m = g * g.transpose();
  // Upper-triangular factor B with B B^T = g g^T via Cholesky of the
  // index-reversed matrix.
  SmallMat flipped(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flipped(i, j) = m(n - 1 - i, n - 1 - j);
  Eigen::LLT<SmallMat> llt(flipped);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("iwasawa_h: g g^T not numerically SPD");
  SmallMat l = llt.matrixL();
  SmallVec h(n);
  for (int i = 0; i < n; ++i) h[i] = std::log(l(n - 1 - i, n - 1 - i));
  return h;
}

SmallMat rotation_from_skew(const Eigen::Ref<const Eigen::MatrixXd>& x) {
  const int n = static_cast<int>(x.rows());
  if (x.rows() != x.cols()) throw std::invalid_argument("rotation_from_skew: not square");
  if ((x + x.transpose()).norm() > 1e-12 * (1.0 + x.norm()))
    throw std::invalid_argument("rotation_from_skew: input not skew-symmetric");
  SmallMat a = x;
  int squarings = 0;
  while (a.norm() > 0.5) {
    a *= 0.5;
    ++squarings;
  }
  SmallMat r = SmallMat::Identity(n, n);
  SmallMat term = SmallMat::Identity(n, n);
  for (int k = 1; k <= 16; ++k) {
    term = SmallMat(term * a / static_cast<double>(k));
    r += term;
    if (term.norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) r = SmallMat(r * r);
  return r;
}

SmallMat plane_rotation(int n, int i, int j, double theta) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("plane_rotation: bad coordinate pair");
  SmallMat r = SmallMat::Identity(n, n);
  const double c = std::cos(theta), s = std::sin(theta);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

}  // namespace orbitlab
