#pragma once

// Small dense symmetric/orthogonal kernels: cyclic-Jacobi symmetric
// eigensolver, adjoint-action conjugation k.X = k X k^T, diagonal
// projection, and the Iwasawa projection H(g) of g = n exp(H) k.

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace orbitlab {

// Dimensions stay <= 8 everywhere, so dense types are stack allocated.
inline constexpr int kMaxDim = 8;
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::ColMajor, kMaxDim, kMaxDim>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

// Real symmetric matrix; construction symmetrizes so (i,j) == (j,i) exactly.
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::Ref<const Eigen::MatrixXd>& a);

  int dim() const { return static_cast<int>(m_.rows()); }
  const SmallMat& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double frobenius_norm() const { return m_.norm(); }

  static SymMatrix from_diag(const Eigen::Ref<const Eigen::VectorXd>& d);

 private:
  SmallMat m_;
};

// Special orthogonal sample with provenance.  sample_index is -1 for
// rotations constructed deterministically rather than drawn.
struct Rotation {
  SmallMat mat;
  std::uint64_t seed = 0;
  std::int64_t sample_index = -1;

  int dim() const { return static_cast<int>(mat.rows()); }
  double orthogonality_defect() const {
    return (mat.transpose() * mat - SmallMat::Identity(mat.rows(), mat.cols())).norm();
  }
};

struct SymEigen {
  SmallVec values;   // ascending
  SmallMat vectors;  // columns; m = V diag(values) V^T
  int sweeps = 0;
};

// Cyclic Jacobi sweeps; converged when the off-diagonal Frobenius norm drops
// below 1e-13 * ||m||_F, sweep cap 100.  Throws std::runtime_error if the cap
// is hit (must not happen for n <= 8).
SymEigen sym_eigen(const SymMatrix& m);

// k m k^T, re-symmetrized.  Throws std::invalid_argument on dimension mismatch.
SymMatrix conjugate(const Rotation& k, const SymMatrix& m);

SmallVec diag_part(const SymMatrix& m);
double diag_norm(const SymMatrix& m);

// Iwasawa projection: h with g = n exp(diag(h)) k, n unit upper triangular,
// k in SO(n).  Computed from the upper-triangular Cholesky factor B of g g^T
// (B B^T = g g^T, diag B > 0), h_i = log B_ii.  Requires |det g - 1| < 1e-9.
SmallVec iwasawa_h(const Eigen::Ref<const Eigen::MatrixXd>& g);

// exp of the skew-symmetric x (scaling-and-squaring Taylor); lands in SO(n).
SmallMat rotation_from_skew(const Eigen::Ref<const Eigen::MatrixXd>& x);

// Planar rotation by theta acting on coordinates (i, j) of an n-dim space.
SmallMat plane_rotation(int n, int i, int j, double theta);

}  // namespace orbitlab
