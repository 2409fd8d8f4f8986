#include "orbitlab/haar.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace orbitlab {

namespace {

// Determinant sign via in-place LU with partial pivoting; n <= 8.
int det_sign(double* a, int n) {
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(a[c * n + c]);
    for (int r = c + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0;
    if (piv != c) {
      sign = -sign;
      for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
    }
    const double inv = 1.0 / a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] * inv;
      for (int j = c + 1; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  for (int c = 0; c < n; ++c)
    if (a[c * n + c] < 0) sign = -sign;
  return sign;
}

}  // namespace

void haar_rotation_into(std::uint64_t seed, int n, std::int64_t index, SmallMat& q) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("haar_rotation: n out of range");
  RandomStream rs(seed, static_cast<std::uint64_t>(index));
  q.resize(n, n);
  if (n == 1) {
    q(0, 0) = 1.0;
    return;
  }

  std::array<double, kMaxDim * kMaxDim> lu{};
  for (;;) {  // redraw on (measure-zero) degenerate draws, continuing the stream
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) q(i, j) = rs.next_normal();
    for (int i = 0; i < n * n; ++i) lu[static_cast<size_t>(i)] = q.data()[i];

    // Modified Gram-Schmidt with one re-orthogonalization pass; the R
    // diagonal is positive by construction, which is exactly the QR sign
    // convention that makes Q Haar on O(n).
    bool degenerate = false;
    for (int j = 0; j < n && !degenerate; ++j) {
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < j; ++i)
          q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
      const double r = q.col(j).norm();
      if (r < 1e-150) {
        degenerate = true;
        break;
      }
      q.col(j) /= r;
    }
    if (!degenerate) break;
  }

  if (det_sign(lu.data(), n) < 0) q.col(0) = -q.col(0);
}

Rotation haar_rotation(const SamplerConfig& cfg, std::int64_t index) {
  Rotation rot;
  rot.seed = cfg.seed;
  rot.sample_index = index;
  haar_rotation_into(cfg.seed, cfg.n, index, rot.mat);
  return rot;
}

}  // namespace orbitlab
