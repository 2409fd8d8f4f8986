#pragma once

// Reproducible Haar-uniform sampling on SO(n): Gaussian matrix, Gram-Schmidt
// orthonormalization (which is the positive-diagonal QR factor, so the
// sign correction is built in), then a first-column flip when det = -1.

#include "orbitlab/linalg.hpp"
#include "orbitlab/rng.hpp"

#include <cstdint>

namespace orbitlab {

struct SamplerConfig {
  std::uint64_t seed = 0;
  int n = 2;
  std::int64_t batch = 1 << 16;  // samples per accumulation block
};

// Fill q (n x n) with the Haar sample for (seed, index).  Bit-identical for
// fixed (seed, n, index) regardless of how the index space is partitioned
// across workers.
void haar_rotation_into(std::uint64_t seed, int n, std::int64_t index, SmallMat& q);

Rotation haar_rotation(const SamplerConfig& cfg, std::int64_t index);

}  // namespace orbitlab
