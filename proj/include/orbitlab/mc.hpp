#pragma once

// Monte Carlo estimation of I_n(lambda; r) = Prob[ ||pi(k.lambda)|| < r ]
// over Haar k in SO(n), plus the paired-sample structural checks.

#include "orbitlab/haar.hpp"
#include "orbitlab/spectrum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orbitlab {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

struct MCEstimate {
  std::int64_t hits = 0;
  std::int64_t total = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // Wilson score bounds
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  bool exact = false;    // analytically exact (no sampling variance)
  std::string note;

  double std_error() const;
};

// Wilson score interval at confidence z.
MCEstimate wilson_estimate(std::int64_t hits, std::int64_t total, double z = kZ95);

// Raw hit counter: counts samples k (indices [index_offset, index_offset + n_samples))
// with sum_i (k diag(d) k^T)_{ii}^2 < radius^2.  The diagonal is used in the
// order given (not sorted).  Partitioning across workers cannot change the
// count: streams are keyed by sample index and the reduction is integer.
std::int64_t count_hits(std::uint64_t seed, const std::vector<double>& diag,
                        double radius, std::int64_t n_samples,
                        std::int64_t index_offset = 0, int workers = 0);

// I_n(lambda; radius) estimate.  Nonzero traces are handled by the exact
// reduction: when tr^2/n >= radius^2 the result is exactly 0 with a
// zero-width interval; otherwise sampling proceeds (the per-sample indicator
// already equals the reduced one pointwise).
MCEstimate estimate_I(const Spectrum& s, double radius, std::int64_t n_samples,
                      const SamplerConfig& cfg, double z = kZ95, int workers = 0);

// Doubles N from n0 until the Wilson half-width drops below
// target_rel_ci * p_hat or the cap is reached; samples are reused across
// doublings (counter-based streams).
MCEstimate estimate_I_adaptive(const Spectrum& s, double radius, double target_rel_ci,
                               const SamplerConfig& cfg, std::int64_t n0 = 1 << 14,
                               std::int64_t cap = 100'000'000, double z = kZ95,
                               int workers = 0);

struct ScalingReport {
  std::int64_t hits_base = 0;
  std::int64_t hits_scaled = 0;
  std::int64_t total = 0;
  bool pointwise_dominated = false;  // every scaled hit was also a base hit
};

// Common-random-numbers check of I_n(t lambda) <= I_n(lambda), t >= 1.
// Domination is exact per sample, not statistical.
ScalingReport scaling_monotonicity_check(const Spectrum& s, double t,
                                         std::int64_t n_samples, const SamplerConfig& cfg);

struct WeylReport {
  MCEstimate base;
  MCEstimate permuted;
  double z_score = 0.0;
  bool ok = false;  // |z| < 3
};

// Distributional invariance under coordinate permutation, independent streams.
WeylReport weyl_invariance_check(const Spectrum& s, const std::vector<int>& perm,
                                 std::int64_t n_samples, const SamplerConfig& cfg);

// Constructive k0 with pi(k0.lambda) = 0 for tracefree lambda, by repeated
// planar rotations pairing a positive and a negative diagonal entry.
Rotation soft_lower_bound_witness(const Spectrum& s);

}  // namespace orbitlab
