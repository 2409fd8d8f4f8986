#include "orbitlab/mc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace orbitlab {

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Single-range hit loop; q is scratch.
std::int64_t count_range(std::uint64_t seed, const double* d, int n, double r2,
                         std::int64_t lo, std::int64_t hi, SmallMat& q) {
  std::int64_t hits = 0;
  for (std::int64_t idx = lo; idx < hi; ++idx) {
    haar_rotation_into(seed, n, idx, q);
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double di = 0;
      for (int j = 0; j < n; ++j) {
        const double qij = q(i, j);
        di += qij * qij * d[j];
      }
      s += di * di;
    }
    if (s < r2) ++hits;
  }
  return hits;
}

}  // namespace

double MCEstimate::std_error() const {
  if (total <= 0) return 0.0;
  return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / static_cast<double>(total));
}

MCEstimate wilson_estimate(std::int64_t hits, std::int64_t total, double z) {
  if (total <= 0 || hits < 0 || hits > total)
    throw std::invalid_argument("wilson_estimate: bad counts");
  MCEstimate e;
  e.hits = hits;
  e.total = total;
  const double n = static_cast<double>(total);
  e.p_hat = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (e.p_hat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(e.p_hat * (1.0 - e.p_hat) / n + z2 / (4.0 * n * n)) / denom;
  e.ci_low = std::max(0.0, center - half);
  e.ci_high = std::min(1.0, center + half);
  return e;
}

std::int64_t count_hits(std::uint64_t seed, const std::vector<double>& diag,
                        double radius, std::int64_t n_samples,
                        std::int64_t index_offset, int workers) {
  const int n = static_cast<int>(diag.size());
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("count_hits: bad dimension");
  if (n_samples <= 0) return 0;
  const double r2 = radius * radius;
  const int w = std::min<std::int64_t>(resolve_workers(workers), n_samples);

  if (w <= 1) {
    SmallMat q;
    return count_range(seed, diag.data(), n, r2, index_offset,
                       index_offset + n_samples, q);
  }

  std::vector<std::int64_t> partial(static_cast<size_t>(w), 0);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  const std::int64_t chunk = (n_samples + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    const std::int64_t lo = index_offset + t * chunk;
    const std::int64_t hi = std::min(index_offset + n_samples, lo + chunk);
    pool.emplace_back([&, lo, hi, t]() {
      if (lo >= hi) return;
      SmallMat q;
      partial[static_cast<size_t>(t)] = count_range(seed, diag.data(), n, r2, lo, hi, q);
    });
  }
  for (auto& th : pool) th.join();
  std::int64_t hits = 0;
  for (auto h : partial) hits += h;
  return hits;
}

MCEstimate estimate_I(const Spectrum& s, double radius, std::int64_t n_samples,
                      const SamplerConfig& cfg, double z, int workers) {
  if (radius <= 0) throw std::invalid_argument("estimate_I: radius must be positive");
  if (n_samples < 1) throw std::invalid_argument("estimate_I: need N >= 1");
  const double t = s.trace();
  if (t * t / s.n() >= radius * radius) {
    MCEstimate e;
    e.total = n_samples;
    e.seed = cfg.seed;
    e.exact = true;
    e.note = "trace-cutoff";
    return e;
  }
  const std::int64_t hits = count_hits(cfg.seed, s.values(), radius, n_samples, 0, workers);
  MCEstimate e = wilson_estimate(hits, n_samples, z);
  e.seed = cfg.seed;
  if (!s.tracefree()) e.note = "trace-reduced";
  return e;
}

MCEstimate estimate_I_adaptive(const Spectrum& s, double radius, double target_rel_ci,
                               const SamplerConfig& cfg, std::int64_t n0,
                               std::int64_t cap, double z, int workers) {
  if (target_rel_ci <= 0) throw std::invalid_argument("estimate_I_adaptive: bad target");
  const double t = s.trace();
  if (t * t / s.n() >= radius * radius) {
    MCEstimate e;
    e.total = n0;
    e.seed = cfg.seed;
    e.exact = true;
    e.note = "trace-cutoff";
    return e;
  }
  std::int64_t total = 0, hits = 0;
  std::int64_t next = std::min(std::max<std::int64_t>(n0, 2), cap);
  MCEstimate e;
  for (;;) {
    hits += count_hits(cfg.seed, s.values(), radius, next - total, total, workers);
    total = next;
    e = wilson_estimate(hits, total, z);
    e.seed = cfg.seed;
    const double half = 0.5 * (e.ci_high - e.ci_low);
    if (e.p_hat > 0 && half <= target_rel_ci * e.p_hat) break;
    if (total >= cap) {
      e.note = "budget-cap";
      break;
    }
    next = std::min(cap, total * 2);
  }
  if (!s.tracefree() && e.note.empty()) e.note = "trace-reduced";
  return e;
}

ScalingReport scaling_monotonicity_check(const Spectrum& s, double t,
                                         std::int64_t n_samples,
                                         const SamplerConfig& cfg) {
  if (t < 1.0) throw std::invalid_argument("scaling_monotonicity_check: need t >= 1");
  ScalingReport rep;
  rep.total = n_samples;
  rep.pointwise_dominated = true;
  const int n = s.n();
  SmallMat q;
  const auto& d = s.values();
  for (std::int64_t idx = 0; idx < n_samples; ++idx) {
    haar_rotation_into(cfg.seed, n, idx, q);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      double di = 0;
      for (int j = 0; j < n; ++j) di += q(i, j) * q(i, j) * d[static_cast<size_t>(j)];
      sum += di * di;
    }
    const bool hit_base = sum < 1.0;
    const bool hit_scaled = t * t * sum < 1.0;
    rep.hits_base += hit_base;
    rep.hits_scaled += hit_scaled;
    if (hit_scaled && !hit_base) rep.pointwise_dominated = false;
  }
  return rep;
}

WeylReport weyl_invariance_check(const Spectrum& s, const std::vector<int>& perm,
                                 std::int64_t n_samples, const SamplerConfig& cfg) {
  const int n = s.n();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("weyl_invariance_check: bad permutation size");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<size_t>(p)])
      throw std::invalid_argument("weyl_invariance_check: not a permutation");
    seen[static_cast<size_t>(p)] = true;
  }
  std::vector<double> permuted(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    permuted[static_cast<size_t>(i)] = s[perm[static_cast<size_t>(i)]];

  WeylReport rep;
  const std::int64_t h1 = count_hits(cfg.seed, s.values(), 1.0, n_samples);
  const std::int64_t h2 =
      count_hits(derived_seed(cfg.seed, 0x5774), permuted, 1.0, n_samples);
  rep.base = wilson_estimate(h1, n_samples);
  rep.base.seed = cfg.seed;
  rep.permuted = wilson_estimate(h2, n_samples);
  rep.permuted.seed = derived_seed(cfg.seed, 0x5774);
  const double se = std::sqrt(rep.base.std_error() * rep.base.std_error() +
                              rep.permuted.std_error() * rep.permuted.std_error());
  rep.z_score = se > 0 ? (rep.base.p_hat - rep.permuted.p_hat) / se : 0.0;
  rep.ok = std::abs(rep.z_score) < 3.0;
  return rep;
}

Rotation soft_lower_bound_witness(const Spectrum& s) {
  if (!s.tracefree())
    throw std::invalid_argument("soft_lower_bound_witness: trace must vanish");
  const int n = s.n();
  SmallMat x = SmallMat::Zero(n, n);
  x.diagonal() = s.as_vector();
  SmallMat k0 = SmallMat::Identity(n, n);

  const double tol = 1e-14 * (1.0 + s.norm());
  for (int step = 0; step < n; ++step) {
    int p = 0, q = 0;
    for (int i = 1; i < n; ++i) {
      if (x(i, i) > x(p, p)) p = i;
      if (x(i, i) < x(q, q)) q = i;
    }
    if (x(p, p) <= tol && x(q, q) >= -tol) break;
    // Rotate in the (p, q) plane until the entry at p vanishes.  The entry
    // moves continuously from x_pp > 0 at theta = 0 to x_qq <= 0 at
    // theta = pi/2, so bisection finds the crossing.
    const double app = x(p, p), aqq = x(q, q), apq = x(p, q);
    auto entry_at = [&](double th) {
      const double c = std::cos(th), sn = std::sin(th);
      return c * c * app - 2.0 * c * sn * apq + sn * sn * aqq;
    };
    double lo = 0.0, hi = 0.5 * M_PI;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (entry_at(mid) > 0)
        lo = mid;
      else
        hi = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const SmallMat r = plane_rotation(n, p, q, theta);
    x = SmallMat(r * x * r.transpose());
    k0 = SmallMat(r * k0);
  }

  Rotation rot;
  rot.mat = k0;
  rot.seed = 0;
  rot.sample_index = -1;
  return rot;
}

}  // namespace orbitlab
