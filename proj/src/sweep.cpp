#include "orbitlab/sweep.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orbitlab {

std::string to_string(Family f) {
  switch (f) {
    case Family::Generic: return "generic";
    case Family::OneGap: return "one-gap";
    case Family::OneGap4_2: return "one-gap-4-2";
    case Family::TwoGap: return "two-gap";
    case Family::TwoGap1Nm1: return "two-gap-1-nm1";
  }
  return "unknown";
}

std::optional<Family> family_from_string(const std::string& s) {
  if (s == "generic") return Family::Generic;
  if (s == "one-gap") return Family::OneGap;
  if (s == "one-gap-4-2") return Family::OneGap4_2;
  if (s == "two-gap") return Family::TwoGap;
  if (s == "two-gap-1-nm1") return Family::TwoGap1Nm1;
  return std::nullopt;
}

std::optional<RegimeKind> expected_regime(Family f) {
  switch (f) {
    case Family::Generic: return std::nullopt;
    case Family::OneGap: return RegimeKind::OneGap;
    case Family::OneGap4_2: return RegimeKind::OneGapExceptional4_2;
    case Family::TwoGap: return RegimeKind::TwoGap;
    case Family::TwoGap1Nm1: return RegimeKind::TwoGapExceptional1_nm1;
  }
  return std::nullopt;
}

namespace {

std::vector<double> centered(std::vector<double> v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
  return v;
}

}  // namespace

Spectrum make_family_spectrum(Family f, int n, double T, std::uint64_t seed,
                              std::uint64_t row) {
  if (n < 3 || n > kMaxDim) throw std::invalid_argument("make_family_spectrum: bad n");
  if (!(T > 0)) throw std::invalid_argument("make_family_spectrum: need T > 0");
  RandomStream rs(seed, mix64(row * 8 + static_cast<std::uint64_t>(f)));

  std::vector<double> v;
  switch (f) {
    case Family::Generic: {
      // gaps within a factor 3 of each other, rescaled to spread T
      for (;;) {
        std::vector<double> g(static_cast<size_t>(n - 1));
        double s = 0;
        for (double& x : g) {
          x = rs.next_uniform(1.0, 3.0);
          s += x;
        }
        v.assign(static_cast<size_t>(n), 0.0);
        for (int i = 1; i < n; ++i)
          v[static_cast<size_t>(i)] = v[static_cast<size_t>(i) - 1] +
                                      g[static_cast<size_t>(i) - 1] * (T / s);
        v = centered(v);
        break;
      }
      break;
    }
    case Family::OneGap: {
      // one low outlier, cluster of n-1 near T/n; intra-cluster spacing is
      // tied to T so the largest-gap criterion holds at every scale
      const double step = T / (400.0 * n * n);
      std::vector<double> rest(static_cast<size_t>(n - 1));
      for (int i = 0; i < n - 1; ++i)
        rest[static_cast<size_t>(i)] = T / n + (i + rs.next_uniform(0.2, 0.8)) * step;
      double s = std::accumulate(rest.begin(), rest.end(), 0.0);
      v = rest;
      v.insert(v.begin(), -s);
      break;
    }
    case Family::OneGap4_2: {
      if (n != 4) throw std::invalid_argument("one-gap-4-2 family needs n = 4");
      const double a = T / 2.0;
      const double eps = a / 1000.0;
      v = {-a, -a + eps, a - eps, a};
      break;
    }
    case Family::TwoGap: {
      if (n < 4) throw std::invalid_argument("two-gap family needs n >= 4");
      // gaps (T, T, 1, ..., 1): two largest at (1, 2), never (1, n-1)
      v.assign(static_cast<size_t>(n), 0.0);
      for (int i = 1; i < n; ++i) {
        const double gap = (i <= 2) ? T : 1.0 + 0.1 * rs.next_unit();
        v[static_cast<size_t>(i)] = v[static_cast<size_t>(i) - 1] + gap;
      }
      v = centered(v);
      break;
    }
    case Family::TwoGap1Nm1: {
      // endpoints at +-T, small symmetric middle cluster
      v.assign(static_cast<size_t>(n), 0.0);
      v.front() = -T;
      v.back() = T;
      const int mid = n - 2;
      for (int i = 0; i < mid; ++i)
        v[static_cast<size_t>(i) + 1] = (mid == 1) ? 0.0
                                                   : -0.8 + 1.6 * i / (mid - 1);
      v = centered(v);
      break;
    }
  }

  Spectrum s(std::move(v));
  const auto want = expected_regime(f);
  const RegimeTag tag = classify_regime(s);
  if (want && tag.kind != *want)
    throw std::runtime_error("make_family_spectrum: generated spectrum classifies as " +
                             to_string(tag.kind) + ", expected " + to_string(*want));
  return s;
}

}  // namespace orbitlab
