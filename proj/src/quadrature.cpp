#include "orbitlab/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace orbitlab {

namespace {

GaussRule make_rule(int m) {
  if (m < 2 || m > 128) throw std::invalid_argument("gauss_legendre: order out of range");
  GaussRule r;
  r.nodes.resize(static_cast<size_t>(m));
  r.weights.resize(static_cast<size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_m
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.nodes[static_cast<size_t>(i)] = -x;
    r.weights[static_cast<size_t>(i)] = w;
    r.nodes[static_cast<size_t>(m - 1 - i)] = x;
    r.weights[static_cast<size_t>(m - 1 - i)] = w;
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

}  // namespace orbitlab
