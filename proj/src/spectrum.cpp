#include "orbitlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orbitlab {

Spectrum::Spectrum(std::vector<double> values) : v_(std::move(values)) {
  if (v_.size() < 2) throw std::invalid_argument("Spectrum: need n >= 2");
  for (double x : v_)
    if (!std::isfinite(x)) throw std::invalid_argument("Spectrum: entries must be finite");
  std::sort(v_.begin(), v_.end());
}

double Spectrum::trace() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }

double Spectrum::norm() const {
  double s = 0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}

std::vector<double> Spectrum::gaps() const {
  std::vector<double> g(v_.size() - 1);
  for (size_t i = 0; i + 1 < v_.size(); ++i) g[i] = v_[i + 1] - v_[i];
  return g;
}

bool Spectrum::tracefree() const { return std::abs(trace()) < 1e-12 * (1.0 + norm()); }

Spectrum Spectrum::scaled(double t) const {
  std::vector<double> w(v_);
  for (double& x : w) x *= t;
  return Spectrum(std::move(w));
}

SmallVec Spectrum::as_vector() const {
  SmallVec v(n());
  for (int i = 0; i < n(); ++i) v[i] = v_[static_cast<size_t>(i)];
  return v;
}

double log_prime(double x) {
  if (x < 0) throw std::domain_error("log_prime: negative input");
  return std::log(2.0 + x);
}

double L_n(const Spectrum& s) {
  const int n = s.n();
  if (n == 2) return 1.0;  // empty exponent
  const double nrm = s.norm();
  const double main_den = 1.0 + std::abs(s[1]) + std::abs(s[n - 2]);
  const double main = log_prime(nrm / main_den);
  if (n != 4) return std::pow(main, n - 2);
  const double exc_den = 1.0 + std::abs(s[0] - s[1]) + std::abs(s[2] - s[3]);
  return main * main * log_prime(nrm / exc_den);
}

double tilde_beta(const Spectrum& s) {
  double p = 1.0;
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) p *= 1.0 + std::abs(s[i] - s[j]);
  return p;
}

double A_n(const Spectrum& s) {
  return std::pow(1.0 + s.norm(), -(s.n() - 1)) * L_n(s);
}

std::string to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::OneGap: return "one-gap";
    case RegimeKind::OneGapExceptional4_2: return "one-gap-4-2";
    case RegimeKind::TwoGap: return "two-gap";
    case RegimeKind::TwoGapExceptional1_nm1: return "two-gap-1-nm1";
    case RegimeKind::Generic: return "generic";
  }
  return "unknown";
}

RegimeTag classify_regime(const Spectrum& s) {
  const int n = s.n();
  if (n < 3) throw std::invalid_argument("classify_regime: need n >= 3");
  RegimeTag tag;
  tag.gaps = s.gaps();
  tag.spread = s.spread();
  if (tag.spread <= 0) throw std::invalid_argument("classify_regime: degenerate spectrum");

  const auto& g = tag.gaps;
  int big = 0;
  for (int i = 1; i < static_cast<int>(g.size()); ++i)
    if (g[static_cast<size_t>(i)] > g[static_cast<size_t>(big)]) big = i;

  if (g[static_cast<size_t>(big)] > (1.0 - 1.0 / (100.0 * n)) * tag.spread) {
    tag.gap_i = big + 1;
    tag.kind = (n == 4 && tag.gap_i == 2) ? RegimeKind::OneGapExceptional4_2
                                          : RegimeKind::OneGap;
    return tag;
  }

  // indices of the two largest gaps, ties toward smaller index
  int second = (big == 0) ? 1 : 0;
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    if (i == big) continue;
    if (g[static_cast<size_t>(i)] > g[static_cast<size_t>(second)]) second = i;
  }
  int lo = std::min(big, second) + 1, hi = std::max(big, second) + 1;
  tag.gap_i = lo;
  tag.gap_j = hi;
  tag.kind = (lo == 1 && hi == n - 1) ? RegimeKind::TwoGapExceptional1_nm1
                                      : RegimeKind::TwoGap;
  return tag;
}

std::optional<Spectrum> trace_reduce(const Spectrum& s) {
  const double t = s.trace();
  const int n = s.n();
  if (t * t >= static_cast<double>(n)) return std::nullopt;
  if (std::abs(t) == 0.0) return s;
  const double scale = 1.0 / std::sqrt(1.0 - t * t / n);
  std::vector<double> w(s.values());
  for (double& x : w) x = (x - t / n) * scale;
  return Spectrum(std::move(w));
}

}  // namespace orbitlab
