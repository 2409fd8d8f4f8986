#include "orbitlab/interlace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace orbitlab {

namespace {

void require_strict_interlacing(const Spectrum& lam, const Spectrum& mu) {
  if (mu.n() != lam.n() - 1)
    throw std::invalid_argument("interlacing: mu must have length n-1");
  for (int i = 0; i < mu.n(); ++i)
    if (!(lam[i] < mu[i] && mu[i] < lam[i + 1]))
      throw std::invalid_argument("interlacing: need lambda_i < mu_i < lambda_{i+1}");
}

double log_jacobian(const double* lam, int n, const double* mu) {
  const int m = n - 1;
  double num = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) num += std::log(std::abs(mu[i] - mu[j]));
  double den = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) den += std::log(std::abs(lam[i] - mu[j]));
  return num - 0.5 * den;
}

// Integrates f over the open box M(lambda) = prod (lambda_k, lambda_{k+1}),
// optionally restricted to slab_lo < sum(mu) < slab_hi.  Each level is
// clipped to the exact sub-interval where the remaining box can still meet
// the slab, and endpoint substitutions are applied only at true lambda
// endpoints (where J carries the |mu - lambda|^{-1/2} singularity).
class BoxIntegrator {
 public:
  BoxIntegrator(const std::vector<double>& lam, std::optional<std::pair<double, double>> slab,
                std::function<double(const double*)> f, const QuadOptions& opts,
                QuadContext& ctx)
      : lam_(lam), slab_(slab), f_(std::move(f)), opts_(opts), ctx_(ctx) {
    m_ = static_cast<int>(lam_.size()) - 1;
    // suffix sums of interval endpoints, for slab clipping
    lo_rest_.assign(static_cast<size_t>(m_) + 1, 0.0);
    hi_rest_.assign(static_cast<size_t>(m_) + 1, 0.0);
    for (int k = m_ - 1; k >= 0; --k) {
      lo_rest_[static_cast<size_t>(k)] = lo_rest_[static_cast<size_t>(k) + 1] + lam_[static_cast<size_t>(k)];
      hi_rest_[static_cast<size_t>(k)] = hi_rest_[static_cast<size_t>(k) + 1] + lam_[static_cast<size_t>(k) + 1];
    }
  }

  QuadValue run() {
    QuadValue out;
    out.value = level(0, 0.0, out);
    out.evals = ctx_.evals;
    out.converged = out.converged && !ctx_.exhausted;
    return out;
  }

 private:
  double level(int k, double partial, QuadValue& out) {
    double a = lam_[static_cast<size_t>(k)];
    double b = lam_[static_cast<size_t>(k) + 1];
    if (slab_) {
      // remaining variables j > k contribute at least lo_rest - (a..) etc.
      const double rest_lo = lo_rest_[static_cast<size_t>(k) + 1];
      const double rest_hi = hi_rest_[static_cast<size_t>(k) + 1];
      a = std::max(a, slab_->first - partial - rest_hi);
      b = std::min(b, slab_->second - partial - rest_lo);
      if (!(a < b)) return 0.0;
    }
    const bool sing_left = (a == lam_[static_cast<size_t>(k)]);
    const bool sing_right = (b == lam_[static_cast<size_t>(k) + 1]);

    auto g = [&](double x) -> double {
      buf_[static_cast<size_t>(k)] = x;
      if (k == m_ - 1) {
        ctx_.spend(0);
        return f_(buf_.data());
      }
      return level(k + 1, partial + x, out);
    };
    QuadValue q = integrate_sqrt_endpoints(g, a, b, sing_left, sing_right, opts_, ctx_);
    if (k == 0) {
      out.error = q.error;
      out.converged = q.converged;
    }
    return q.value;
  }

  std::vector<double> lam_;
  std::optional<std::pair<double, double>> slab_;
  std::function<double(const double*)> f_;
  QuadOptions opts_;
  QuadContext& ctx_;
  int m_ = 0;
  std::array<double, kMaxDim> buf_{};
  std::vector<double> lo_rest_, hi_rest_;
};

double base_I2(double half_gap, double radius) {
  if (radius <= 0) return 0.0;
  if (half_gap <= 0) return 1.0;
  return (2.0 / M_PI) * std::asin(std::min(1.0, radius / (half_gap * std::sqrt(2.0))));
}

// I_m(mu; radius) for mu of any trace, strictly ascending; recursion depth
// m down to the closed-form m = 2 base case.
double I_rec(const std::vector<double>& mu, double radius, const QuadOptions& opts,
             QuadContext& ctx) {
  const int m = static_cast<int>(mu.size());
  if (radius <= 0) return 0.0;
  double tr = 0;
  for (double x : mu) tr += x;
  const double rr = radius * radius - tr * tr / m;
  if (rr <= 0) return 0.0;
  const double r0 = std::sqrt(rr);
  std::vector<double> w(mu);
  for (double& x : w) x -= tr / m;

  if (m == 2) return base_I2(w[1], r0);

  auto f = [&](const double* v) -> double {
    double trv = 0;
    for (int i = 0; i < m - 1; ++i) trv += v[i];
    const double rr2 = r0 * r0 - trv * trv;
    if (rr2 <= 0) return 0.0;
    std::vector<double> inner(v, v + (m - 1));
    const double li = I_rec(inner, std::sqrt(rr2), opts, ctx);
    if (li == 0.0) return 0.0;
    return li * std::exp(log_jacobian(w.data(), m, v));
  };
  BoxIntegrator box(w, std::make_pair(-r0, r0), f, opts, ctx);
  return cached_c_n(m) * box.run().value;
}

}  // namespace

InterlacingPair::InterlacingPair(Spectrum lam, Spectrum m)
    : lambda(std::move(lam)), mu(std::move(m)) {
  require_strict_interlacing(lambda, mu);
}

BorderData fan_pall_border(const InterlacingPair& p) {
  const int n = p.lambda.n();
  BorderData b;
  b.z.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    double lg = 0;
    for (int j = 0; j < n; ++j) lg += std::log(std::abs(p.lambda[j] - p.mu[i]));
    for (int j = 0; j < n - 1; ++j)
      if (j != i) lg -= std::log(std::abs(p.mu[i] - p.mu[j]));
    b.z[i] = std::exp(0.5 * lg);
  }
  b.z_n = p.lambda.trace() - p.mu.trace();
  return b;
}

SymMatrix build_bordered(const Spectrum& mu, const BorderData& b) {
  const int n = mu.n() + 1;
  if (b.z.size() != n - 1) throw std::invalid_argument("build_bordered: size mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n - 1; ++i) {
    m(i, i) = mu[i];
    m(i, n - 1) = b.z[i];
    m(n - 1, i) = b.z[i];
  }
  m(n - 1, n - 1) = b.z_n;
  return SymMatrix(m);
}

double jacobian_J(const InterlacingPair& p) {
  return std::exp(log_jacobian(p.lambda.values().data(), p.lambda.n(),
                               p.mu.values().data()));
}

NormalizationResult normalization_c(const Spectrum& s, const QuadOptions& opts,
                                    long max_evals) {
  const int n = s.n();
  auto gaps = s.gaps();
  for (double g : gaps)
    if (g <= 0) throw std::invalid_argument("normalization_c: lambda must be strictly regular");
  QuadContext ctx;
  ctx.max_evals = max_evals;
  const auto& lam = s.values();
  auto f = [&](const double* v) { return std::exp(log_jacobian(lam.data(), n, v)); };
  BoxIntegrator box(lam, std::nullopt, f, opts, ctx);
  NormalizationResult out;
  out.quad = box.run();
  out.raw_integral = out.quad.value;
  out.c_n = 1.0 / out.raw_integral;
  return out;
}

double cached_c_n(int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("cached_c_n: n out of range");
  static std::array<double, 6> cache{};
  static std::once_flag flags[6];
  std::call_once(flags[n], [n]() {
    std::vector<double> ref(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ref[static_cast<size_t>(i)] = i - 0.5 * (n - 1);
    QuadOptions opts;
    opts.rel_tol = (n <= 3) ? 1e-10 : (n == 4 ? 1e-8 : 1e-6);
    cache[static_cast<size_t>(n)] =
        normalization_c(Spectrum(ref), opts, 400'000'000).c_n;
  });
  return cache[static_cast<size_t>(n)];
}

QuadValue recursive_I(const Spectrum& s, double radius, const QuadOptions& opts,
                      long max_evals) {
  const int n = s.n();
  if (radius <= 0) throw std::invalid_argument("recursive_I: radius must be positive");
  if (n > 4) throw std::invalid_argument("recursive_I: supported for n <= 4");
  if (!s.tracefree()) throw std::invalid_argument("recursive_I: lambda must be tracefree");
  for (double g : s.gaps())
    if (g <= 0) throw std::invalid_argument("recursive_I: lambda must be strictly regular");

  QuadContext ctx;
  ctx.max_evals = max_evals;
  QuadValue out;
  if (n == 2) {
    out.value = base_I2(s[1] - s.trace() / 2, radius);
    out.evals = 1;
    return out;
  }

  const double r0 = radius;
  const auto& lam = s.values();
  const double tr = s.trace();
  auto f = [&](const double* v) -> double {
    double trv = 0;
    for (int i = 0; i < n - 1; ++i) trv += v[i];
    const double d = tr - trv;
    const double rr = r0 * r0 - d * d;
    if (rr <= 0) return 0.0;
    std::vector<double> inner(v, v + (n - 1));
    const double li = I_rec(inner, std::sqrt(rr), opts, ctx);
    if (li == 0.0) return 0.0;
    return li * std::exp(log_jacobian(lam.data(), n, v));
  };
  BoxIntegrator box(lam, std::make_pair(tr - r0, tr + r0), f, opts, ctx);
  out = box.run();
  out.value *= cached_c_n(n);
  out.error *= cached_c_n(n);
  return out;
}

QuadValue J_n_integral(const Spectrum& s, const QuadOptions& opts, long max_evals) {
  const int n = s.n();
  if (n < 3 || n > 5) throw std::invalid_argument("J_n_integral: n must be in [3, 5]");
  if (!s.tracefree()) throw std::invalid_argument("J_n_integral: lambda must be tracefree");
  for (double g : s.gaps())
    if (g <= 0) throw std::invalid_argument("J_n_integral: lambda must be strictly regular");

  QuadContext ctx;
  ctx.max_evals = max_evals;
  const auto& lam = s.values();
  auto f = [&](const double* v) -> double {
    std::vector<double> mu(v, v + (n - 1));
    return A_n(Spectrum(mu)) * std::exp(log_jacobian(lam.data(), n, v));
  };
  BoxIntegrator box(lam, std::make_pair(-1.0, 1.0), f, opts, ctx);
  return box.run();
}

}  // namespace orbitlab
