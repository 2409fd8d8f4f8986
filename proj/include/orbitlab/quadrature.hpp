#pragma once

// Adaptive Gauss-Legendre quadrature with substitutions for inverse-
// square-root endpoint singularities.  Nodes are generated by Newton
// iteration on Legendre polynomials and cached per order.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace orbitlab {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Shared evaluation budget for (possibly nested) integrals.
struct QuadContext {
  long evals = 0;
  long max_evals = 50'000'000;
  bool exhausted = false;

  bool spend(long k) {
    evals += k;
    if (evals > max_evals) exhausted = true;
    return !exhausted;
  }
};

struct QuadOptions {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;   // additional absolute floor
  int max_depth = 40;
  int gl_order = 15;
};

struct QuadValue {
  double value = 0.0;
  double error = 0.0;     // accumulated local error estimates
  long evals = 0;
  bool converged = true;  // false when budget or depth cut refinement short
};

namespace detail {

template <class F>
double gl_apply(F&& f, double a, double b, const GaussRule& rule, QuadContext& ctx) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  ctx.spend(static_cast<long>(rule.nodes.size()));
  return s * half;
}

template <class F>
void adapt_rec(F&& f, double a, double b, double whole, double tol, int depth,
               const QuadOptions& o, const GaussRule& rule, QuadContext& ctx,
               QuadValue& out) {
  const double mid = 0.5 * (a + b);
  const double left = gl_apply(f, a, mid, rule, ctx);
  const double right = gl_apply(f, mid, b, rule, ctx);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth >= o.max_depth || ctx.exhausted) {
    out.value += left + right;
    out.error += err;
    if (err > tol) out.converged = false;
    return;
  }
  adapt_rec(f, a, mid, left, 0.5 * tol, depth + 1, o, rule, ctx, out);
  adapt_rec(f, mid, b, right, 0.5 * tol, depth + 1, o, rule, ctx, out);
}

}  // namespace detail

// Adaptive integration of f over [a, b].  The tolerance is
// max(abs_tol, rel_tol * |rough estimate|), split across bisections.
template <class F>
QuadValue integrate_adaptive(F&& f, double a, double b, const QuadOptions& o,
                             QuadContext& ctx) {
  QuadValue out;
  if (!(a < b)) return out;
  const GaussRule& rule = gauss_legendre(o.gl_order);
  const double whole = detail::gl_apply(f, a, b, rule, ctx);
  const double tol = std::max(o.abs_tol, o.rel_tol * std::abs(whole)) + 1e-300;
  detail::adapt_rec(f, a, b, whole, tol, 0, o, rule, ctx, out);
  out.evals = ctx.evals;
  out.converged = out.converged && !ctx.exhausted;
  return out;
}

// Integration of f over [a, b] where f may blow up like an inverse square
// root at either endpoint; the flagged ends are regularized with the local
// substitution x = a + u^2 (resp. x = b - u^2), after which f is treated as
// smooth and handled adaptively.  f is never evaluated at the endpoints.
template <class F>
QuadValue integrate_sqrt_endpoints(F&& f, double a, double b, bool singular_left,
                                   bool singular_right, const QuadOptions& o,
                                   QuadContext& ctx) {
  QuadValue out;
  if (!(a < b)) return out;
  auto merge = [&out](const QuadValue& q) {
    out.value += q.value;
    out.error += q.error;
    out.converged = out.converged && q.converged;
  };
  if (singular_left && singular_right) {
    const double mid = 0.5 * (a + b);
    merge(integrate_adaptive([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0,
                             std::sqrt(mid - a), o, ctx));
    merge(integrate_adaptive([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0,
                             std::sqrt(b - mid), o, ctx));
  } else if (singular_left) {
    merge(integrate_adaptive([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0,
                             std::sqrt(b - a), o, ctx));
  } else if (singular_right) {
    merge(integrate_adaptive([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0,
                             std::sqrt(b - a), o, ctx));
  } else {
    merge(integrate_adaptive(f, a, b, o, ctx));
  }
  out.evals = ctx.evals;
  return out;
}

// Convenience wrapper with a fresh context.
template <class F>
QuadValue integrate(F&& f, double a, double b, const QuadOptions& o = {},
                    long max_evals = 50'000'000) {
  QuadContext ctx;
  ctx.max_evals = max_evals;
  return integrate_adaptive(f, a, b, o, ctx);
}

}  // namespace orbitlab
