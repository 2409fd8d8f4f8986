#include "orbitlab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace orbitlab {

namespace {

double safe_abs(double x) { return std::max(std::abs(x), 1e-300); }

double logp(double x) { return std::log(2.0 + x); }

// merge + sort + unique breakpoints
std::vector<double> merged_breaks(const std::vector<StepFunction>& fs) {
  std::vector<double> b;
  for (const auto& f : fs) b.insert(b.end(), f.breaks.begin(), f.breaks.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// shift polynomial coefficients: q(xi) = p(xi + delta)
std::vector<double> shift_poly(const std::vector<double>& p, double delta) {
  const size_t d = p.size();
  std::vector<double> q(d, 0.0);
  for (size_t j = 0; j < d; ++j) {
    // p[j] (xi + delta)^j = p[j] sum_k C(j,k) delta^{j-k} xi^k
    double c = 1.0, dpow = 1.0;
    for (size_t k = j + 1; k-- > 0;) {
      q[k] += p[j] * c * dpow;
      if (k > 0) {
        c = c * static_cast<double>(k) / static_cast<double>(j - k + 1);
        dpow *= delta;
      }
    }
  }
  return q;
}

double eval_local(const std::vector<double>& c, double t) {
  double v = 0;
  for (size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

}  // namespace

StepFunction::StepFunction(std::vector<double> b, std::vector<double> v)
    : breaks(std::move(b)), values(std::move(v)) {
  if (breaks.size() < 2 || values.size() + 1 != breaks.size())
    throw std::invalid_argument("StepFunction: sizes mismatch");
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1]))
      throw std::invalid_argument("StepFunction: breakpoints must increase");
  for (double x : values)
    if (!(x >= 0) || !std::isfinite(x))
      throw std::invalid_argument("StepFunction: values must be nonnegative and finite");
}

double StepFunction::value_at(double x) const {
  if (x < breaks.front() || x >= breaks.back()) return 0.0;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  const size_t idx = static_cast<size_t>(it - breaks.begin()) - 1;
  return values[std::min(idx, values.size() - 1)];
}

double StepFunction::integral() const {
  double s = 0;
  for (size_t i = 0; i < values.size(); ++i) s += values[i] * (breaks[i + 1] - breaks[i]);
  return s;
}

double StepFunction::measure_above(double t) const {
  double s = 0;
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i] > t) s += breaks[i + 1] - breaks[i];
  return s;
}

double StepFunction::sup() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

StepFunction monotone_rearrange(const StepFunction& f) {
  std::vector<std::pair<double, double>> pieces;  // (value, length)
  for (size_t i = 0; i < f.values.size(); ++i)
    if (f.values[i] > 0) pieces.emplace_back(f.values[i], f.breaks[i + 1] - f.breaks[i]);
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> breaks{0.0}, values;
  for (const auto& [v, len] : pieces) {
    if (!values.empty() && values.back() == v) {
      breaks.back() += len;
      continue;
    }
    values.push_back(v);
    breaks.push_back(breaks.back() + len);
  }
  if (values.empty()) return StepFunction({0.0, 1.0}, {0.0});
  return StepFunction(std::move(breaks), std::move(values));
}

double step_product_integral(const std::vector<StepFunction>& fs) {
  if (fs.empty()) return 0.0;
  const auto b = merged_breaks(fs);
  double s = 0;
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    const double mid = 0.5 * (b[i] + b[i + 1]);
    double prod = 1.0;
    for (const auto& f : fs) {
      prod *= f.value_at(mid);
      if (prod == 0.0) break;
    }
    s += prod * (b[i + 1] - b[i]);
  }
  return s;
}

HLReport hl_inequality_check(const std::vector<StepFunction>& fs) {
  if (fs.size() < 2) throw std::invalid_argument("hl_inequality_check: need >= 2 functions");
  HLReport rep;
  rep.lhs = step_product_integral(fs);
  std::vector<StepFunction> stars;
  stars.reserve(fs.size());
  for (const auto& f : fs) stars.push_back(monotone_rearrange(f));
  rep.rhs = step_product_integral(stars);
  const double scale = std::max({1.0, rep.lhs, rep.rhs});
  rep.ok = rep.lhs <= rep.rhs + 1e-12 * scale;
  return rep;
}

double conv_point(const StepFunction& f, const StepFunction& g, double x) {
  // integral over y of f(y) g(x - y): refine on f.breaks and x - g.breaks
  std::vector<double> b(f.breaks);
  for (double gb : g.breaks) b.push_back(x - gb);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  double s = 0;
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    const double mid = 0.5 * (b[i] + b[i + 1]);
    const double v = f.value_at(mid) * g.value_at(x - mid);
    if (v != 0.0) s += v * (b[i + 1] - b[i]);
  }
  return s;
}

double conv_sup(const StepFunction& f, const StepFunction& g) {
  double best = 0;
  for (double fb : f.breaks)
    for (double gb : g.breaks) best = std::max(best, conv_point(f, g, fb + gb));
  return best;
}

double PiecewisePoly::eval(double x) const {
  if (breaks.empty() || x < breaks.front() || x >= breaks.back()) return 0.0;
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  const size_t idx = std::min(static_cast<size_t>(it - breaks.begin()) - 1, coef.size() - 1);
  return eval_local(coef[idx], x - breaks[idx]);
}

PiecewisePoly pp_indicator(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("pp_indicator: need lo < hi");
  PiecewisePoly p;
  p.breaks = {lo, hi};
  p.coef = {{1.0}};
  return p;
}

PiecewisePoly convolve_with_indicator(const PiecewisePoly& f, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("convolve_with_indicator: need lo < hi");
  // antiderivative pieces: F_p(t) = cum_p + int_0^t f_p, in local coords
  const size_t np = f.coef.size();
  std::vector<std::vector<double>> anti(np);
  std::vector<double> cum(np + 1, 0.0);
  for (size_t p = 0; p < np; ++p) {
    const auto& c = f.coef[p];
    std::vector<double> a(c.size() + 1, 0.0);
    for (size_t j = 0; j < c.size(); ++j) a[j + 1] = c[j] / static_cast<double>(j + 1);
    a[0] = cum[p];
    cum[p + 1] = eval_local(a, f.breaks[p + 1] - f.breaks[p]);
    anti[p] = std::move(a);
  }
  const double total = cum[np];

  std::set<double> bs;
  for (double b : f.breaks) {
    bs.insert(b + lo);
    bs.insert(b + hi);
  }
  std::vector<double> rb(bs.begin(), bs.end());

  PiecewisePoly out;
  out.breaks = rb;
  out.coef.resize(rb.size() - 1);
  for (size_t q = 0; q + 1 < rb.size(); ++q) {
    const double L = rb[q], R = rb[q + 1];
    const double xm = 0.5 * (L + R);
    // F(x - lo) - F(x - hi) as polynomials in xi = x - L
    auto region_poly = [&](double shift) -> std::vector<double> {
      const double u = xm - shift;
      if (u <= f.breaks.front()) return {0.0};
      if (u >= f.breaks.back()) return {total};
      const auto it = std::upper_bound(f.breaks.begin(), f.breaks.end(), u);
      const size_t p = std::min(static_cast<size_t>(it - f.breaks.begin()) - 1, np - 1);
      // F_p evaluated at (x - shift - breaks[p]) = xi + (L - shift - breaks[p])
      return shift_poly(anti[p], L - shift - f.breaks[p]);
    };
    const auto p1 = region_poly(lo);
    const auto p2 = region_poly(hi);
    std::vector<double> c(std::max(p1.size(), p2.size()), 0.0);
    for (size_t j = 0; j < p1.size(); ++j) c[j] += p1[j];
    for (size_t j = 0; j < p2.size(); ++j) c[j] -= p2[j];
    out.coef[q] = std::move(c);
  }
  return out;
}

ConvMaxReport conv_indicator_max_at_zero(const std::vector<double>& half_widths,
                                         int grid_points) {
  if (half_widths.empty())
    throw std::invalid_argument("conv_indicator_max_at_zero: need >= 1 width");
  for (double a : half_widths)
    if (!(a > 0)) throw std::invalid_argument("conv_indicator_max_at_zero: widths must be positive");

  PiecewisePoly f = pp_indicator(-half_widths[0], half_widths[0]);
  for (size_t i = 1; i < half_widths.size(); ++i)
    f = convolve_with_indicator(f, -half_widths[i], half_widths[i]);

  ConvMaxReport rep;
  rep.value_at_zero = f.eval(0.0);
  const double span = f.support_hi();
  rep.max_value = rep.value_at_zero;
  const double tol = 1e-12 * std::max(1.0, rep.value_at_zero);
  bool max_ok = true, mono_ok = true;
  double prev = rep.value_at_zero;
  for (int i = 0; i < grid_points; ++i) {
    const double x = span * static_cast<double>(i) / (grid_points - 1);
    const double v = f.eval(x);
    const double vm = f.eval(-x);
    rep.max_value = std::max({rep.max_value, v, vm});
    if (v > rep.value_at_zero + tol || vm > rep.value_at_zero + tol) max_ok = false;
    if (v > prev + tol) mono_ok = false;
    prev = v;
  }
  rep.max_at_zero = max_ok;
  rep.nonincreasing = mono_ok;
  return rep;
}

RatioReport log_average_check(double a, double b, double T, int k,
                              bool inverse_x_variant) {
  if (!(0 <= a && a < b) || !(T > 0) || k < 0 || k > 6)
    throw std::invalid_argument("log_average_check: bad parameters");
  RatioReport rep;
  rep.params = {{"a", a}, {"b", b}, {"T", T}, {"k", static_cast<double>(k)},
                {"variant", inverse_x_variant ? 1.0 : 0.0}};
  QuadOptions o;
  o.rel_tol = 1e-9;
  if (inverse_x_variant) {
    if (a <= 0) throw std::invalid_argument("log_average_check: x^{-1} variant needs a > 0");
    // substitute x = e^u
    auto f = [&](double u) { return std::pow(logp(T / std::exp(u)), k); };
    rep.lhs = integrate(f, std::log(a), std::log(b), o).value;
    rep.rhs = std::log(b / a) * std::pow(logp(T / a), k);
  } else {
    // substitute x = u^2
    auto f = [&](double u) { return 2.0 * std::pow(logp(T / (u * u)), k); };
    rep.lhs = integrate(f, std::sqrt(a), std::sqrt(b), o).value;
    rep.rhs = std::sqrt(b) * std::pow(logp(T / b), k);
  }
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

RatioReport lemma_1dsmall_check(double a, double T) {
  if (!(0 < a && a <= T)) throw std::invalid_argument("lemma_1dsmall_check: need 0 < a <= T");
  RatioReport rep;
  rep.params = {{"a", a}, {"T", T}};
  QuadOptions o;
  o.rel_tol = 1e-10;
  auto f = [&](double u) { return 2.0 / std::sqrt(u * u + a); };
  rep.lhs = integrate(f, 0.0, std::sqrt(T), o).value;
  rep.rhs = logp(T / a);
  rep.ratio = rep.lhs / rep.rhs;
  rep.params["closed_form"] = 2.0 * std::asinh(std::sqrt(T / a));
  return rep;
}

RatioReport lemma_1d_check(double a, double b, double T, int k,
                           const std::vector<double>& L) {
  if (!(a > 0 && b > 0 && a < T && b < T) || k < 0)
    throw std::invalid_argument("lemma_1d_check: bad parameters");
  if (static_cast<int>(L.size()) > k)
    throw std::invalid_argument("lemma_1d_check: more shifts than k");
  RatioReport rep;
  rep.params = {{"a", a}, {"b", b}, {"T", T}, {"k", static_cast<double>(k)}};
  QuadOptions o;
  o.rel_tol = 1e-9;
  auto f = [&](double u) {
    const double x = u * u;
    double v = 2.0 * std::sqrt((x + b) / (x + a));
    for (double li : L) v *= logp(T / safe_abs(li + x));
    for (int j = static_cast<int>(L.size()); j < k; ++j) v *= logp(T / safe_abs(x));
    return v;
  };
  // split at interior log singularities x = -L_i
  std::vector<double> cuts{0.0, std::sqrt(T)};
  for (double li : L)
    if (li < 0 && -li < T) cuts.push_back(std::sqrt(-li));
  std::sort(cuts.begin(), cuts.end());
  double lhs = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    lhs += integrate(f, cuts[i], cuts[i + 1], o).value;
  rep.lhs = lhs;
  rep.rhs = std::sqrt(T) * std::pow(logp(b / a), k + 1);
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

RatioReport lemma_2d_check(double A, double B, double C, double D, double E,
                           double T, double t, int k, const std::vector<double>& L) {
  if (!(A <= B && B <= C && C <= D && D <= E))
    throw std::invalid_argument("lemma_2d_check: need A <= B <= C <= D <= E");
  if (std::abs(A - E) > T) throw std::invalid_argument("lemma_2d_check: need |A-E| <= T");
  RatioReport rep;
  rep.params = {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"E", E},
                {"T", T}, {"t", t}, {"k", static_cast<double>(k)}};
  const double x0 = std::max(A, t - D), x1 = std::min(B, t - C);
  if (!(x0 < x1)) {
    rep.vacuous = true;
    rep.note = "vacuous: empty integration segment";
    return rep;
  }
  auto f = [&](double x) {
    const double y = t - x;
    double v = 1.0 / std::sqrt(safe_abs(x - A) * safe_abs(x - B) *
                               safe_abs(y - C) * safe_abs(y - D));
    v *= std::sqrt(std::abs(x - y) * std::abs(y - E));
    for (double li : L) v *= logp(T / safe_abs(li - y));
    for (int j = static_cast<int>(L.size()); j < k; ++j) v *= logp(T / safe_abs(y));
    return v;
  };
  QuadOptions o;
  o.rel_tol = 1e-8;
  QuadContext ctx;
  ctx.max_evals = 20'000'000;
  // interior log singularities at y = L_i, i.e. x = t - L_i
  std::vector<double> cuts{x0, x1};
  for (double li : L) {
    const double xc = t - li;
    if (xc > x0 && xc < x1) cuts.push_back(xc);
  }
  if (k > static_cast<int>(L.size()) && t > x0 && t < x1) cuts.push_back(t);  // y = 0
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double lhs = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const bool sl = (i == 0) && (x0 == A || x0 == t - D);
    const bool sr = (i + 2 == cuts.size()) && (x1 == B || x1 == t - C);
    lhs += integrate_sqrt_endpoints(f, cuts[i], cuts[i + 1], sl, sr, o, ctx).value;
  }
  rep.lhs = lhs;
  const double pre = T / std::sqrt(safe_abs(A - B) * safe_abs(C - D));
  rep.rhs = pre * (std::pow(logp(std::abs(B - C) / safe_abs(B + C - t)), k + 1) +
                   std::pow(logp(std::abs(D - E) / safe_abs(A + D - t)), k + 1) +
                   std::pow(logp(T / safe_abs(A + C - t)), k) +
                   std::pow(logp(T / safe_abs(B + D - t)), k));
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

RatioReport lemma_2dsmall_check(double A, double B, double C, double D, double T,
                                double t) {
  if (!(A <= B && B <= C && C <= D))
    throw std::invalid_argument("lemma_2dsmall_check: need A <= B <= C <= D");
  if (std::abs(A - D) > T) throw std::invalid_argument("lemma_2dsmall_check: need |A-D| <= T");
  RatioReport rep;
  rep.params = {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"T", T}, {"t", t}};
  const double x0 = std::max(A, t - D), x1 = std::min(B, t - C);
  if (!(x0 < x1)) {
    rep.vacuous = true;
    rep.note = "vacuous: empty integration segment";
    return rep;
  }
  auto f = [&](double x) {
    const double y = t - x;
    return 1.0 / std::sqrt(safe_abs(x - A) * safe_abs(x - B) * safe_abs(y - C) *
                           safe_abs(y - D));
  };
  QuadOptions o;
  o.rel_tol = 1e-8;
  QuadContext ctx;
  ctx.max_evals = 20'000'000;
  const bool sl = (x0 == A || x0 == t - D);
  const bool sr = (x1 == B || x1 == t - C);
  rep.lhs = integrate_sqrt_endpoints(f, x0, x1, sl, sr, o, ctx).value;
  rep.rhs = (logp(T / safe_abs(B + C - t)) + logp(T / safe_abs(A + D - t))) /
            std::sqrt(safe_abs(A - B) * safe_abs(C - D));
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

}  // namespace orbitlab
