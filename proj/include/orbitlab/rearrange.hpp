#pragma once

// Monotone rearrangement and the convolution toolkit: step functions with
// exact products/integrals, exact piecewise-polynomial convolutions of
// indicators, the Hardy-Littlewood inequality check, and the singular
// 1-D / 2-D lemma ratio checks.

#include "orbitlab/quadrature.hpp"

#include <map>
#include <string>
#include <vector>

namespace orbitlab {

// Every "<<" check verifies boundedness of a ratio over a released sweep and
// freezes the observed constant as a regression baseline; it cannot certify
// an asymptotic constant symbolically.  Reports carry this note.
inline constexpr const char* kRatioSemanticsNote =
    "ratio bounded over released sweep; observed max frozen as regression baseline";

// Nonnegative piecewise-constant function with bounded support; value is 0
// outside [breaks.front(), breaks.back()].
struct StepFunction {
  std::vector<double> breaks;  // ascending, size m+1
  std::vector<double> values;  // size m, nonnegative

  StepFunction(std::vector<double> b, std::vector<double> v);

  double value_at(double x) const;
  double integral() const;
  double measure_above(double t) const;  // Lebesgue measure of {f > t}
  double sup() const;
};

// Nonincreasing equimeasurable rearrangement onto [0, infinity).
StepFunction monotone_rearrange(const StepFunction& f);

// Exact integral of the pointwise product of step functions.
double step_product_integral(const std::vector<StepFunction>& fs);

struct HLReport {
  double lhs = 0, rhs = 0;
  bool ok = false;
};

// Hardy-Littlewood: int prod f_i <= int prod f_i^*.
HLReport hl_inequality_check(const std::vector<StepFunction>& fs);

// Exact pointwise value of (f * g)(x) for step functions.
double conv_point(const StepFunction& f, const StepFunction& g, double x);

// Exact sup of f * g (piecewise linear, so attained at a breakpoint sum).
double conv_sup(const StepFunction& f, const StepFunction& g);

// Piecewise polynomial with bounded support; piece p holds coefficients in
// the local variable (x - breaks[p]).
struct PiecewisePoly {
  std::vector<double> breaks;
  std::vector<std::vector<double>> coef;

  double eval(double x) const;
  double support_lo() const { return breaks.front(); }
  double support_hi() const { return breaks.back(); }
};

PiecewisePoly pp_indicator(double lo, double hi);

// Exact convolution with the indicator of [lo, hi]; degree grows by one.
PiecewisePoly convolve_with_indicator(const PiecewisePoly& f, double lo, double hi);

struct ConvMaxReport {
  double value_at_zero = 0;
  double max_value = 0;
  bool max_at_zero = false;
  bool nonincreasing = false;  // on [0, infinity), sampled on the grid
};

// Iterated convolution of centered indicators 1_[-a_i, a_i]; checks the
// maximum sits at 0 and the function is nonincreasing on the positive axis.
ConvMaxReport conv_indicator_max_at_zero(const std::vector<double>& half_widths,
                                         int grid_points = 2001);

struct RatioReport {
  std::map<std::string, double> params;
  double lhs = 0, rhs = 0, ratio = 0;
  bool vacuous = false;
  std::string note = kRatioSemanticsNote;
};

// int_a^b x^{-1/2} (log'(T/x))^k dx  vs  b^{1/2} (log'(T/b))^k, and the
// x^{-1} variant vs log(b/a) (log'(T/a))^k.
RatioReport log_average_check(double a, double b, double T, int k,
                              bool inverse_x_variant = false);

// int_0^T x^{-1/2} (x+a)^{-1/2} dx  vs  log'(T/a); the closed form
// 2 asinh(sqrt(T/a)) is also evaluated and reported as params["closed_form"].
RatioReport lemma_1dsmall_check(double a, double T);

// int_0^T x^{-1/2} (x+a)^{-1/2} (x+b)^{1/2} prod log'(T/|L_i+x|) dx
// vs  T^{1/2} (log'(b/a))^{k+1}.
RatioReport lemma_1d_check(double a, double b, double T, int k,
                           const std::vector<double>& L = {});

// The segment integral of Lemma "2d" against its four-log bound.
RatioReport lemma_2d_check(double A, double B, double C, double D, double E,
                           double T, double t, int k,
                           const std::vector<double>& L = {});

// The segment integral of Lemma "2dsmall" against its two-log bound.
RatioReport lemma_2dsmall_check(double A, double B, double C, double D, double T,
                                double t);

}  // namespace orbitlab
