#pragma once

// Fan-Pall bordered-matrix construction, the transfer Jacobian J(mu), the
// lambda-independent normalization constant c_n, the exact recursion for
// I_n(lambda; r), and the J_n(lambda) integral.

#include "orbitlab/quadrature.hpp"
#include "orbitlab/spectrum.hpp"

#include <optional>

namespace orbitlab {

// (lambda of length n, mu of length n-1) with lambda_i < mu_i < lambda_{i+1}.
struct InterlacingPair {
  Spectrum lambda;
  Spectrum mu;

  InterlacingPair(Spectrum lam, Spectrum m);
};

struct BorderData {
  SmallVec z;      // positive border entries z_1..z_{n-1}
  double z_n = 0;  // corner entry, = sum(lambda) - sum(mu)
};

// Border entries with z_i^2 = prod_j |lambda_j - mu_i| / prod_{j != i} |mu_i - mu_j|
// (positive square root), computed in log space.
BorderData fan_pall_border(const InterlacingPair& p);

// The (n x n) symmetric matrix with diagonal (mu_1..mu_{n-1}, z_n) and last
// row/column (z_1..z_{n-1}); its spectrum is the lambda of the pair that
// produced the border.
SymMatrix build_bordered(const Spectrum& mu, const BorderData& b);

// J(mu) = prod_{i<j} |mu_i - mu_j| / prod_{i,j} |lambda_i - mu_j|^{1/2}.
double jacobian_J(const InterlacingPair& p);

struct NormalizationResult {
  double raw_integral = 0;  // integral of J over M; equals 1/c_n for every lambda
  double c_n = 0;
  QuadValue quad;
};

// Computes the raw integral for the given (strictly regular) lambda; the
// transfer lemma with f = 1 makes it lambda-independent, which is what the
// tests probe.
NormalizationResult normalization_c(const Spectrum& s, const QuadOptions& opts = {},
                                    long max_evals = 50'000'000);

// Golden normalization constants, computed once per dimension at tight
// tolerance and cached (2 <= n <= 5).
double cached_c_n(int n);

// Exact recursion
//   I_n(lambda; r) = c_n Int_M I_{n-1}(mu; sqrt(r^2 - (tr lambda - tr mu)^2)) J(mu) dmu
// with base case I_2((-a, a); r) = (2/pi) asin(min(1, r / (a sqrt(2)))) and
// nonzero inner traces removed by the exact reduction.  Requires strictly
// regular tracefree lambda, 2 <= n <= 4 supported budgets.
QuadValue recursive_I(const Spectrum& s, double radius, const QuadOptions& opts = {},
                      long max_evals = 50'000'000);

// J_n(lambda) = Int_{M, |sum mu| < 1} A_{n-1}(mu) J(mu) dmu; n in [3, 5].
QuadValue J_n_integral(const Spectrum& s, const QuadOptions& opts = {},
                       long max_evals = 50'000'000);

}  // namespace orbitlab
