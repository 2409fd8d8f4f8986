#pragma once

// Harish-Chandra spherical functions phi_lambda(g) = Int_K e^{(i lambda + rho) H(kg)} dk
// evaluated by Monte Carlo over Haar K, and the flat period
// Int_A phi_lambda(exp H) b(H) dH on the diagonal subgroup.

#include "orbitlab/haar.hpp"
#include "orbitlab/linalg.hpp"

#include <complex>

namespace orbitlab {

// Half sum of positive roots e_i - e_j (i < j): rho_i = (n - 2i - 1)/2, 0-based.
SmallVec rho_vector(int n);

// Real spectral parameter in a*: component sum zero.
struct SpectralParam {
  SmallVec lam;

  explicit SpectralParam(const Eigen::Ref<const Eigen::VectorXd>& v);
};

// Smooth compactly supported bump on the flat:
// b(H) = exp(1 - 1/(1 - r^2)) for r = ||(H - center)/scale|| < 1, else 0.
struct BumpFunction {
  SmallVec center;  // traceless
  double scale = 1.0;

  BumpFunction(const Eigen::Ref<const Eigen::VectorXd>& c, double s);
  double operator()(const Eigen::Ref<const Eigen::VectorXd>& h) const;
};

struct PhiEstimate {
  std::complex<double> value;
  double se_re = 0, se_im = 0;
  std::int64_t samples = 0;
};

// Monte Carlo mean of exp(<i lambda + rho, H(k g)>) over Haar k in SO(n).
// index_offset selects the stream block (grid points use disjoint blocks).
PhiEstimate phi(const SpectralParam& lam, const Eigen::Ref<const Eigen::MatrixXd>& g,
                std::int64_t n_samples, const SamplerConfig& cfg,
                std::int64_t index_offset = 0);

// Orthonormal basis of the traceless subspace, as columns of an n x (n-1) matrix.
Eigen::MatrixXd traceless_basis(int n);

struct PeriodEstimate {
  std::complex<double> value;
  double se_re = 0, se_im = 0;
  std::int64_t grid_points = 0;
};

// Tensor Gauss-Legendre grid over supp b in the (n-1)-dimensional flat,
// phi evaluated by MC at each node with a node-indexed stream block.
// Supported for n in {2, 3}.
PeriodEstimate flat_period(const SpectralParam& lam, const BumpFunction& b,
                           std::int64_t mc_per_node, int grid_order,
                           const SamplerConfig& cfg);

}  // namespace orbitlab
