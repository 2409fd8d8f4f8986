#include "orbitlab/spherical.hpp"

#include "orbitlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitlab {

SmallVec rho_vector(int n) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("rho_vector: n out of range");
  SmallVec r(n);
  for (int i = 0; i < n; ++i) r[i] = 0.5 * (n - 2 * i - 1);
  return r;
}

SpectralParam::SpectralParam(const Eigen::Ref<const Eigen::VectorXd>& v) : lam(v) {
  if (lam.size() < 2 || lam.size() > kMaxDim)
    throw std::invalid_argument("SpectralParam: dimension out of range");
  if (std::abs(lam.sum()) > 1e-12 * (1.0 + lam.norm()))
    throw std::invalid_argument("SpectralParam: components must sum to zero");
}

BumpFunction::BumpFunction(const Eigen::Ref<const Eigen::VectorXd>& c, double s)
    : center(c), scale(s) {
  if (scale <= 0) throw std::invalid_argument("BumpFunction: scale must be positive");
  if (std::abs(center.sum()) > 1e-12 * (1.0 + center.norm()))
    throw std::invalid_argument("BumpFunction: center must be traceless");
}

double BumpFunction::operator()(const Eigen::Ref<const Eigen::VectorXd>& h) const {
  const double r2 = ((h - center) / scale).squaredNorm();
  if (r2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

PhiEstimate phi(const SpectralParam& lam, const Eigen::Ref<const Eigen::MatrixXd>& g,
                std::int64_t n_samples, const SamplerConfig& cfg,
                std::int64_t index_offset) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n || lam.lam.size() != n)
    throw std::invalid_argument("phi: dimension mismatch");
  if (n_samples < 1) throw std::invalid_argument("phi: need N >= 1");
  if (std::abs(g.determinant() - 1.0) > 1e-9)
    throw std::invalid_argument("phi: det g must equal 1");

  const SmallVec rho = rho_vector(n);
  SmallMat k, kg;
  double sum_re = 0, sum_im = 0, sq_re = 0, sq_im = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    haar_rotation_into(cfg.seed, n, index_offset + i, k);
    kg = k * g;
    const SmallVec h = iwasawa_h(kg);
    const double w = std::exp(rho.dot(h));
    const double ph = lam.lam.dot(h);
    const double re = w * std::cos(ph), im = w * std::sin(ph);
    sum_re += re;
    sum_im += im;
    sq_re += re * re;
    sq_im += im * im;
  }
  const double nn = static_cast<double>(n_samples);
  PhiEstimate e;
  e.value = {sum_re / nn, sum_im / nn};
  if (n_samples > 1) {
    const double var_re = std::max(0.0, (sq_re - nn * e.value.real() * e.value.real()) / (nn - 1));
    const double var_im = std::max(0.0, (sq_im - nn * e.value.imag() * e.value.imag()) / (nn - 1));
    e.se_re = std::sqrt(var_re / nn);
    e.se_im = std::sqrt(var_im / nn);
  }
  e.samples = n_samples;
  return e;
}

Eigen::MatrixXd traceless_basis(int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / norm;
    b(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return b;
}

PeriodEstimate flat_period(const SpectralParam& lam, const BumpFunction& b,
                           std::int64_t mc_per_node, int grid_order,
                           const SamplerConfig& cfg) {
  const int n = static_cast<int>(lam.lam.size());
  if (n < 2 || n > 3) throw std::invalid_argument("flat_period: supported for n in {2, 3}");
  if (b.center.size() != n) throw std::invalid_argument("flat_period: bump dimension mismatch");
  const int dim = n - 1;
  const Eigen::MatrixXd basis = traceless_basis(n);
  const Eigen::VectorXd c = basis.transpose() * b.center;

  const GaussRule& rule = gauss_legendre(grid_order);
  const int m = static_cast<int>(rule.nodes.size());

  PeriodEstimate out;
  double acc_re = 0, acc_im = 0, var_re = 0, var_im = 0;
  const std::int64_t nodes_total = (dim == 1) ? m : static_cast<std::int64_t>(m) * m;
  for (std::int64_t gi = 0; gi < nodes_total; ++gi) {
    Eigen::VectorXd y(dim);
    double wt = 1.0;
    std::int64_t rem = gi;
    for (int d = 0; d < dim; ++d) {
      const int j = static_cast<int>(rem % m);
      rem /= m;
      y[d] = c[d] + b.scale * rule.nodes[static_cast<size_t>(j)];
      wt *= b.scale * rule.weights[static_cast<size_t>(j)];
    }
    const Eigen::VectorXd h = basis * y;
    const double bw = b(h);
    if (bw == 0.0) continue;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = std::exp(h[i]);
    const PhiEstimate pe = phi(lam, g, mc_per_node, cfg, gi * mc_per_node);
    const double w = wt * bw;
    acc_re += w * pe.value.real();
    acc_im += w * pe.value.imag();
    var_re += w * w * pe.se_re * pe.se_re;
    var_im += w * w * pe.se_im * pe.se_im;
    ++out.grid_points;
  }
  out.value = {acc_re, acc_im};
  out.se_re = std::sqrt(var_re);
  out.se_im = std::sqrt(var_im);
  return out;
}

}  // namespace orbitlab
