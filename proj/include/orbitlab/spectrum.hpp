#pragma once

// The Spectrum type (ordered eigenvalue list), spectral-gap regime
// classification, and the closed-form density side: log', L_n, tilde-beta,
// A_n, and the nonzero-trace reduction.

#include "orbitlab/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbitlab {

// Ascending eigenvalue list lambda_1 <= ... <= lambda_n, n >= 2.  Inputs are
// accepted in any order and sorted; permutation invariance of everything
// downstream makes this lossless.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);
  Spectrum(std::initializer_list<double> values)
      : Spectrum(std::vector<double>(values)) {}

  int n() const { return static_cast<int>(v_.size()); }
  const std::vector<double>& values() const { return v_; }
  double operator[](int i) const { return v_[static_cast<size_t>(i)]; }

  double trace() const;
  double norm() const;                       // Euclidean norm of the diagonal vector
  double spread() const { return v_.back() - v_.front(); }
  std::vector<double> gaps() const;          // d_i = lambda_{i+1} - lambda_i
  bool tracefree() const;                    // |trace| < 1e-12 (1 + norm)

  Spectrum scaled(double t) const;
  SmallVec as_vector() const;

 private:
  std::vector<double> v_;
};

// log' x = log(2 + x); rejects negative input.
double log_prime(double x);

// L_n(lambda) in the chamber lambda_1 <= ... <= lambda_n: for n != 4,
// (log'(|lambda| / (1 + |l_2| + |l_{n-1}|)))^{n-2}; for n = 4 the square of
// that times the exceptional factor log'(|lambda| / (1 + |l1-l2| + |l3-l4|)).
double L_n(const Spectrum& s);

// Product over positive roots of 1 + |l_i - l_j|, i < j.
double tilde_beta(const Spectrum& s);

// A_n(lambda) = (1 + |lambda|)^{-n+1} L_n(lambda).
double A_n(const Spectrum& s);

enum class RegimeKind {
  OneGap,
  OneGapExceptional4_2,
  TwoGap,
  TwoGapExceptional1_nm1,
  Generic,  // unreachable for n >= 3; the gap dichotomy is exhaustive
};

std::string to_string(RegimeKind k);

struct RegimeTag {
  RegimeKind kind = RegimeKind::Generic;
  int gap_i = 0;  // 1-based index of the largest gap
  int gap_j = 0;  // 1-based second gap index for two-gap kinds, else 0
  double spread = 0.0;
  std::vector<double> gaps;
};

// Case analysis on the spectral gaps: one-gap when the largest gap d_I
// exceeds (1 - 1/(100 n)) d, with (n, I) = (4, 2) split off; otherwise
// two-gap with (I, J) the indices of the two largest gaps, (1, n-1) split
// off.  Ties break toward the smallest index.  Requires n >= 3 and d > 0.
RegimeTag classify_regime(const Spectrum& s);

// Nonzero-trace reduction: I_n(lambda) = I_n(lambda_0 / sqrt(1 - tr^2/n))
// for |tr| <= sqrt(n); empty means I_n(lambda) = 0.
std::optional<Spectrum> trace_reduce(const Spectrum& s);

}  // namespace orbitlab
