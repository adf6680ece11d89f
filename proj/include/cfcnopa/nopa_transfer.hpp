#pragma once

#include <complex>

#include "cfcnopa/combinations.hpp"
#include "cfcnopa/params.hpp"

namespace cfcnopa {

using cplx = std::complex<double>;

/// out = m * a_in + n * b_in for one collective combination.
struct Transfer {
  cplx m;
  cplx n;

  double noise_gain() const { return std::norm(m) + std::norm(n); }
};

/// The eight transfer amplitudes m1..m4, n1..n4 at one analysis frequency.
struct TransferSet {
  Transfer x_diff;  ///< m1, n1
  Transfer y_sum;   ///< m2, n2
  Transfer x_sum;   ///< m3, n3
  Transfer y_diff;  ///< m4, n4

  const Transfer& operator[](Combination c) const;
  Transfer& operator[](Combination c);
};

/// Closed-form amplitudes. Throws ThresholdReached when a denominator
/// |q + gamma1 + gamma2 + i omega tau| drops below 1e-12.
TransferSet transfer_coefficients(const NopaParams& params, AnalysisPoint at);

/// Same closed forms at an arbitrary signed angular frequency [rad/s].
TransferSet transfer_coefficients_omega(const NopaParams& params, double omega);

/// Independent route: builds the 2N x 2N linearized quadrature drift of the
/// intracavity Langevin equations, solves (i omega tau I - A) x = B u by a
/// dense complex LU, applies a_out = sqrt(2 gamma1) a - a_in and projects on
/// the collective combinations. Throws SingularSystem at a pole.
TransferSet langevin_oracle(const NopaParams& params, AnalysisPoint at);
TransferSet langevin_oracle_omega(const NopaParams& params, double omega);

/// True when the stand-alone collective mode of `c` is below threshold.
bool bare_mode_stable(const NopaParams& params, Combination c);

/// Feedback-free output variances with vacuum at every input.
VarianceReport nopa_only_variances(const NopaParams& params, AnalysisPoint at);

}  // namespace cfcnopa
