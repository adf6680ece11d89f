#include "cfcnopa/nopa_transfer.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cfcnopa/errors.hpp"
#include "langevin_internal.hpp"

namespace cfcnopa {

namespace {

constexpr double kPoleTolerance = 1e-12;

Transfer closed_form(double q, double gamma1, double gamma2, double omega_tau) {
  const cplx den(q + gamma1 + gamma2, omega_tau);
  if (std::abs(den) < kPoleTolerance) {
    throw ThresholdReached("amplifier transfer pole: |q + gamma1 + gamma2 + i omega tau| < 1e-12");
  }
  const cplx num(-q + gamma1 - gamma2, -omega_tau);
  return {num / den, 2.0 * std::sqrt(gamma1 * gamma2) / den};
}

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

}  // namespace

namespace detail {

// Differences use the representative pair (1, 2).
Eigen::VectorXd combination_vector(Combination c, int n) {
  Vector v = Vector::Zero(2 * n);
  switch (c) {
    case Combination::kAmplitudeDifference: v(0) = 1.0; v(1) = -1.0; break;
    case Combination::kPhaseSum: v.tail(n).setOnes(); break;
    case Combination::kAmplitudeSum: v.head(n).setOnes(); break;
    case Combination::kPhaseDifference: v(n) = 1.0; v(n + 1) = -1.0; break;
  }
  return v;
}

// tau dX_i/dt = -gamma X_i + k sum_{j != i} X_j + sqrt(2 gamma1) X_in + sqrt(2 gamma2) X_b
// tau dY_i/dt = -gamma Y_i - k sum_{j != i} Y_j + ...
Eigen::MatrixXd langevin_drift(const NopaParams& params) {
  const int n = params.n_modes;
  const double k = coupling_from_beta(params);
  const double gamma = params.total_damping();
  Eigen::MatrixXd drift = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      drift(i, j) = (i == j) ? -gamma : k;
      drift(n + i, n + j) = (i == j) ? -gamma : -k;
    }
  }
  return drift;
}

}  // namespace detail

const Transfer& TransferSet::operator[](Combination c) const {
  switch (c) {
    case Combination::kAmplitudeDifference: return x_diff;
    case Combination::kPhaseSum: return y_sum;
    case Combination::kAmplitudeSum: return x_sum;
    case Combination::kPhaseDifference: return y_diff;
  }
  return x_diff;
}

Transfer& TransferSet::operator[](Combination c) {
  return const_cast<Transfer&>(static_cast<const TransferSet&>(*this)[c]);
}

std::string_view to_string(Combination c) {
  switch (c) {
    case Combination::kAmplitudeDifference: return "x_diff";
    case Combination::kPhaseSum: return "y_sum";
    case Combination::kAmplitudeSum: return "x_sum";
    case Combination::kPhaseDifference: return "y_diff";
  }
  return "?";
}

std::optional<double> VarianceReport::variance(Combination c) const {
  switch (c) {
    case Combination::kAmplitudeDifference: return v_xdiff;
    case Combination::kPhaseSum: return v_ysum;
    case Combination::kAmplitudeSum: return v_xsum;
    case Combination::kPhaseDifference: return v_ydiff;
  }
  return std::nullopt;
}

VarianceReport VarianceReport::make(int n_modes, double v_xdiff, double v_ysum,
                                    std::optional<double> v_xsum, std::optional<double> v_ydiff) {
  VarianceReport r;
  r.n_modes = n_modes;
  r.v_xdiff = v_xdiff;
  r.v_ysum = v_ysum;
  r.combined_squeezed = v_xdiff + v_ysum;
  r.vacuum_reference = n_modes + 2.0;
  if (v_xsum && v_ydiff) {
    r.v_xsum = v_xsum;
    r.v_ydiff = v_ydiff;
    r.combined_antisqueezed = *v_xsum + *v_ydiff;
  }
  return r;
}

TransferSet transfer_coefficients_omega(const NopaParams& params, double omega) {
  params.validate();
  const double k = coupling_from_beta(params);
  const double wt = omega * params.tau;
  TransferSet out;
  for (Combination c : kAllCombinations) {
    out[c] = closed_form(effective_coupling(c, k, params.n_modes), params.gamma1, params.gamma2, wt);
  }
  return out;
}

TransferSet transfer_coefficients(const NopaParams& params, AnalysisPoint at) {
  return transfer_coefficients_omega(params, at.omega());
}

TransferSet langevin_oracle_omega(const NopaParams& params, double omega) {
  params.validate();
  const int n = params.n_modes;
  const int dim = 2 * n;
  const Eigen::MatrixXd drift = detail::langevin_drift(params);

  const Matrix system = cplx(0.0, omega * params.tau) * Matrix::Identity(dim, dim) - drift.cast<cplx>();
  Eigen::FullPivLU<Matrix> lu(system);
  lu.setThreshold(1e-11);
  if (!lu.isInvertible()) {
    throw SingularSystem("Langevin drift system is singular at omega = " + std::to_string(omega));
  }
  const Matrix response = lu.inverse();

  // a_out = sqrt(2 gamma1) a - a_in
  const Matrix to_input = 2.0 * params.gamma1 * response - Matrix::Identity(dim, dim);
  const Matrix to_loss = 2.0 * std::sqrt(params.gamma1 * params.gamma2) * response;

  TransferSet out;
  for (Combination c : kAllCombinations) {
    const Eigen::VectorXcd v = detail::combination_vector(c, n).cast<cplx>();
    const double norm2 = v.squaredNorm();
    out[c] = {v.dot(to_input * v) / norm2, v.dot(to_loss * v) / norm2};
  }
  return out;
}

TransferSet langevin_oracle(const NopaParams& params, AnalysisPoint at) {
  return langevin_oracle_omega(params, at.omega());
}

bool bare_mode_stable(const NopaParams& params, Combination c) {
  const double q = effective_coupling(c, coupling_from_beta(params), params.n_modes);
  return q + params.total_damping() > kPoleTolerance;
}

VarianceReport nopa_only_variances(const NopaParams& params, AnalysisPoint at) {
  const TransferSet ts = transfer_coefficients(params, at);
  const int n = params.n_modes;
  auto var = [&](Combination c) { return vacuum_weight(c, n) * ts[c].noise_gain(); };
  std::optional<double> xsum, ydiff;
  if (bare_mode_stable(params, Combination::kAmplitudeSum) &&
      bare_mode_stable(params, Combination::kPhaseDifference)) {
    xsum = var(Combination::kAmplitudeSum);
    ydiff = var(Combination::kPhaseDifference);
  }
  return VarianceReport::make(n, var(Combination::kAmplitudeDifference), var(Combination::kPhaseSum), xsum, ydiff);
}

}  // namespace cfcnopa
