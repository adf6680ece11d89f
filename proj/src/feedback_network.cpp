#include "cfcnopa/feedback_network.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cfcnopa/errors.hpp"
#include "cfcnopa/numerics.hpp"
#include "langevin_internal.hpp"

namespace cfcnopa {

namespace {

constexpr double kLoopTolerance = 1e-9;
constexpr double kPoleTolerance = 1e-12;

// m(omega = 0) of the collective mode with effective coupling q.
double dc_gain(const NopaParams& p, double q) {
  return (-q + p.gamma1 - p.gamma2) / (q + p.total_damping());
}

}  // namespace

LoopAmplitudes closed_loop_amplitudes(cplx m, cplx n, const LoopParams& loop, Combination combination) {
  loop.validate();
  const double t = loop.t;
  const double r = loop.r();
  const double s = loop.s();
  const double l = loop.l;
  const cplx den = 1.0 - m * std::sqrt(s * r);
  if (std::abs(den) <= kLoopTolerance) {
    throw LoopUnstable("feedback loop denominator |1 - m sqrt(s r)| <= 1e-9 for " +
                       std::string(to_string(combination)));
  }
  LoopAmplitudes out;
  out.coeff_c = m * t * std::sqrt(s) / den - std::sqrt(r);
  out.coeff_b = std::sqrt(t * s) * n / den;
  out.coeff_e = std::sqrt(t * l) + m * std::sqrt(t * s * r * l) / den;
  out.combination = combination;
  return out;
}

bool loop_mode_stable(const NopaParams& params, const LoopParams& loop, Combination c) {
  if (!bare_mode_stable(params, c)) return false;
  const double q = effective_coupling(c, coupling_from_beta(params), params.n_modes);
  return loop.feedback_gain() * dc_gain(params, q) < 1.0 - kLoopTolerance;
}

VarianceReport cfc_variance(const NopaParams& params, const LoopParams& loop, AnalysisPoint at) {
  params.validate();
  loop.validate();
  const TransferSet ts = transfer_coefficients(params, at);
  const int n = params.n_modes;

  auto variance = [&](Combination c) {
    const LoopAmplitudes amp = closed_loop_amplitudes(ts[c].m, ts[c].n, loop, c);
    return vacuum_weight(c, n) * amp.noise_gain();
  };

  for (Combination c : {Combination::kAmplitudeDifference, Combination::kPhaseSum}) {
    if (!loop_mode_stable(params, loop, c)) {
      throw LoopUnstable("closed loop unstable for " + std::string(to_string(c)));
    }
  }
  const double xdiff = variance(Combination::kAmplitudeDifference);
  const double ysum = variance(Combination::kPhaseSum);

  std::optional<double> xsum, ydiff;
  if (loop_mode_stable(params, loop, Combination::kAmplitudeSum) &&
      loop_mode_stable(params, loop, Combination::kPhaseDifference)) {
    try {
      xsum = variance(Combination::kAmplitudeSum);
      ydiff = variance(Combination::kPhaseDifference);
    } catch (const LoopUnstable&) {
      xsum.reset();
      ydiff.reset();
    }
  }
  return VarianceReport::make(n, xdiff, ysum, xsum, ydiff);
}

BeamSplitter::BeamSplitter(double transmissivity, BeamSplitterConvention convention) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw InvalidParameter("beam splitter transmissivity must lie in [0, 1]");
  }
  const double tt = std::sqrt(transmissivity);
  const double rr = std::sqrt(1.0 - transmissivity);
  switch (convention) {
    case BeamSplitterConvention::kMinusOnInjectedReflection:
      m_ = {{{tt, -rr}, {rr, tt}}};
      break;
    case BeamSplitterConvention::kMinusOnInjectedTransmission:
      m_ = {{{tt, rr}, {rr, -tt}}};
      break;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double dot = m_[i][0] * m_[j][0] + m_[i][1] * m_[j][1];
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-14) {
        throw std::logic_error("beam splitter rows are not orthonormal");
      }
    }
  }
}

VarianceReport network_oracle(const NopaParams& params, const LoopParams& loop, AnalysisPoint at,
                              BeamSplitterConvention convention) {
  params.validate();
  loop.validate();
  const TransferSet ts = langevin_oracle(params, at);
  const int n = params.n_modes;

  // Control splitter: (d_in, c_in) -> (c_out, d_out). Loss splitter:
  // (a_out, e_in) -> (d_in, discarded), transmissivity s = 1 - l.
  const BeamSplitter cbs(loop.t, convention);
  const BeamSplitter lbs(loop.s(), BeamSplitterConvention::kMinusOnInjectedTransmission);

  // a_in = g a_out + ..., with a_out = sqrt(2 gamma1) a - a_in, closes the
  // loop onto the intracavity drift.
  const double g = cbs(1, 0) * lbs(0, 0);
  const Eigen::MatrixXd drift = detail::langevin_drift(params);
  const Eigen::MatrixXd closed_drift =
      drift + (2.0 * params.gamma1 * g / (1.0 + g)) * Eigen::MatrixXd::Identity(2 * n, 2 * n);

  auto rayleigh = [&](const Eigen::MatrixXd& a, Combination c) {
    const Eigen::VectorXd v = detail::combination_vector(c, n);
    return v.dot(a * v) / v.squaredNorm();
  };
  auto stable = [&](Combination c) {
    return rayleigh(drift, c) < -kPoleTolerance && rayleigh(closed_drift, c) < -kPoleTolerance;
  };

  // Unknowns z = [a_in, a_out, c_out, d_in, d_out]; inputs u = [c_in, b_in, e_in].
  enum { kAin, kAout, kCout, kDin, kDout };
  auto variance = [&](Combination c) {
    Eigen::Matrix<cplx, 5, 5> lhs = Eigen::Matrix<cplx, 5, 5>::Zero();
    Eigen::Matrix<cplx, 5, 3> rhs = Eigen::Matrix<cplx, 5, 3>::Zero();
    // a_out - m a_in = n b_in
    lhs(0, kAout) = 1.0;
    lhs(0, kAin) = -ts[c].m;
    rhs(0, 1) = ts[c].n;
    // d_in - L00 a_out = L01 e_in
    lhs(1, kDin) = 1.0;
    lhs(1, kAout) = -lbs(0, 0);
    rhs(1, 2) = lbs(0, 1);
    // c_out - C00 d_in = C01 c_in
    lhs(2, kCout) = 1.0;
    lhs(2, kDin) = -cbs(0, 0);
    rhs(2, 0) = cbs(0, 1);
    // d_out - C10 d_in = C11 c_in
    lhs(3, kDout) = 1.0;
    lhs(3, kDin) = -cbs(1, 0);
    rhs(3, 0) = cbs(1, 1);
    // a_in = d_out
    lhs(4, kAin) = 1.0;
    lhs(4, kDout) = -1.0;

    Eigen::FullPivLU<Eigen::Matrix<cplx, 5, 5>> lu(lhs);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) {
      throw SingularSystem("feedback network is singular for " + std::string(to_string(c)));
    }
    const Eigen::Matrix<cplx, 5, 3> sol = lu.solve(rhs);
    return vacuum_weight(c, n) * sol.row(kCout).squaredNorm();
  };

  for (Combination c : {Combination::kAmplitudeDifference, Combination::kPhaseSum}) {
    if (!stable(c)) throw SingularSystem("closed loop unstable for " + std::string(to_string(c)));
  }
  std::optional<double> xsum, ydiff;
  if (stable(Combination::kAmplitudeSum) && stable(Combination::kPhaseDifference)) {
    xsum = variance(Combination::kAmplitudeSum);
    ydiff = variance(Combination::kPhaseDifference);
  }
  return VarianceReport::make(n, variance(Combination::kAmplitudeDifference), variance(Combination::kPhaseSum),
                              xsum, ydiff);
}

double modified_threshold(const NopaParams& params, const LoopParams& loop) {
  loop.validate();
  NopaParams p = params;
  p.beta = 0.0;
  p.validate();
  const double upper = bare_threshold_beta(p);
  const double a = loop.feedback_gain();
  if (a == 0.0) return upper;

  // Positive while the amplitude-sum loop is stable.
  auto margin = [&](double beta) {
    p.beta = beta;
    const double q = effective_coupling(Combination::kAmplitudeSum, coupling_from_beta(p), p.n_modes);
    if (q + p.total_damping() <= 0.0) return -std::numeric_limits<double>::infinity();
    return 1.0 - a * dc_gain(p, q);
  };
  if (margin(0.0) <= 0.0) return 0.0;
  const auto root = numerics::bisect(margin, 0.0, upper, 1e-10);
  return root ? *root : upper;
}

}  // namespace cfcnopa
