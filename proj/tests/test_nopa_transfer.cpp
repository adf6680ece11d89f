#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Dense>

#include "cfcnopa/errors.hpp"
#include "cfcnopa/nopa_transfer.hpp"
#include "langevin_internal.hpp"
#include "test_support.hpp"

namespace cfcnopa {
namespace {

using testing::ConfigGenerator;
using testing::reference_point;
using testing::rel_err;

void expect_sets_agree(const TransferSet& a, const TransferSet& b, double tol) {
  for (Combination c : kAllCombinations) {
    EXPECT_LT(rel_err(a[c].m, b[c].m), tol) << to_string(c);
    EXPECT_LT(rel_err(a[c].n, b[c].n), tol) << to_string(c);
  }
}

TEST(TransferCoefficients, EmptyLosslessCavityAtDcIsIdentity) {
  NopaParams p{0.1, 0.0, 6.7e-10, 4, 0.0, PumpNormalization::kPairThreshold};
  const TransferSet ts = transfer_coefficients(p, AnalysisPoint::from_hz(0.0));
  for (Combination c : kAllCombinations) {
    EXPECT_EQ(ts[c].m, cplx(1.0, 0.0));
    EXPECT_EQ(ts[c].n, cplx(0.0, 0.0));
  }
}

TEST(TransferCoefficients, PassiveLossyCavityAtDc) {
  NopaParams p{0.1, 0.003, 6.7e-10, 4, 0.0, PumpNormalization::kPairThreshold};
  const TransferSet ts = transfer_coefficients(p, AnalysisPoint::from_hz(0.0));
  EXPECT_NEAR(ts.x_diff.m.real(), 0.097 / 0.103, 1e-15);
  EXPECT_NEAR(ts.x_diff.m.real(), 0.94175, 5e-6);
  EXPECT_NEAR(ts.x_diff.n.real(), 2.0 * std::sqrt(0.0003) / 0.103, 1e-15);
  EXPECT_NEAR(ts.x_diff.n.real(), 0.33632, 5e-6);
  EXPECT_NEAR(ts.x_diff.noise_gain(), 1.0, 1e-15);
}

// Reference values from an independent numpy evaluation of the closed forms.
TEST(TransferCoefficients, ReferenceOperatingPointFrozen) {
  const auto op = reference_point();
  const TransferSet ts = transfer_coefficients(op.nopa, op.at);
  EXPECT_LT(rel_err(ts.x_diff.m, cplx(0.6863461192477859, -0.05993304226859933)), 1e-13);
  EXPECT_LT(rel_err(ts.x_diff.n, cplx(0.29208371576837694, -0.01038070742613871)), 1e-13);
  expect_sets_agree(ts, langevin_oracle(op.nopa, op.at), 1e-12);
}

TEST(TransferCoefficients, ThresholdPoleThrows) {
  NopaParams p{0.1, 0.003, 6.7e-10, 4, 0.0, PumpNormalization::kPairThreshold};
  // beta exactly at the amplitude-sum pole, omega = 0
  p.beta = 1.0 / 3.0;
  const double den = -(p.n_modes - 1) * coupling_from_beta(p) + p.total_damping();
  ASSERT_LT(std::abs(den), 1e-12);
  EXPECT_THROW(transfer_coefficients(p, AnalysisPoint::from_hz(0.0)), ThresholdReached);
  EXPECT_THROW(langevin_oracle(p, AnalysisPoint::from_hz(0.0)), SingularSystem);
  // the same beta is regular away from DC
  EXPECT_NO_THROW(transfer_coefficients(p, AnalysisPoint::from_hz(1.0e6)));
}

TEST(LangevinOracle, MatchesClosedFormsOnRandomDraws) {
  ConfigGenerator gen(20240611);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const NopaParams p = gen.nopa(gen.normalization());
    const AnalysisPoint at = gen.at();
    const TransferSet a = transfer_coefficients(p, at);
    const TransferSet b = langevin_oracle(p, at);
    for (Combination c : kAllCombinations) {
      worst = std::max({worst, rel_err(a[c].m, b[c].m), rel_err(a[c].n, b[c].n)});
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(LangevinOracle, CombinationsAreExactEigenmodes) {
  // The pump couples all modes symmetrically, so every pair difference and
  // the full sums are left eigenvectors of the input-output transfer matrix.
  NopaParams p = reference_point().nopa;
  p.n_modes = 5;
  const Eigen::MatrixXd drift = detail::langevin_drift(p);
  for (Combination c : kAllCombinations) {
    const Eigen::VectorXd v = detail::combination_vector(c, p.n_modes);
    const Eigen::VectorXd av = drift * v;
    const double lambda = v.dot(av) / v.squaredNorm();
    EXPECT_LT((av - lambda * v).norm(), 1e-15) << to_string(c);
    EXPECT_NEAR(lambda, -p.total_damping() - effective_coupling(c, coupling_from_beta(p), p.n_modes), 1e-15);
  }
}

TEST(LangevinOracle, TwoModesCollapseSumAndDifference) {
  NopaParams p = reference_point().nopa;
  p.n_modes = 2;
  const auto at = AnalysisPoint::from_hz(3.0e6);
  const TransferSet ts = langevin_oracle(p, at);
  EXPECT_LT(rel_err(ts.y_sum.m, ts.x_diff.m), 1e-13);
  EXPECT_LT(rel_err(ts.y_sum.n, ts.x_diff.n), 1e-13);
  EXPECT_LT(rel_err(ts.y_diff.m, ts.x_sum.m), 1e-13);
  EXPECT_LT(rel_err(ts.y_diff.n, ts.x_sum.n), 1e-13);
}

TEST(LangevinOracle, PassiveCavityMatches) {
  NopaParams p{0.2, 0.01, 1e-9, 3, 0.0, PumpNormalization::kPairThreshold};
  const auto at = AnalysisPoint::from_hz(7.0e6);
  expect_sets_agree(transfer_coefficients(p, at), langevin_oracle(p, at), 1e-13);
}

TEST(TransferProperties, PassiveCavityIsUnitary) {
  ConfigGenerator gen(7);
  for (int i = 0; i < 300; ++i) {
    NopaParams p = gen.nopa();
    p.beta = 0.0;
    const TransferSet ts = transfer_coefficients(p, gen.at());
    for (Combination c : kAllCombinations) EXPECT_NEAR(ts[c].noise_gain(), 1.0, 1e-12);
  }
}

TEST(TransferProperties, UncertaintyProductsAtLeastOne) {
  ConfigGenerator gen(11);
  for (int i = 0; i < 1000; ++i) {
    const NopaParams p = gen.nopa(gen.normalization());
    const TransferSet ts = transfer_coefficients(p, gen.at());
    EXPECT_GE(ts.x_diff.noise_gain() * ts.y_diff.noise_gain(), 1.0 - 1e-12);
    EXPECT_GE(ts.y_sum.noise_gain() * ts.x_sum.noise_gain(), 1.0 - 1e-12);
  }
}

TEST(TransferProperties, NegativeFrequencyConjugates) {
  ConfigGenerator gen(13);
  for (int i = 0; i < 200; ++i) {
    const NopaParams p = gen.nopa();
    const double omega = gen.uniform(0.0, 3e8);
    const TransferSet plus = transfer_coefficients_omega(p, omega);
    const TransferSet minus = transfer_coefficients_omega(p, -omega);
    for (Combination c : kAllCombinations) {
      EXPECT_LT(rel_err(plus[c].m, std::conj(minus[c].m)), 1e-14);
      EXPECT_LT(rel_err(plus[c].n, std::conj(minus[c].n)), 1e-14);
      EXPECT_LT(rel_err(plus[c].noise_gain(), minus[c].noise_gain()), 1e-14);
    }
  }
}

TEST(NopaOnlyVariances, VacuumInVacuumOut) {
  ConfigGenerator gen(17);
  for (int i = 0; i < 1000; ++i) {
    NopaParams p = gen.nopa();
    p.beta = 0.0;
    const VarianceReport r = nopa_only_variances(p, gen.at());
    const double n = p.n_modes;
    EXPECT_NEAR(r.v_xdiff, 2.0, 1e-12);
    EXPECT_NEAR(r.v_ysum, n, 1e-12);
    ASSERT_TRUE(r.stable());
    EXPECT_NEAR(*r.v_xsum, n, 1e-12);
    EXPECT_NEAR(*r.v_ydiff, 2.0, 1e-12);
    EXPECT_NEAR(r.combined_squeezed, n + 2.0, 1e-12);
    EXPECT_EQ(r.vacuum_reference, n + 2.0);
  }
}

TEST(NopaOnlyVariances, ReferenceOperatingPoint) {
  const auto op = reference_point();
  const VarianceReport r = nopa_only_variances(op.nopa, op.at);
  EXPECT_LT(r.combined_squeezed, 6.0);
  EXPECT_LT(rel_err(r.v_xdiff, 1.1201672421315894), 1e-12);
  EXPECT_LT(rel_err(r.v_ysum, 0.6778873621692302), 1e-12);
  EXPECT_LT(rel_err(r.combined_squeezed, 1.7980546043008196), 1e-12);
  ASSERT_TRUE(r.stable());
  EXPECT_LT(rel_err(*r.v_xsum, 26.981493229648073), 1e-12);
  EXPECT_LT(rel_err(*r.v_ydiff, 3.6088043014633437), 1e-12);
  EXPECT_GE((r.v_xdiff / 2.0) * (*r.v_ydiff / 2.0), 1.0);
}

TEST(NopaOnlyVariances, CollectiveNormalizationFrozen) {
  auto op = reference_point();
  op.nopa.normalization = PumpNormalization::kCollectiveThreshold;
  const VarianceReport r = nopa_only_variances(op.nopa, op.at);
  EXPECT_LT(rel_err(r.combined_squeezed, 3.888622923196567), 1e-12);
  EXPECT_LT(rel_err(*r.v_xsum, 7.2176086029266875), 1e-12);
}

TEST(NopaOnlyVariances, AntisqueezedOmittedPastStandAloneThreshold) {
  auto op = reference_point();
  op.nopa.beta = 0.4;  // past 1/(N-1) under pair normalization
  const VarianceReport r = nopa_only_variances(op.nopa, op.at);
  EXPECT_FALSE(r.stable());
  EXPECT_FALSE(r.v_xsum.has_value());
  EXPECT_GT(r.v_xdiff, 0.0);
}

TEST(NopaOnlyVariances, SqueezingMonotoneInBetaAtDc) {
  for (auto norm : {PumpNormalization::kPairThreshold, PumpNormalization::kCollectiveThreshold}) {
    NopaParams p = reference_point().nopa;
    p.normalization = norm;
    double previous = INFINITY;
    for (int i = 0; i < 1000; ++i) {
      p.beta = 0.999 * i / 999.0;
      const double v = nopa_only_variances(p, AnalysisPoint::from_hz(0.0)).v_xdiff;
      EXPECT_LT(v, previous) << "beta=" << p.beta;
      previous = v;
    }
  }
}

}  // namespace
}  // namespace cfcnopa
