#pragma once

#include <numbers>
#include <string_view>

namespace cfcnopa {

/// How the dimensionless pump parameter beta maps onto the per-round-trip
/// nonlinear coupling k = beta * chi.
enum class PumpNormalization {
  /// chi = gamma1 + gamma2: beta = 1 is the threshold of a single mode pair.
  kPairThreshold,
  /// chi = (gamma1 + gamma2) / (N - 1): beta = 1 is the threshold of the
  /// collective amplitude-sum mode of all N modes.
  kCollectiveThreshold,
};

std::string_view to_string(PumpNormalization p);
PumpNormalization pump_normalization_from_string(std::string_view s);

/// Cavity and pump configuration of the amplifier.
struct NopaParams {
  double gamma1 = 0.1;    ///< input-output coupler, per round trip
  double gamma2 = 0.003;  ///< intracavity loss, per round trip
  double tau = 6.7e-10;   ///< round-trip time [s]
  int n_modes = 4;
  double beta = 0.15;
  PumpNormalization normalization = PumpNormalization::kPairThreshold;

  double total_damping() const { return gamma1 + gamma2; }

  /// Throws InvalidParameter.
  void validate() const;

  bool operator==(const NopaParams&) const = default;
};

/// Coherent feedback loop: control beam splitter transmissivity t and loop
/// loss l. r = 1 - t and s = 1 - l.
struct LoopParams {
  double t = 0.0;
  double l = 0.01;

  double r() const { return 1.0 - t; }
  double s() const { return 1.0 - l; }
  /// Round-trip amplitude gain of the feedback path, sqrt(s r).
  double feedback_gain() const;

  void validate() const;

  bool operator==(const LoopParams&) const = default;
};

/// Sideband analysis frequency. omega is always 2 pi freq_hz.
class AnalysisPoint {
 public:
  AnalysisPoint() = default;
  static AnalysisPoint from_hz(double freq_hz);

  double freq_hz() const { return freq_hz_; }
  double omega() const { return omega_; }

  bool operator==(const AnalysisPoint&) const = default;

 private:
  explicit AnalysisPoint(double f) : freq_hz_(f), omega_(2.0 * std::numbers::pi * f) {}
  double freq_hz_ = 0.0;
  double omega_ = 0.0;
};

/// Per-round-trip nonlinear coupling k for the configured normalization.
double coupling_from_beta(const NopaParams& params);

/// beta at which the stand-alone amplifier's amplitude-sum mode reaches
/// threshold: 1 under kCollectiveThreshold, 1/(N-1) under kPairThreshold.
double bare_threshold_beta(const NopaParams& params);

/// Everything needed to evaluate one point of the closed-loop system.
struct OperatingPoint {
  NopaParams nopa;
  LoopParams loop;
  AnalysisPoint at = AnalysisPoint::from_hz(1.0e6);

  void validate() const {
    nopa.validate();
    loop.validate();
  }

  bool operator==(const OperatingPoint&) const = default;
};

}  // namespace cfcnopa
