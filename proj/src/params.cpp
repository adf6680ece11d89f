#include "cfcnopa/params.hpp"

#include <cmath>
#include <string>

#include "cfcnopa/errors.hpp"

namespace cfcnopa {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::string_view to_string(PumpNormalization p) {
  switch (p) {
    case PumpNormalization::kPairThreshold: return "pair";
    case PumpNormalization::kCollectiveThreshold: return "collective";
  }
  return "?";
}

PumpNormalization pump_normalization_from_string(std::string_view s) {
  if (s == "pair") return PumpNormalization::kPairThreshold;
  if (s == "collective") return PumpNormalization::kCollectiveThreshold;
  throw InvalidParameter("unknown pump normalization '" + std::string(s) + "' (expected pair|collective)");
}

void NopaParams::validate() const {
  require(finite(gamma1) && gamma1 > 0.0 && gamma1 <= 1.0, "gamma1 must lie in (0, 1]");
  require(finite(gamma2) && gamma2 >= 0.0 && gamma2 < 1.0, "gamma2 must lie in [0, 1)");
  require(gamma1 + gamma2 < 1.0, "gamma1 + gamma2 must be < 1");
  require(finite(tau) && tau > 0.0, "tau must be > 0");
  require(n_modes >= 2, "n_modes must be >= 2");
  require(finite(beta) && beta >= 0.0 && beta < 1.0, "beta must lie in [0, 1)");
}

double LoopParams::feedback_gain() const { return std::sqrt(s() * r()); }

void LoopParams::validate() const {
  require(finite(t) && t >= 0.0 && t <= 1.0, "t must lie in [0, 1]");
  require(finite(l) && l >= 0.0 && l < 1.0, "l must lie in [0, 1)");
}

AnalysisPoint AnalysisPoint::from_hz(double freq_hz) {
  require(std::isfinite(freq_hz) && freq_hz >= 0.0, "freq_hz must be finite and >= 0");
  return AnalysisPoint(freq_hz);
}

double coupling_from_beta(const NopaParams& params) {
  const double chi = params.normalization == PumpNormalization::kPairThreshold
                         ? params.total_damping()
                         : params.total_damping() / (params.n_modes - 1);
  return params.beta * chi;
}

double bare_threshold_beta(const NopaParams& params) {
  return params.normalization == PumpNormalization::kPairThreshold ? 1.0 / (params.n_modes - 1) : 1.0;
}

}  // namespace cfcnopa
