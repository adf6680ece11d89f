#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace cfcnopa {

/// Collective quadrature combinations of the N output modes. The first two
/// are squeezed by the all-to-all pump coupling, the last two anti-squeezed.
enum class Combination {
  kAmplitudeDifference,  ///< X_i - X_j
  kPhaseSum,             ///< sum_i Y_i
  kAmplitudeSum,         ///< sum_i X_i
  kPhaseDifference,      ///< Y_i - Y_j
};

inline constexpr std::array<Combination, 4> kAllCombinations = {
    Combination::kAmplitudeDifference, Combination::kPhaseSum,
    Combination::kAmplitudeSum, Combination::kPhaseDifference};

std::string_view to_string(Combination c);

inline constexpr bool is_squeezed(Combination c) {
  return c == Combination::kAmplitudeDifference || c == Combination::kPhaseSum;
}

/// Vacuum variance of the combination: 2 for a pairwise difference, N for a
/// sum over all modes (single-mode quadrature vacuum variance is 1).
inline constexpr double vacuum_weight(Combination c, int n_modes) {
  return (c == Combination::kAmplitudeDifference || c == Combination::kPhaseDifference)
             ? 2.0
             : static_cast<double>(n_modes);
}

/// Effective coupling entering the transfer function of a combination,
/// i.e. the eigenvalue of the pump coupling on that collective mode.
inline constexpr double effective_coupling(Combination c, double k, int n_modes) {
  switch (c) {
    case Combination::kAmplitudeDifference: return k;
    case Combination::kPhaseSum: return (n_modes - 1) * k;
    case Combination::kAmplitudeSum: return -(n_modes - 1) * k;
    case Combination::kPhaseDifference: return -k;
  }
  return 0.0;
}

/// Correlation variances of the four combinations.
///
/// The squeezed pair (amplitude difference, phase sum) is always present.
/// The anti-squeezed pair is absent when its collective mode is at or past
/// its oscillation threshold, where the linearized variance is meaningless.
struct VarianceReport {
  int n_modes = 0;
  double v_xdiff = 0.0;
  double v_ysum = 0.0;
  std::optional<double> v_xsum;
  std::optional<double> v_ydiff;
  double combined_squeezed = 0.0;
  std::optional<double> combined_antisqueezed;
  double vacuum_reference = 0.0;
  static constexpr double kCriterionBound = 4.0;
  double criterion_bound = kCriterionBound;

  bool stable() const { return combined_antisqueezed.has_value(); }
  std::optional<double> variance(Combination c) const;

  static VarianceReport make(int n_modes, double v_xdiff, double v_ysum,
                             std::optional<double> v_xsum, std::optional<double> v_ydiff);
};

}  // namespace cfcnopa
