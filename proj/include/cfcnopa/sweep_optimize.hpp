#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cfcnopa/params.hpp"

namespace cfcnopa {

enum class SweepAxis { kTransmissivity, kFrequencyHz, kBeta };

std::string_view to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(std::string_view s);

/// Copy of `base` with the swept field replaced by `value`.
OperatingPoint with_axis_value(OperatingPoint base, SweepAxis axis, double value);

/// Criterion value (V(X_i - X_j) + V(sum Y)) with and without feedback at one
/// operating point. `stable` is false when any collective mode of the closed
/// loop (or the bare amplifier) is at or past threshold.
struct CriterionPoint {
  double cfc = 0.0;
  double bare = 0.0;
  bool stable = false;
};

/// Throws on invalid parameters or a singular squeezed-pair loop.
CriterionPoint evaluate_criterion(const OperatingPoint& op);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kTransmissivity;
  double from_value = 0.0;
  double to_value = 1.0;
  int points = 501;
  OperatingPoint fixed;
  /// Worker threads for point evaluation; 0 selects hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct Optimum {
  double axis_value = 0.0;
  double value = 0.0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kTransmissivity;
  std::vector<double> axis_values;
  /// nullopt marks a sample that could not be evaluated.
  std::vector<std::optional<double>> cfc_values;
  std::vector<std::optional<double>> bare_values;
  std::vector<bool> stable;
  /// Sign changes of cfc - bare, bisection-refined.
  std::vector<double> crossovers;
  Optimum optimum;
};

/// Uniform-grid sweep. Crossovers are refined to |d axis| < 1e-6 and
/// |cfc - bare| < 1e-9; the optimum is the grid argmin (smallest axis value
/// on ties) refined by golden section to 1e-6. Throws EmptyResult when no
/// sample can be evaluated.
SweepResult run_sweep(const SweepSpec& spec);

enum class FreeParameter { kTransmissivity, kBeta };

struct OptimizeSpec {
  OperatingPoint fixed;
  bool free_t = true;
  bool free_beta = false;
  /// Treat points where any collective mode is past threshold as infeasible.
  bool require_stable = false;
  int grid_points = 501;  ///< per axis in 1-D
  int seed_grid = 101;    ///< per axis in 2-D

  void validate() const;
};

struct OptimizeResult {
  OperatingPoint best;
  double value = 0.0;
  bool stable = false;
};

/// Minimizes the CFC criterion value over the free subset of {t, beta}.
/// t ranges over [0, 1]; beta over [0, bare threshold). Deterministic.
OptimizeResult optimize_joint(const OptimizeSpec& spec);

}  // namespace cfcnopa
