#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cfcnopa/entanglement_criteria.hpp"
#include "cfcnopa/params.hpp"
#include "cfcnopa/sweep_optimize.hpp"

namespace cfcnopa {

/// Everything a CLI run needs. Serialized as one flat JSON object:
///   gamma1, gamma2, tau_s, n_modes, beta, t, l, freq_hz,
///   pump_normalization ("pair" | "collective"),
///   axis ("t" | "freq_hz" | "beta"), from, to, points, threads,
///   free (array of "t" / "beta"), require_stable.
struct RunConfig {
  OperatingPoint point;

  SweepAxis axis = SweepAxis::kTransmissivity;
  double from_value = 0.0;
  double to_value = 1.0;
  int points = 501;
  unsigned threads = 0;

  bool free_t = true;
  bool free_beta = false;
  bool require_stable = false;

  SweepSpec sweep_spec() const;
  OptimizeSpec optimize_spec() const;

  /// Throws InvalidParameter.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j, RunConfig base);
  static RunConfig from_json(const nlohmann::json& j);

  bool operator==(const RunConfig&) const = default;
};

/// Throws IoError on unreadable files and InvalidParameter on bad content.
RunConfig load_config(const std::string& path, RunConfig base = {});
void save_config(const RunConfig& config, const std::string& path);

/// 12 significant digits, as used in every output table.
std::string format_value(double v);

/// `#`-prefixed header with the resolved configuration and derived k.
void write_metadata_header(std::ostream& os, const RunConfig& config, const std::string& command);

/// Two-column `quantity,value` table for the closed-loop and bare reports.
void write_variance_table(std::ostream& os, const VarianceReport& cfc, const VarianceReport& bare,
                          const CriterionVerdicts& verdicts);

/// Columns: axis_value, cfc, bare, criterion_bound, vacuum_reference,
/// stability_flag. Absent samples leave cfc and bare empty with flag -1.
void write_sweep_table(std::ostream& os, const SweepResult& result, int n_modes);

}  // namespace cfcnopa
