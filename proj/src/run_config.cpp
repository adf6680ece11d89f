#include "cfcnopa/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "cfcnopa/errors.hpp"

namespace cfcnopa {

namespace {

using nlohmann::json;

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

SweepSpec RunConfig::sweep_spec() const {
  SweepSpec s;
  s.axis = axis;
  s.from_value = from_value;
  s.to_value = to_value;
  s.points = points;
  s.fixed = point;
  s.threads = threads;
  return s;
}

OptimizeSpec RunConfig::optimize_spec() const {
  OptimizeSpec o;
  o.fixed = point;
  o.free_t = free_t;
  o.free_beta = free_beta;
  o.require_stable = require_stable;
  return o;
}

void RunConfig::validate() const {
  point.validate();
  if (points < 2) throw InvalidParameter("points must be >= 2");
}

json RunConfig::to_json() const {
  json free = json::array();
  if (free_t) free.push_back("t");
  if (free_beta) free.push_back("beta");
  return json{
      {"gamma1", point.nopa.gamma1},
      {"gamma2", point.nopa.gamma2},
      {"tau_s", point.nopa.tau},
      {"n_modes", point.nopa.n_modes},
      {"beta", point.nopa.beta},
      {"pump_normalization", std::string(to_string(point.nopa.normalization))},
      {"t", point.loop.t},
      {"l", point.loop.l},
      {"freq_hz", point.at.freq_hz()},
      {"axis", std::string(to_string(axis))},
      {"from", from_value},
      {"to", to_value},
      {"points", points},
      {"threads", threads},
      {"free", free},
      {"require_stable", require_stable},
  };
}

RunConfig RunConfig::from_json(const json& j, RunConfig base) {
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  static const std::set<std::string> known = {"gamma1", "gamma2", "tau_s", "n_modes", "beta", "pump_normalization",
                                              "t", "l", "freq_hz", "axis", "from", "to", "points", "threads",
                                              "free", "require_stable"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw InvalidParameter("unknown config key '" + item.key() + "'");
  }
  RunConfig c = base;
  read_key(j, "gamma1", c.point.nopa.gamma1);
  read_key(j, "gamma2", c.point.nopa.gamma2);
  read_key(j, "tau_s", c.point.nopa.tau);
  read_key(j, "n_modes", c.point.nopa.n_modes);
  read_key(j, "beta", c.point.nopa.beta);
  read_key(j, "t", c.point.loop.t);
  read_key(j, "l", c.point.loop.l);
  if (j.contains("pump_normalization")) {
    std::string s;
    read_key(j, "pump_normalization", s);
    c.point.nopa.normalization = pump_normalization_from_string(s);
  }
  if (j.contains("freq_hz")) {
    double f = 0.0;
    read_key(j, "freq_hz", f);
    c.point.at = AnalysisPoint::from_hz(f);
  }
  if (j.contains("axis")) {
    std::string s;
    read_key(j, "axis", s);
    c.axis = sweep_axis_from_string(s);
  }
  read_key(j, "from", c.from_value);
  read_key(j, "to", c.to_value);
  read_key(j, "points", c.points);
  read_key(j, "threads", c.threads);
  read_key(j, "require_stable", c.require_stable);
  if (j.contains("free")) {
    std::vector<std::string> free;
    read_key(j, "free", free);
    c.free_t = c.free_beta = false;
    for (const auto& f : free) {
      if (f == "t") c.free_t = true;
      else if (f == "beta") c.free_beta = true;
      else throw InvalidParameter("free parameters must be 't' or 'beta', got '" + f + "'");
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::from_json(const json& j) { return from_json(j, RunConfig{}); }

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidParameter("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return RunConfig::from_json(j, base);
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file '" + path + "'");
  out << config.to_json().dump(2) << '\n';
  if (!out) throw IoError("failed writing config file '" + path + "'");
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_metadata_header(std::ostream& os, const RunConfig& config, const std::string& command) {
  os << "# command: " << command << '\n';
  os << "# config: " << config.to_json().dump() << '\n';
  os << "# derived: k=" << format_value(coupling_from_beta(config.point.nopa))
     << " omega_tau=" << format_value(config.point.at.omega() * config.point.nopa.tau)
     << " bare_threshold_beta=" << format_value(bare_threshold_beta(config.point.nopa)) << '\n';
}

void write_variance_table(std::ostream& os, const VarianceReport& cfc, const VarianceReport& bare,
                          const CriterionVerdicts& verdicts) {
  auto opt = [](const std::optional<double>& v) { return v ? format_value(*v) : std::string(); };
  auto flag = [](bool b) { return b ? "1" : "0"; };
  os << "quantity,value\n";
  os << "v_xdiff," << format_value(cfc.v_xdiff) << '\n';
  os << "v_ysum," << format_value(cfc.v_ysum) << '\n';
  os << "v_xsum," << opt(cfc.v_xsum) << '\n';
  os << "v_ydiff," << opt(cfc.v_ydiff) << '\n';
  os << "combined_squeezed," << format_value(cfc.combined_squeezed) << '\n';
  os << "combined_antisqueezed," << opt(cfc.combined_antisqueezed) << '\n';
  os << "vacuum_reference," << format_value(cfc.vacuum_reference) << '\n';
  os << "criterion_bound," << format_value(cfc.criterion_bound) << '\n';
  os << "stable," << flag(cfc.stable()) << '\n';
  os << "bare_v_xdiff," << format_value(bare.v_xdiff) << '\n';
  os << "bare_v_ysum," << format_value(bare.v_ysum) << '\n';
  os << "bare_v_xsum," << opt(bare.v_xsum) << '\n';
  os << "bare_v_ydiff," << opt(bare.v_ydiff) << '\n';
  os << "bare_combined_squeezed," << format_value(bare.combined_squeezed) << '\n';
  os << "bare_combined_antisqueezed," << opt(bare.combined_antisqueezed) << '\n';
  os << "bare_stable," << flag(bare.stable()) << '\n';
  os << "entangled_xdiff_ysum," << flag(verdicts.squeezed.entangled) << '\n';
  os << "enhanced_xdiff_ysum," << flag(verdicts.squeezed.enhanced_vs_bare) << '\n';
  if (verdicts.antisqueezed) {
    os << "entangled_xsum_ydiff," << flag(verdicts.antisqueezed->entangled) << '\n';
    os << "enhanced_xsum_ydiff," << flag(verdicts.antisqueezed->enhanced_vs_bare) << '\n';
  } else {
    os << "entangled_xsum_ydiff,\n";
    os << "enhanced_xsum_ydiff,\n";
  }
}

void write_sweep_table(std::ostream& os, const SweepResult& result, int n_modes) {
  os << "# crossovers:";
  for (double x : result.crossovers) os << ' ' << format_value(x);
  os << '\n';
  os << "# optimum: " << to_string(result.axis) << '=' << format_value(result.optimum.axis_value)
     << " cfc=" << format_value(result.optimum.value) << '\n';
  os << "axis_value,cfc,bare,criterion_bound,vacuum_reference,stability_flag\n";
  const std::string bound = format_value(VarianceReport::kCriterionBound);
  const std::string vacuum = format_value(n_modes + 2.0);
  for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
    os << format_value(result.axis_values[i]) << ',';
    if (result.cfc_values[i]) {
      os << format_value(*result.cfc_values[i]) << ',' << format_value(*result.bare_values[i]);
    } else {
      os << ',';
    }
    os << ',' << bound << ',' << vacuum << ',';
    os << (!result.cfc_values[i] ? "-1" : (result.stable[i] ? "1" : "0")) << '\n';
  }
}

}  // namespace cfcnopa
