// cfcnopa: closed-loop NOPA correlation variances, sweeps and optimization.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfcnopa/entanglement_criteria.hpp"
#include "cfcnopa/errors.hpp"
#include "cfcnopa/feedback_network.hpp"
#include "cfcnopa/nopa_transfer.hpp"
#include "cfcnopa/run_config.hpp"
#include "cfcnopa/sweep_optimize.hpp"

namespace {

using namespace cfcnopa;

enum ExitCode { kOk = 0, kInvalidInput = 2, kUnstable = 3, kIoFailure = 4 };

struct Overrides {
  std::string config_path;
  std::string output_path;
  std::string save_config_path;
  std::optional<double> gamma1, gamma2, tau_s, beta, t, l, freq_hz, from, to;
  std::optional<int> n_modes, points;
  std::optional<unsigned> threads;
  std::optional<std::string> normalization, axis;
  std::vector<std::string> free;
  bool require_stable = false;
};

void add_point_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--gamma1", o.gamma1, "input-output coupling per round trip");
  cmd->add_option("--gamma2", o.gamma2, "intracavity loss per round trip");
  cmd->add_option("--tau-s", o.tau_s, "round-trip time [s]");
  cmd->add_option("--n-modes", o.n_modes, "number of entangled modes N");
  cmd->add_option("--beta", o.beta, "pump parameter sqrt(P/P_th)");
  cmd->add_option("--pump-normalization", o.normalization, "pair | collective");
  cmd->add_option("--t", o.t, "control beam splitter transmissivity");
  cmd->add_option("--l", o.l, "feedback loop loss");
  cmd->add_option("--freq-hz", o.freq_hz, "analysis frequency [Hz]");
  cmd->add_option("-o,--output", o.output_path, "output file (default: stdout)");
  cmd->add_option("--save-config", o.save_config_path, "write the resolved configuration as JSON");
  cmd->add_flag("--require-stable", o.require_stable,
                "treat any collective mode past threshold as an unstable configuration");
}

void add_sweep_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--axis", o.axis, "t | freq_hz | beta");
  cmd->add_option("--from", o.from, "axis start");
  cmd->add_option("--to", o.to, "axis end");
  cmd->add_option("--points", o.points, "grid points");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

RunConfig resolve(const Overrides& o, RunConfig base) {
  RunConfig c = o.config_path.empty() ? base : load_config(o.config_path, base);
  auto& p = c.point;
  if (o.gamma1) p.nopa.gamma1 = *o.gamma1;
  if (o.gamma2) p.nopa.gamma2 = *o.gamma2;
  if (o.tau_s) p.nopa.tau = *o.tau_s;
  if (o.n_modes) p.nopa.n_modes = *o.n_modes;
  if (o.beta) p.nopa.beta = *o.beta;
  if (o.normalization) p.nopa.normalization = pump_normalization_from_string(*o.normalization);
  if (o.t) p.loop.t = *o.t;
  if (o.l) p.loop.l = *o.l;
  if (o.freq_hz) p.at = AnalysisPoint::from_hz(*o.freq_hz);
  if (o.axis) c.axis = sweep_axis_from_string(*o.axis);
  if (o.from) c.from_value = *o.from;
  if (o.to) c.to_value = *o.to;
  if (o.points) c.points = *o.points;
  if (o.threads) c.threads = *o.threads;
  if (!o.free.empty()) {
    c.free_t = c.free_beta = false;
    for (const auto& f : o.free) {
      if (f == "t") c.free_t = true;
      else if (f == "beta") c.free_beta = true;
      else throw InvalidParameter("--free accepts t and beta, got '" + f + "'");
    }
  }
  c.require_stable = c.require_stable || o.require_stable;
  c.validate();
  if (!o.save_config_path.empty()) save_config(c, o.save_config_path);
  return c;
}

RunConfig preset(const std::string& figure) {
  RunConfig c;
  c.point.nopa.beta = 0.15;
  c.point.loop.l = 0.01;
  c.point.at = AnalysisPoint::from_hz(1.0e6);
  c.points = 501;
  if (figure == "fig2") {
    c.axis = SweepAxis::kTransmissivity;
    c.from_value = 0.0;
    c.to_value = 1.0;
  } else if (figure == "fig3") {
    c.point.loop.t = 0.8;
    c.axis = SweepAxis::kFrequencyHz;
    c.from_value = 0.0;
    c.to_value = 20.0e6;
  } else if (figure == "fig4") {
    c.point.loop.t = 0.8;
    c.axis = SweepAxis::kBeta;
    c.from_value = 0.0;
    c.to_value = 0.5;
  } else {
    throw InvalidParameter("unknown figure '" + figure + "' (expected fig2|fig3|fig4)");
  }
  return c;
}

// Writes to the requested file, or stdout when no path is given.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  write(out);
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

int cmd_variance(const RunConfig& c, const std::string& out_path, const std::string& name) {
  const auto& p = c.point;
  const VarianceReport cfc = cfc_variance(p.nopa, p.loop, p.at);
  const VarianceReport bare = nopa_only_variances(p.nopa, p.at);
  const CriterionVerdicts verdicts = vlf_check(cfc, bare);
  emit(out_path, [&](std::ostream& os) {
    write_metadata_header(os, c, name);
    write_variance_table(os, cfc, bare, verdicts);
  });
  if (!cfc.stable()) {
    std::cerr << "warning: anti-squeezed collective mode is past the feedback-modified threshold (beta_th="
              << format_value(modified_threshold(p.nopa, p.loop)) << ")\n";
    if (c.require_stable) return kUnstable;
  }
  return kOk;
}

int cmd_criterion(const RunConfig& c, const std::string& out_path) {
  const auto& p = c.point;
  const VarianceReport cfc = cfc_variance(p.nopa, p.loop, p.at);
  const VarianceReport bare = nopa_only_variances(p.nopa, p.at);
  const CriterionVerdicts v = vlf_check(cfc, bare);
  emit(out_path, [&](std::ostream& os) {
    write_metadata_header(os, c, "criterion");
    os << "form,value,bare_value,bound,entangled,enhanced_vs_bare\n";
    os << to_string(v.squeezed.form) << ',' << format_value(v.squeezed.value) << ','
       << format_value(bare.combined_squeezed) << ',' << format_value(v.squeezed.bound) << ','
       << v.squeezed.entangled << ',' << v.squeezed.enhanced_vs_bare << '\n';
    if (v.antisqueezed) {
      os << to_string(v.antisqueezed->form) << ',' << format_value(v.antisqueezed->value) << ','
         << format_value(*bare.combined_antisqueezed) << ',' << format_value(v.antisqueezed->bound) << ','
         << v.antisqueezed->entangled << ',' << v.antisqueezed->enhanced_vs_bare << '\n';
    } else {
      os << to_string(CriterionForm::kXSumYDiff) << ",,,4,,\n";
    }
  });
  return (c.require_stable && !cfc.stable()) ? kUnstable : kOk;
}

int cmd_sweep(const RunConfig& c, const std::string& out_path, const std::string& name) {
  const SweepResult res = run_sweep(c.sweep_spec());
  emit(out_path, [&](std::ostream& os) {
    write_metadata_header(os, c, name);
    write_sweep_table(os, res, c.point.nopa.n_modes);
  });
  std::cerr << "crossovers:";
  for (double x : res.crossovers) std::cerr << ' ' << format_value(x);
  std::cerr << "\noptimum: " << to_string(res.axis) << '=' << format_value(res.optimum.axis_value)
            << " cfc=" << format_value(res.optimum.value) << '\n';
  if (c.require_stable) {
    for (bool s : res.stable) {
      if (!s) return kUnstable;
    }
  }
  return kOk;
}

int cmd_optimize(const RunConfig& c, const std::string& out_path) {
  const OptimizeResult r = optimize_joint(c.optimize_spec());
  emit(out_path, [&](std::ostream& os) {
    write_metadata_header(os, c, "optimize");
    os << "t,beta,combined_squeezed,stable\n";
    os << format_value(r.best.loop.t) << ',' << format_value(r.best.nopa.beta) << ',' << format_value(r.value)
       << ',' << (r.stable ? 1 : 0) << '\n';
  });
  return kOk;
}

int cmd_threshold(const RunConfig& c, const std::string& out_path) {
  const auto& p = c.point;
  const double beta_th = modified_threshold(p.nopa, p.loop);
  emit(out_path, [&](std::ostream& os) {
    write_metadata_header(os, c, "threshold");
    os << "quantity,value\n";
    os << "bare_threshold_beta," << format_value(bare_threshold_beta(p.nopa)) << '\n';
    os << "modified_threshold_beta," << format_value(beta_th) << '\n';
    os << "beta," << format_value(p.nopa.beta) << '\n';
    os << "below_modified_threshold," << (p.nopa.beta < beta_th ? 1 : 0) << '\n';
  });
  return (c.require_stable && p.nopa.beta >= beta_th) ? kUnstable : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-feedback NOPA multipartite entanglement simulator"};
  app.require_subcommand(1);

  Overrides o;
  std::string figure;

  auto* variance = app.add_subcommand("variance", "closed-loop and bare correlation variances at one point");
  add_point_options(variance, o);
  auto* criterion = app.add_subcommand("criterion", "inseparability verdicts at one point");
  add_point_options(criterion, o);
  auto* threshold = app.add_subcommand("threshold", "feedback-modified oscillation threshold");
  add_point_options(threshold, o);
  auto* sweep = app.add_subcommand("sweep", "sweep t, freq_hz or beta");
  add_point_options(sweep, o);
  add_sweep_options(sweep, o);
  auto* optimize = app.add_subcommand("optimize", "minimize the criterion value over t and/or beta");
  add_point_options(optimize, o);
  optimize->add_option("--free", o.free, "free parameters: t, beta")->delimiter(',');
  auto* reproduce = app.add_subcommand("reproduce", "t, frequency and beta dependence presets");
  reproduce->add_option("figure", figure, "fig2 | fig3 | fig4")->required();
  add_point_options(reproduce, o);
  add_sweep_options(reproduce, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*variance) return cmd_variance(resolve(o, {}), o.output_path, "variance");
    if (*criterion) return cmd_criterion(resolve(o, {}), o.output_path);
    if (*threshold) return cmd_threshold(resolve(o, {}), o.output_path);
    if (*sweep) return cmd_sweep(resolve(o, {}), o.output_path, "sweep");
    if (*optimize) return cmd_optimize(resolve(o, {}), o.output_path);
    if (*reproduce) return cmd_sweep(resolve(o, preset(figure)), o.output_path, "reproduce " + figure);
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const MismatchedContext& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const Error& e) {
    std::cerr << "unstable configuration: " << e.what() << '\n';
    return kUnstable;
  }
  return kOk;
}
