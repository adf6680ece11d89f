#include "cfcnopa/sweep_optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "cfcnopa/errors.hpp"
#include "cfcnopa/feedback_network.hpp"
#include "cfcnopa/nopa_transfer.hpp"
#include "cfcnopa/numerics.hpp"

namespace cfcnopa {

namespace {

constexpr double kAxisTolerance = 1e-6;
constexpr double kCrossoverValueTolerance = 1e-9;
// Differences this small are rounding noise around an exact tie.
constexpr double kTieTolerance = 1e-12;

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double d, double scale) {
  if (std::abs(d) <= kTieTolerance * std::max(1.0, std::abs(scale))) return 0;
  return d < 0 ? -1 : 1;
}

bool strictly_better(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return candidate < incumbent;
  return candidate < incumbent - kTieTolerance * std::max(1.0, std::abs(incumbent));
}

std::vector<double> uniform_grid(double from, double to, int points) {
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  xs.back() = to;
  return xs;
}

// Grid argmin (first index wins ties), refined by golden section between the
// neighbouring samples. The refined point replaces the grid point only when
// it is strictly better.
template <class F>
Optimum refine_minimum(F&& objective, const std::vector<double>& xs, const std::vector<double>& values) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (best == values.size() || strictly_better(values[i], values[best])) best = i;
  }
  if (best == values.size()) throw EmptyResult("no evaluable sample");
  Optimum opt{xs[best], values[best]};
  const double lo = xs[best == 0 ? 0 : best - 1];
  const double hi = xs[std::min(best + 1, xs.size() - 1)];
  if (hi > lo) {
    const auto refined = numerics::golden_section(objective, lo, hi, kAxisTolerance);
    if (std::isfinite(refined.value) && strictly_better(refined.value, opt.value)) {
      opt = {refined.x, refined.value};
    }
  }
  return opt;
}

void check_axis_range(SweepAxis axis, double lo, double hi) {
  switch (axis) {
    case SweepAxis::kTransmissivity:
      if (lo < 0.0 || hi > 1.0) throw InvalidParameter("t sweep bounds must lie in [0, 1]");
      break;
    case SweepAxis::kBeta:
      if (lo < 0.0 || hi >= 1.0) throw InvalidParameter("beta sweep bounds must lie in [0, 1)");
      break;
    case SweepAxis::kFrequencyHz:
      if (lo < 0.0 || !std::isfinite(hi)) throw InvalidParameter("frequency sweep bounds must be >= 0");
      break;
  }
}

}  // namespace

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::kTransmissivity: return "t";
    case SweepAxis::kFrequencyHz: return "freq_hz";
    case SweepAxis::kBeta: return "beta";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view s) {
  if (s == "t") return SweepAxis::kTransmissivity;
  if (s == "freq_hz" || s == "freq" || s == "frequency") return SweepAxis::kFrequencyHz;
  if (s == "beta") return SweepAxis::kBeta;
  throw InvalidParameter("unknown sweep axis '" + std::string(s) + "' (expected t|freq_hz|beta)");
}

OperatingPoint with_axis_value(OperatingPoint base, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kTransmissivity: base.loop.t = value; break;
    case SweepAxis::kFrequencyHz: base.at = AnalysisPoint::from_hz(value); break;
    case SweepAxis::kBeta: base.nopa.beta = value; break;
  }
  return base;
}

CriterionPoint evaluate_criterion(const OperatingPoint& op) {
  op.validate();
  const VarianceReport cfc = cfc_variance(op.nopa, op.loop, op.at);
  const VarianceReport bare = nopa_only_variances(op.nopa, op.at);
  return {cfc.combined_squeezed, bare.combined_squeezed, cfc.stable() && bare.stable()};
}

void SweepSpec::validate() const {
  if (points < 2) throw InvalidParameter("sweep needs at least 2 points");
  if (!(from_value < to_value)) throw InvalidParameter("sweep bounds must satisfy from < to");
  check_axis_range(axis, from_value, to_value);
  with_axis_value(fixed, axis, from_value).validate();
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult res;
  res.axis = spec.axis;
  res.axis_values = uniform_grid(spec.from_value, spec.to_value, spec.points);
  const std::size_t n = res.axis_values.size();
  res.cfc_values.assign(n, std::nullopt);
  res.bare_values.assign(n, std::nullopt);
  std::vector<char> stable(n, 0);

  auto eval_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n; i += stride) {
      try {
        const CriterionPoint p = evaluate_criterion(with_axis_value(spec.fixed, spec.axis, res.axis_values[i]));
        res.cfc_values[i] = p.cfc;
        res.bare_values[i] = p.bare;
        stable[i] = p.stable;
      } catch (const Error&) {
        // recorded as absent
      }
    }
  };
  unsigned workers = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    eval_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(eval_range, w, workers);
  }
  res.stable.assign(stable.begin(), stable.end());

  auto difference = [&](double x) {
    const CriterionPoint p = evaluate_criterion(with_axis_value(spec.fixed, spec.axis, x));
    return p.cfc - p.bare;
  };
  // Walk runs of present samples; bisect between the last nonzero-sign
  // sample and the next sample of opposite sign.
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < n; ++i) {
    if (!res.cfc_values[i]) {
      last.reset();
      continue;
    }
    const double d = *res.cfc_values[i] - *res.bare_values[i];
    const int sg = sign_of(d, *res.bare_values[i]);
    if (sg == 0) continue;
    if (last) {
      const double dl = *res.cfc_values[*last] - *res.bare_values[*last];
      if ((dl < 0) != (d < 0)) {
        try {
          const auto root = numerics::bisect(difference, res.axis_values[*last], res.axis_values[i], kAxisTolerance,
                                             kCrossoverValueTolerance);
          if (root) res.crossovers.push_back(*root);
        } catch (const Error&) {
        }
      }
    }
    last = i;
  }

  std::vector<double> values(n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    if (res.cfc_values[i]) values[i] = *res.cfc_values[i];
  }
  auto objective = [&](double x) {
    try {
      return evaluate_criterion(with_axis_value(spec.fixed, spec.axis, x)).cfc;
    } catch (const Error&) {
      return kInf;
    }
  };
  res.optimum = refine_minimum(objective, res.axis_values, values);
  return res;
}

void OptimizeSpec::validate() const {
  if (!free_t && !free_beta) throw InvalidParameter("optimize needs at least one free parameter");
  if (grid_points < 2 || seed_grid < 2) throw InvalidParameter("optimize grids need at least 2 points");
  fixed.validate();
}

OptimizeResult optimize_joint(const OptimizeSpec& spec) {
  spec.validate();
  const double beta_hi = std::nextafter(std::min(1.0, bare_threshold_beta(spec.fixed.nopa)), 0.0);

  auto objective = [&](double t, double beta) {
    OperatingPoint op = spec.fixed;
    op.loop.t = t;
    op.nopa.beta = beta;
    try {
      const CriterionPoint p = evaluate_criterion(op);
      if (spec.require_stable && !p.stable) return kInf;
      return p.cfc;
    } catch (const Error&) {
      return kInf;
    }
  };

  double t = spec.fixed.loop.t;
  double beta = spec.fixed.nopa.beta;

  if (spec.free_t != spec.free_beta) {
    const bool along_t = spec.free_t;
    const double hi = along_t ? 1.0 : beta_hi;
    const auto xs = uniform_grid(0.0, hi, spec.grid_points);
    auto f1 = [&](double x) { return along_t ? objective(x, beta) : objective(t, x); };
    std::vector<double> values(xs.size());
    std::transform(xs.begin(), xs.end(), values.begin(), f1);
    const Optimum opt = refine_minimum(f1, xs, values);
    (along_t ? t : beta) = opt.axis_value;
  } else {
    const auto ts = uniform_grid(0.0, 1.0, spec.seed_grid);
    const auto bs = uniform_grid(0.0, beta_hi, spec.seed_grid);
    double best = kInf;
    for (double tv : ts) {
      for (double bv : bs) {
        const double v = objective(tv, bv);
        if (strictly_better(v, best)) {
          best = v;
          t = tv;
          beta = bv;
        }
      }
    }
    if (!std::isfinite(best)) throw EmptyResult("no feasible seed on the optimization grid");
    const double dt = ts[1] - ts[0];
    const double db = bs[1] - bs[0];
    for (int iter = 0; iter < 100; ++iter) {
      const double before = best;
      auto along_t = numerics::golden_section([&](double x) { return objective(x, beta); },
                                              std::max(0.0, t - dt), std::min(1.0, t + dt), kAxisTolerance);
      if (strictly_better(along_t.value, best)) {
        t = along_t.x;
        best = along_t.value;
      }
      auto along_b = numerics::golden_section([&](double x) { return objective(t, x); },
                                              std::max(0.0, beta - db), std::min(beta_hi, beta + db), kAxisTolerance);
      if (strictly_better(along_b.value, best)) {
        beta = along_b.x;
        best = along_b.value;
      }
      if (!strictly_better(best, before)) break;
    }
  }

  OptimizeResult out;
  out.best = spec.fixed;
  out.best.loop.t = t;
  out.best.nopa.beta = beta;
  const CriterionPoint p = evaluate_criterion(out.best);
  out.value = p.cfc;
  out.stable = p.stable;
  return out;
}

}  // namespace cfcnopa
