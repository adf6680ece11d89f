#include "cfcnopa/entanglement_criteria.hpp"

#include <string>

#include "cfcnopa/errors.hpp"

namespace cfcnopa {

std::string_view to_string(CriterionForm f) {
  switch (f) {
    case CriterionForm::kXDiffYSum: return "xdiff_ysum";
    case CriterionForm::kXSumYDiff: return "xsum_ydiff";
  }
  return "?";
}

namespace {

CriterionVerdict verdict(double value, double bare_value, CriterionForm form) {
  CriterionVerdict v;
  v.value = value;
  v.form = form;
  v.entangled = value < v.bound;
  v.enhanced_vs_bare = value < bare_value;
  return v;
}

}  // namespace

CriterionVerdicts vlf_check(const VarianceReport& report, const VarianceReport& bare) {
  if (report.n_modes != bare.n_modes) {
    throw MismatchedContext("reports disagree on mode count: " + std::to_string(report.n_modes) + " vs " +
                            std::to_string(bare.n_modes));
  }
  CriterionVerdicts out;
  out.squeezed = verdict(report.combined_squeezed, bare.combined_squeezed, CriterionForm::kXDiffYSum);
  if (report.combined_antisqueezed && bare.combined_antisqueezed) {
    out.antisqueezed =
        verdict(*report.combined_antisqueezed, *bare.combined_antisqueezed, CriterionForm::kXSumYDiff);
  }
  return out;
}

}  // namespace cfcnopa
