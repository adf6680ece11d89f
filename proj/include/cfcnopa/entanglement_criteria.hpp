#pragma once

#include <optional>
#include <string_view>

#include "cfcnopa/combinations.hpp"

namespace cfcnopa {

enum class CriterionForm {
  kXDiffYSum,  ///< V(X_i - X_j) + V(sum Y)
  kXSumYDiff,  ///< V(sum X) + V(Y_i - Y_j)
};

std::string_view to_string(CriterionForm f);

struct CriterionVerdict {
  double value = 0.0;
  double bound = VarianceReport::kCriterionBound;
  CriterionForm form = CriterionForm::kXDiffYSum;
  bool entangled = false;         // value < bound, strictly
  bool enhanced_vs_bare = false;  // value < bare value, strictly
};

struct CriterionVerdicts {
  CriterionVerdict squeezed;
  /// Absent when either report lacks its anti-squeezed pair.
  std::optional<CriterionVerdict> antisqueezed;

  bool any_entangled() const { return squeezed.entangled || (antisqueezed && antisqueezed->entangled); }
};

/// Multipartite inseparability test of both inequality forms.
/// Throws MismatchedContext when the reports' mode counts differ.
CriterionVerdicts vlf_check(const VarianceReport& report, const VarianceReport& bare);

}  // namespace cfcnopa
