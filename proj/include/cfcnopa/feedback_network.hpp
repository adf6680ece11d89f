#pragma once

#include <array>

#include "cfcnopa/combinations.hpp"
#include "cfcnopa/nopa_transfer.hpp"
#include "cfcnopa/params.hpp"

namespace cfcnopa {

/// Final-output amplitudes of the closed loop for one combination:
/// c_out = coeff_c c_in + coeff_b b_in + coeff_e e_in.
struct LoopAmplitudes {
  cplx coeff_c;
  cplx coeff_b;
  cplx coeff_e;
  Combination combination = Combination::kAmplitudeDifference;

  double noise_gain() const { return std::norm(coeff_c) + std::norm(coeff_b) + std::norm(coeff_e); }
};

/// Solves the loop self-consistency
///   a_out = m a_in + n b_in,
///   a_in  = sqrt(t) c_in + sqrt(r) (sqrt(s) a_out + sqrt(l) e_in),
///   c_out = sqrt(t) (sqrt(s) a_out + sqrt(l) e_in) - sqrt(r) c_in.
/// Throws LoopUnstable when |1 - m sqrt(s r)| <= 1e-9.
LoopAmplitudes closed_loop_amplitudes(cplx m, cplx n, const LoopParams& loop,
                                      Combination combination = Combination::kAmplitudeDifference);

/// True when the closed loop around collective mode `c` has its pole in the
/// left half plane, i.e. sqrt(s r) m(0) < 1 with the bare mode stable.
bool loop_mode_stable(const NopaParams& params, const LoopParams& loop, Combination c);

/// Closed-loop correlation variances with vacuum-level noise on every input
/// (the injected coherent field included). Anti-squeezed entries are omitted
/// past the feedback-modified threshold; squeezed-pair loop failure throws
/// LoopUnstable.
VarianceReport cfc_variance(const NopaParams& params, const LoopParams& loop, AnalysisPoint at);

/// Sign placement of a real beam splitter acting on (loop input, injected
/// input) -> (output port, loop output). The loop round trip d_in -> d_out is
/// +sqrt(r) in both, as the loop phase is locked.
enum class BeamSplitterConvention {
  /// out = sqrt(T) in0 - sqrt(R) in1, loop = sqrt(R) in0 + sqrt(T) in1
  kMinusOnInjectedReflection,
  /// out = sqrt(T) in0 + sqrt(R) in1, loop = sqrt(R) in0 - sqrt(T) in1
  kMinusOnInjectedTransmission,
};

/// Real 2x2 beam splitter with power transmissivity T and R = 1 - T.
/// The constructor checks that the rows are orthonormal.
class BeamSplitter {
 public:
  BeamSplitter(double transmissivity, BeamSplitterConvention convention);

  /// Row-major {{T00, T01}, {T10, T11}}: row 0 is the output port, row 1 the
  /// loop output; column 0 the loop input, column 1 the injected input.
  const std::array<std::array<double, 2>, 2>& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_[row][col]; }

 private:
  std::array<std::array<double, 2>, 2> m_;
};

/// Independent route to the closed-loop variances: assembles the scattering
/// equations of every field {a_in, a_out, c_out, d_in, d_out} per combination
/// from the two beam splitters and the oracle NOPA transfer, and solves them
/// by a generic complex LU. Stability is judged from the eigen-structure of
/// the closed-loop drift matrix.
VarianceReport network_oracle(const NopaParams& params, const LoopParams& loop, AnalysisPoint at,
                              BeamSplitterConvention convention = BeamSplitterConvention::kMinusOnInjectedReflection);

/// Smallest beta in (0, bare threshold] where sqrt(s r) m3(omega = 0) = 1,
/// by bisection to 1e-10. beta in `params` is ignored. Returns the bare
/// threshold when feedback never destabilizes first.
double modified_threshold(const NopaParams& params, const LoopParams& loop);

}  // namespace cfcnopa
