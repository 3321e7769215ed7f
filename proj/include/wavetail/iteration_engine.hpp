#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavetail/conversion_kernel.hpp"

namespace wavetail {

/// Decay classes of the model coefficients: metric/first-order terms decay
/// like <r>^-(1+sigma), the potential like <r>^-(2+delta). An absent
/// exponent disables that coefficient family (it drops out of the mins).
/// Amplitudes drive the simulator only; the symbolic layer ignores them.
struct CoefficientProfile {
  std::optional<Rational> sigma;
  std::optional<Rational> delta;
  int part = 1;
  double amp_h = 0.0;
  double amp_A = 0.0;
  double amp_V = 0.0;

  void validate() const;  // throws std::invalid_argument; requires 0 < sigma, delta < inf
};

struct TraceStep {
  std::string channel;
  int step = 0;
  SourceBound source;
  BoundExpr bound;
  std::string note;
  bool replayable = false;  // true: bound == convert_interior(source) verbatim
  std::optional<ExteriorState> ext_state;  // exterior rows: replay via exterior_step
};

struct ChannelOutcome {
  BoundExpr bound;           // final channel bound, <r>^-1 <t-r>^-exponent shape
  ExtRational u_exponent;    // exact terminal <t-r> exponent
};

struct PredictionReport {
  CoefficientProfile profile;
  BoundExpr final;  // <t+r>^-1 <t-r>^-(theorem_exponent) closed form
  std::map<std::string, BoundExpr> channel_bounds;
  std::vector<TraceStep> trace;
  Rational theorem_exponent;  // eps -> 0 standard part, exact rational
  std::vector<std::string> discrepancies;
  std::vector<std::string> notes;
};

/// <r>^-p <t>^-q <t-r>^-eta  ->  <t>^-(p+q) <t-r>^-eta, termwise on sums,
/// valid for p <= 1 (standard part). Throws std::invalid_argument if any
/// term has p > 1.
BoundExpr radial_to_temporal(const BoundExpr& expr);

enum class InteriorTarget {
  Potential,  // target min(1+sigma, delta)
  Lockstep,   // target min(sigma, delta)
};

/// Interior bootstrap in { r < t }: repeated conversion + radial-to-temporal
/// passes gaining <t-r>^-nu per step, with the threshold cases resolved via
/// n' = max{ n : 1/2 + n nu < 1 } (part one, target < 1) or the
/// nu = 1 - eps ladder with n'' = max{ n : n(1-eps) < target } (part two,
/// target >= 1). Halts at <r>^-1 <t-r>^-(1+target).
ChannelOutcome iterate_interior(const CoefficientProfile& profile, InteriorTarget target,
                                std::vector<TraceStep>& trace);

/// Near-cone channel for the metric/first-order components: seeded from the
/// cone-support reduction (first step <r>^-1 <t-r>^(1/2-q) with q = sigma
/// for part 1, q = 1+sigma for part 2), then lockstep gains of
/// min(q, delta, 1-) per step up to <r>^-1 <t-r>^-(1+min(q,delta)).
ChannelOutcome iterate_cone(const CoefficientProfile& profile, std::vector<TraceStep>& trace);

/// Exterior channel { r > t }: drives exterior_step from the reconstructed
/// seed state to its terminal bound <r>^-1 <t-r>^-(1+min(1+sigma,delta)).
ChannelOutcome iterate_exterior(const CoefficientProfile& profile,
                                std::vector<TraceStep>& trace);

/// Runs all channels, stitches the regime bounds (worst channel per regime),
/// asserts the closed-form Theorem exponent 1+min(sigma,delta) (part 1) or
/// 1+min(1+sigma,delta) (part 2), and records any mismatch as a structured
/// discrepancy. Throws std::runtime_error on channel non-termination.
PredictionReport predict(const CoefficientProfile& profile);

/// Human-readable step table for a report (one line per trace row).
std::string render_step_table(const PredictionReport& report);

}  // namespace wavetail
