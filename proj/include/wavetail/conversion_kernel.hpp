#pragma once

#include <optional>
#include <string>
#include <variant>

#include "wavetail/bound_algebra.hpp"

namespace wavetail {

/// kappa(lambda) records whether sum_{1<=R<~<u>} R^(1-lambda) (equivalently
/// int_0^{t-r} <y>^-lambda dy) is summable, critical, or divergent.
struct KappaSymbol {
  enum class Kind { One, Log, Power };
  Kind kind = Kind::One;
  ExtRational exponent;  // 1 - lambda, present iff kind == Power
};

/// Total: One if lambda > 1, Log if lambda == 1 exactly, Power(1-lambda)
/// if lambda < 1 (lexicographic ExtRational order, so 1+eps gives One).
KappaSymbol kappa(const ExtRational& lambda);

/// Right-hand-side majorant ln^m<t-r> <r>^-alpha <t>^-beta <t-r>^-eta
/// driving the one-dimensional reduction.
struct SourceBound {
  int m = 0;
  ExtRational alpha;
  ExtRational beta;
  ExtRational eta;

  std::string str() const;
};

/// Transfer from a source majorant on Box(psi) to a bound on <r>psi in
/// { r <= t }, as a function of <t-r> alone (log factor m carried forward,
/// Log kappas become an extra log power).
///
/// 1 < alpha < 3:
///   min( kappa(alpha-1) <u>^-(beta+eta-1), <u>^-(beta+eta+alpha-3) )
///     + kappa(eta) <u>^-(alpha+beta-2)
/// alpha > 3:
///   kappa(alpha-1) <u>^-(beta+eta-1) + kappa(eta) <u>^-(alpha+beta-2)
///
/// Throws std::domain_error for alpha <= 1 or alpha == 3 exactly (eps-free);
/// alpha = 3 + eps routes through the alpha > 3 branch.
BoundExpr convert_interior(const SourceBound& src);

/// State of the exterior-region decay bootstrap. The pattern phases encode
///   A: w <= <r>^-(1/2+Na) <t-r>^-Na
///   B: w <= <r>^-Na <t-r>^-(1/2+(N+1)a)
/// cycling A,N -> B,N -> A,N+1 -> ... (N = 0 is the pre-pattern seed state
/// w <= <r>^-1/2). Once all decay lands on <t-r>, the state enters the tail
/// phase w <= <r>^-1 <t-r>^-theta, which climbs by a per step until the
/// terminal <r>^-1 <t-r>^-(1+a).
struct ExteriorState {
  enum class Phase { A, B, Tail };
  Phase phase = Phase::A;
  int N = 0;
  ExtRational a;      // a = min(1+sigma, delta)
  ExtRational theta;  // Tail phase only

  /// Current bound on w encoded by this state.
  BoundExpr bound() const;
  std::string str() const;
};

struct FinalBound {
  ExtRational u_exponent;  // terminal bound <r>^-1 <t-r>^-u_exponent
  BoundExpr expr;
};

using ExteriorStepResult = std::variant<ExteriorState, FinalBound>;

/// One step of the exterior iteration: evaluates the phase-appropriate
/// integral with its internal case split (Na vs 1, 1/2+(N+1)a vs 1,
/// equalities perturbed by -eps) and returns the next state, or the final
/// bound min(1+a, (2N+1)a - 1/2) from A / min(1+a, 2(N+1)a - 1/2) from B
/// once Na > 1 (from the tail phase, 1+a once theta > 1).
ExteriorStepResult exterior_step(const ExteriorState& state);

/// Brute-force check of the conversion transfer: midpoint-rule quadrature of
///   iint_{D_tr} rho * ln^m<s-rho> <rho>^-alpha <s>^-beta <s-rho>^-eta ds drho
/// over the bounding box of D_tr at the given lattice resolution (>= 512
/// per axis). Summation is pairwise, so the result is reproducible to
/// 1e-12 regardless of evaluation-chunk boundaries.
double oracle_integral(const SourceBound& src, double t, double r, double eps_value,
                       int resolution = 512);

/// CSV row "alpha,beta,eta,m,t,r,value" for a computed oracle sample.
std::string oracle_csv_row(const SourceBound& src, double t, double r, double value);

}  // namespace wavetail
