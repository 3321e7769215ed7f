#pragma once

#include <string>
#include <vector>

#include "wavetail/rational.hpp"

namespace wavetail {

/// One majorant factor ln^m<t-r> * <r>^-alpha * <t+r>^-beta * <t-r>^-eta,
/// with <x> = (1+x^2)^(1/2). Within an iteration channel the beta slot may
/// be read against <t> instead of <t+r>; the channel records which (they
/// agree up to constants in the interior regime r <= t). Numeric evaluation
/// here always uses <t+r>.
struct DecayTerm {
  int m = 0;          // log power on <t-r>
  ExtRational alpha;  // exponent on <r>
  ExtRational beta;   // exponent on <t+r> (or <t>, regime-dependent)
  ExtRational eta;    // exponent on <t-r>

  double value(double t, double r, double eps_value) const;
  double log_value(double t, double r, double eps_value) const;

  /// Asymptotic total decay order along t-r -> infinity with r/t fixed.
  ExtRational total_order() const { return alpha + beta + eta; }

  std::string str() const;

  friend bool operator==(const DecayTerm& a, const DecayTerm& b) {
    return a.m == b.m && a.alpha == b.alpha && a.beta == b.beta && a.eta == b.eta;
  }
};

/// Pointwise minimum over its terms.
struct MinGroup {
  std::vector<DecayTerm> terms;

  friend bool operator==(const MinGroup&, const MinGroup&) = default;
};

/// Sum of min-groups: value(t,r) = sum_g min_{term in g} term.value(t,r).
struct BoundExpr {
  std::vector<MinGroup> groups;

  friend bool operator==(const BoundExpr&, const BoundExpr&) = default;

  static BoundExpr single(DecayTerm term) {
    BoundExpr e;
    e.groups.push_back(MinGroup{{std::move(term)}});
    return e;
  }

  bool log_free() const;
  std::string str() const;

  /// Largest asymptotic term: the sum-group minimum with the smallest total
  /// decay order (ties broken toward more logs). This is what the final
  /// reported exponents are read from.
  DecayTerm dominant() const;
};

enum class CombineKind { Sum, Min };

/// Pointwise sum or min of the parts; result normalized.
BoundExpr combine(CombineKind kind, const std::vector<BoundExpr>& parts);

/// Removes, inside each min-group, terms that another term of the group
/// dominates pointwise: equal log power and componentwise >= exponents
/// (bases <x> are >= 1, so larger exponents mean a smaller value everywhere).
/// Value-preserving: the removed term is never the group minimum.
BoundExpr normalize(BoundExpr expr);

/// Exact semantic value with eps instantiated numerically.
/// Preconditions: t >= 0, r >= 0, 0 < eps_value <= 1/100.
double evaluate(const BoundExpr& expr, double t, double r, double eps_value);

/// log of evaluate, computed without underflow (for far-asymptotic checks).
double evaluate_log(const BoundExpr& expr, double t, double r, double eps_value);

/// Replaces every term carrying ln^m<t-r> (m >= 1) by the log-free term with
/// eta weakened by m*eps: ln^m<u> <u>^-eta <= C <u>^-(eta - m*eps) once
/// <u>^eps outgrows ln<u>. Output dominates input for t-r beyond the
/// crossing point of x^eps vs ln x.
BoundExpr absorb_log(BoundExpr expr);

}  // namespace wavetail
