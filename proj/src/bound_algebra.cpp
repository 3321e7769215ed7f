#include "wavetail/bound_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wavetail {

namespace {

double log_bracket(double x) {
  const double ax = std::abs(x);
  if (ax > 1e8) return std::log(ax) + 0.5 * std::log1p(1.0 / (ax * ax));
  return 0.5 * std::log1p(x * x);
}

void check_eval_args(double t, double r, double eps_value) {
  if (!(t >= 0.0) || !(r >= 0.0))
    throw std::invalid_argument("evaluate: t and r must be nonnegative");
  if (!(eps_value > 0.0) || !(eps_value <= 0.01))
    throw std::invalid_argument("evaluate: eps_value must lie in (0, 1/100]");
}

}  // namespace

double DecayTerm::value(double t, double r, double eps_value) const {
  return std::exp(log_value(t, r, eps_value));
}

double DecayTerm::log_value(double t, double r, double eps_value) const {
  const double lu = log_bracket(t - r);
  double lv = -alpha.to_double(eps_value) * log_bracket(r) -
              beta.to_double(eps_value) * log_bracket(t + r) - eta.to_double(eps_value) * lu;
  if (m > 0) {
    if (lu == 0.0) return -std::numeric_limits<double>::infinity();  // ln<0> = 0 kills the term
    lv += m * std::log(lu);
  }
  return lv;
}

std::string DecayTerm::str() const {
  std::ostringstream os;
  if (m == 1)
    os << "ln<u> ";
  else if (m > 1)
    os << "ln^" << m << "<u> ";
  bool any = false;
  auto emit = [&](const char* base, const ExtRational& e) {
    if (e == ExtRational(0)) return;
    os << base << "^-(" << e.str() << ") ";
    any = true;
  };
  emit("<r>", alpha);
  emit("<t+r>", beta);
  emit("<u>", eta);
  if (!any && m == 0) os << "1 ";
  std::string s = os.str();
  if (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

bool BoundExpr::log_free() const {
  for (const auto& g : groups)
    for (const auto& t : g.terms)
      if (t.m > 0) return false;
  return true;
}

std::string BoundExpr::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) os << " + ";
    const auto& g = groups[i];
    if (g.terms.size() > 1) {
      os << "min(";
      for (std::size_t j = 0; j < g.terms.size(); ++j) {
        if (j) os << ", ";
        os << g.terms[j].str();
      }
      os << ")";
    } else {
      os << g.terms.front().str();
    }
  }
  return os.str();
}

DecayTerm BoundExpr::dominant() const {
  if (groups.empty()) throw std::invalid_argument("BoundExpr::dominant: empty expression");
  // Within each min-group the asymptotically smallest term represents the
  // group; across the sum the largest group wins.
  auto asym_less = [](const DecayTerm& a, const DecayTerm& b) {
    if (a.total_order() != b.total_order()) return b.total_order() < a.total_order();
    return a.m < b.m;
  };
  DecayTerm result;
  bool have = false;
  for (const auto& g : groups) {
    DecayTerm rep = g.terms.front();
    for (const auto& t : g.terms)
      if (asym_less(t, rep)) rep = t;
    if (!have || asym_less(result, rep)) {
      result = rep;
      have = true;
    }
  }
  return result;
}

BoundExpr normalize(BoundExpr expr) {
  for (auto& g : expr.groups) {
    std::vector<DecayTerm> kept;
    for (std::size_t i = 0; i < g.terms.size(); ++i) {
      const DecayTerm& b = g.terms[i];
      bool dominated = false;
      for (std::size_t j = 0; j < g.terms.size() && !dominated; ++j) {
        if (i == j) continue;
        const DecayTerm& a = g.terms[j];
        if (a.m != b.m) continue;
        if (a.alpha >= b.alpha && a.beta >= b.beta && a.eta >= b.eta) {
          if (a == b) {
            dominated = j < i;  // exact duplicates: keep the first
          } else {
            dominated = true;
          }
        }
      }
      if (!dominated) kept.push_back(b);
    }
    g.terms = std::move(kept);
  }
  return expr;
}

BoundExpr combine(CombineKind kind, const std::vector<BoundExpr>& parts) {
  if (parts.empty()) throw std::invalid_argument("combine: parts must be nonempty");
  BoundExpr out;
  if (kind == CombineKind::Sum) {
    for (const auto& p : parts)
      for (const auto& g : p.groups) out.groups.push_back(g);
  } else {
    // min of sums: exact only when every part is a single min-group;
    // otherwise each part is over-approximated by itself and the min is
    // taken groupwise, which stays an upper bound. The iteration only ever
    // forms mins of single-group expressions.
    MinGroup merged;
    for (const auto& p : parts) {
      if (p.groups.size() == 1) {
        for (const auto& t : p.groups.front().terms) merged.terms.push_back(t);
      } else {
        throw std::invalid_argument("combine(min): parts must be single min-groups");
      }
    }
    out.groups.push_back(std::move(merged));
  }
  return normalize(std::move(out));
}

double evaluate(const BoundExpr& expr, double t, double r, double eps_value) {
  check_eval_args(t, r, eps_value);
  double total = 0.0;
  for (const auto& g : expr.groups) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& term : g.terms) m = std::min(m, term.value(t, r, eps_value));
    total += m;
  }
  return total;
}

double evaluate_log(const BoundExpr& expr, double t, double r, double eps_value) {
  check_eval_args(t, r, eps_value);
  // log-sum-exp over groups of the groupwise min of log-values.
  std::vector<double> logs;
  logs.reserve(expr.groups.size());
  for (const auto& g : expr.groups) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& term : g.terms) m = std::min(m, term.log_value(t, r, eps_value));
    logs.push_back(m);
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (double l : logs) peak = std::max(peak, l);
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - peak);
  return peak + std::log(acc);
}

BoundExpr absorb_log(BoundExpr expr) {
  for (auto& g : expr.groups) {
    for (auto& term : g.terms) {
      if (term.m > 0) {
        term.eta = term.eta - Rational(term.m) * ExtRational::eps();
        term.m = 0;
      }
    }
  }
  return normalize(std::move(expr));
}

}  // namespace wavetail
