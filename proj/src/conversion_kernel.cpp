#include "wavetail/conversion_kernel.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wavetail/region_geometry.hpp"

namespace wavetail {

namespace {

const ExtRational kOne(Rational(1));
const ExtRational kHalf(Rational(1, 2));

/// Comparison against 1 with the equality case perturbed by -eps, mirroring
/// how the omitted threshold cases reduce to the strict ones.
bool above_one_perturbed(const ExtRational& x) {
  if (x == kOne) return false;
  return x > kOne;
}

/// kappa(lambda) applied to a base term <u>^-(decay): One leaves it, Log
/// increments the log power, Power weakens the decay by 1-lambda.
DecayTerm apply_kappa(const KappaSymbol& k, int m, const ExtRational& u_decay) {
  DecayTerm t;
  t.m = m;
  t.eta = u_decay;
  switch (k.kind) {
    case KappaSymbol::Kind::One:
      break;
    case KappaSymbol::Kind::Log:
      t.m += 1;
      break;
    case KappaSymbol::Kind::Power:
      t.eta = t.eta - k.exponent;
      break;
  }
  return t;
}

double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += xs[i];
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

}  // namespace

KappaSymbol kappa(const ExtRational& lambda) {
  KappaSymbol k;
  if (lambda > kOne) {
    k.kind = KappaSymbol::Kind::One;
  } else if (lambda == kOne) {
    k.kind = KappaSymbol::Kind::Log;
  } else {
    k.kind = KappaSymbol::Kind::Power;
    k.exponent = kOne - lambda;
  }
  return k;
}

std::string SourceBound::str() const {
  std::ostringstream os;
  if (m > 0) os << "ln^" << m << "<u> ";
  os << "<r>^-(" << alpha.str() << ") <t>^-(" << beta.str() << ") <u>^-(" << eta.str() << ")";
  return os.str();
}

BoundExpr convert_interior(const SourceBound& src) {
  if (src.beta.std() < Rational(0))
    throw std::invalid_argument("convert_interior: beta must be nonnegative");
  const ExtRational& a = src.alpha;
  if (a <= kOne)
    throw std::domain_error("convert_interior: unsupported branch alpha <= 1");
  if (a == ExtRational(Rational(3)))
    throw std::domain_error("convert_interior: unsupported branch alpha == 3");

  const ExtRational region1_crude = src.beta + src.eta - kOne;       // kappa(alpha-1) route
  const ExtRational region2_decay = a + src.beta - ExtRational(2);   // kappa(eta) route
  DecayTerm r1_crude = apply_kappa(kappa(a - kOne), src.m, region1_crude);
  DecayTerm r2 = apply_kappa(kappa(src.eta), src.m, region2_decay);

  BoundExpr out;
  if (a < ExtRational(Rational(3))) {
    DecayTerm r1_sharp;  // area-counted Region 1 route, valid only for alpha < 3
    r1_sharp.m = src.m;
    r1_sharp.eta = src.beta + src.eta + a - ExtRational(3);
    out.groups.push_back(MinGroup{{r1_crude, r1_sharp}});
  } else {
    out.groups.push_back(MinGroup{{r1_crude}});
  }
  out.groups.push_back(MinGroup{{r2}});
  return normalize(std::move(out));
}

BoundExpr ExteriorState::bound() const {
  DecayTerm t;
  switch (phase) {
    case Phase::A:
      t.alpha = kHalf + Rational(N) * a;
      t.eta = Rational(N) * a;
      break;
    case Phase::B:
      t.alpha = Rational(N) * a;
      t.eta = kHalf + Rational(N + 1) * a;
      break;
    case Phase::Tail:
      t.alpha = kOne;
      t.eta = theta;
      break;
  }
  return BoundExpr::single(t);
}

std::string ExteriorState::str() const {
  std::ostringstream os;
  switch (phase) {
    case Phase::A: os << "A(N=" << N << ")"; break;
    case Phase::B: os << "B(N=" << N << ")"; break;
    case Phase::Tail: os << "Tail(theta=" << theta.str() << ")"; break;
  }
  return os.str();
}

ExteriorStepResult exterior_step(const ExteriorState& state) {
  if (!(state.a.std() > Rational(0)))
    throw std::invalid_argument("exterior_step: a must have positive standard part");
  const ExtRational cap = kOne + state.a;
  auto final_bound = [&](ExtRational raw) {
    FinalBound f;
    f.u_exponent = min(cap, raw);
    DecayTerm t;
    t.alpha = kOne;
    t.eta = f.u_exponent;
    f.expr = BoundExpr::single(t);
    return f;
  };

  const ExtRational Na = Rational(state.N) * state.a;
  switch (state.phase) {
    case ExteriorState::Phase::A: {
      if (above_one_perturbed(Na))
        return final_bound(Rational(2L * state.N + 1) * state.a - kHalf);
      ExteriorState next = state;
      next.phase = ExteriorState::Phase::B;
      return next;
    }
    case ExteriorState::Phase::B: {
      if (above_one_perturbed(Na))
        return final_bound(Rational(2L * (state.N + 1)) * state.a - kHalf);
      const ExtRational half_split = kHalf + Rational(state.N + 1) * state.a;
      if (above_one_perturbed(half_split)) {
        // All decay lands on <t-r>: enter the tail loop.
        ExteriorState next = state;
        next.phase = ExteriorState::Phase::Tail;
        next.theta = Rational(2L * (state.N + 1)) * state.a - kHalf;
        return next;
      }
      ExteriorState next = state;
      next.phase = ExteriorState::Phase::A;
      next.N += 1;
      return next;
    }
    case ExteriorState::Phase::Tail: {
      if (above_one_perturbed(state.theta)) return final_bound(cap);
      ExtRational theta = state.theta;
      if (theta == kOne) theta = theta - ExtRational::eps();
      // rho-integration yields <u>^-(1+a); the s-integration contributes
      // kappa(theta) = <u>^(1-theta).
      ExteriorState next = state;
      next.theta = state.a + theta;
      return next;
    }
  }
  throw std::runtime_error("exterior_step: unreachable");
}

double oracle_integral(const SourceBound& src, double t, double r, double eps_value,
                       int resolution) {
  if (resolution < 512)
    throw std::invalid_argument("oracle_integral: resolution must be >= 512 per axis");
  if (!(t >= 0) || !(r >= 0) || r > t)
    throw std::invalid_argument("oracle_integral: needs 0 <= r <= t");
  if (t == r) return 0.0;  // D_tr degenerates to the measure-zero slab s = rho

  const double alpha = src.alpha.to_double(eps_value);
  const double beta = src.beta.to_double(eps_value);
  const double eta = src.eta.to_double(eps_value);

  // Bounding box of D_tr: rho in [0, (t+r)/2], s in [0, t+r].
  const double rho_max = 0.5 * (t + r);
  const double s_max = t + r;
  const int n = resolution;
  const double drho = rho_max / n;
  const double ds = s_max / n;

  std::vector<double> row_sums(n);
  std::vector<double> cells;
  cells.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double rho = (i + 0.5) * drho;
    cells.clear();
    for (int j = 0; j < n; ++j) {
      const double s = (j + 0.5) * ds;
      if (!dtr_contains(t, r, rho, s)) continue;
      const double u = s - rho;
      const double bu = std::sqrt(1.0 + u * u);
      double val = rho * std::pow(1.0 + rho * rho, -0.5 * alpha) *
                   std::pow(1.0 + s * s, -0.5 * beta) * std::pow(bu, -eta);
      if (src.m > 0) val *= std::pow(std::log(bu), src.m);
      cells.push_back(val);
    }
    row_sums[i] = pairwise_sum(cells, 0, cells.size());
  }
  return pairwise_sum(row_sums, 0, row_sums.size()) * drho * ds;
}

std::string oracle_csv_row(const SourceBound& src, double t, double r, double value) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%s,%s,%d,%.17g,%.17g,%.17g", src.alpha.str().c_str(),
                src.beta.str().c_str(), src.eta.str().c_str(), src.m, t, r, value);
  return buf;
}

}  // namespace wavetail
