#include "wavetail/le_norms.hpp"

#include <cmath>
#include <stdexcept>

namespace wavetail {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;
constexpr double kFloor = 1e-30;

double bracket(double x) { return std::sqrt(1.0 + x * x); }

struct Lattice {
  double dt, dr;
};

Lattice spacing(const DiscreteField& f) {
  return {f.t.size() > 1 ? f.t[1] - f.t[0] : 1.0, f.r[1] - f.r[0]};
}

}  // namespace

void DiscreteField::validate() const {
  if (t.empty() || r.size() < 2) throw std::invalid_argument("DiscreteField: lattice too small");
  const std::size_t n = t.size() * r.size();
  if (value.size() != n || dt.size() != n || dr.size() != n)
    throw std::invalid_argument("DiscreteField: sample arrays must match the lattice");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("DiscreteField: t must increase");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1])) throw std::invalid_argument("DiscreteField: r must increase");
}

DiscreteField DiscreteField::from_function(const std::function<double(double, double)>& f,
                                           double t1, double t2, int nt, double r_max, int nr) {
  DiscreteField out;
  const double dt = (t2 - t1) / nt;
  const double dr = r_max / nr;
  for (int i = 0; i < nt; ++i) out.t.push_back(t1 + (i + 0.5) * dt);
  for (int j = 0; j < nr; ++j) out.r.push_back((j + 0.5) * dr);
  const double eps_t = 1e-5 * std::max(1.0, dt), eps_r = 1e-5 * std::max(1.0, dr);
  for (double tv : out.t) {
    for (double rv : out.r) {
      out.value.push_back(f(tv, rv));
      out.dt.push_back((f(tv + eps_t, rv) - f(tv - eps_t, rv)) / (2 * eps_t));
      out.dr.push_back((f(tv, rv + eps_r) - f(tv, rv - eps_r)) / (2 * eps_r));
    }
  }
  return out;
}

namespace {

/// Slab x annulus L2^2 of a pointwise-squared integrand.
double annulus_l2sq(const DiscreteField& f, double r_lo, double r_hi,
                    const std::function<double(std::size_t, std::size_t)>& sq) {
  const Lattice d = spacing(f);
  double acc = 0.0;
  for (std::size_t it = 0; it < f.t.size(); ++it)
    for (std::size_t ir = 0; ir < f.r.size(); ++ir) {
      const double rv = f.r[ir];
      if (rv <= r_lo || rv >= r_hi) continue;
      acc += sq(it, ir) * kFourPi * rv * rv * d.dr * d.dt;
    }
  return acc;
}

LeReport le_single(const DiscreteField& f, LeKind kind,
                   const std::function<double(std::size_t, std::size_t)>& sq) {
  const double r_max = f.r.back();
  int below2 = 0;
  for (double rv : f.r)
    if (rv < 2.0) ++below2;
  if (below2 < 2)
    throw std::invalid_argument("le_norm: lattice too coarse to resolve the innermost annulus");

  LeReport rep;
  double sup = 0.0, sum = 0.0, last = 0.0;
  for (double R = 1.0; R <= r_max; R *= 2.0) {
    const double lo = R == 1.0 ? 0.0 : R;
    const double hi = 2.0 * R;
    auto weighted = [&](std::size_t it, std::size_t ir) {
      const double w = 1.0 / bracket(f.r[ir]);
      return kind == LeKind::LEstar ? sq(it, ir) / w : sq(it, ir) * w;
    };
    const double piece = std::sqrt(annulus_l2sq(f, lo, hi, weighted));
    sup = std::max(sup, piece);
    sum += piece;
    last = piece;
    ++rep.annuli;
  }
  rep.value = kind == LeKind::LEstar ? sum : sup;
  rep.truncated = kind == LeKind::LEstar && sum > 0 && last >= 0.1 * sum;
  return rep;
}

}  // namespace

LeReport le_norm_report(const DiscreteField& field, LeKind kind) {
  field.validate();
  auto vsq = [&](std::size_t it, std::size_t ir) {
    const double v = field.value[it * field.r.size() + ir];
    return v * v;
  };
  if (kind == LeKind::LE || kind == LeKind::LEstar) return le_single(field, kind, vsq);

  // LE1 = LE(d u) + LE(<r>^-1 u).
  auto dsq = [&](std::size_t it, std::size_t ir) {
    const std::size_t k = it * field.r.size() + ir;
    return field.dt[k] * field.dt[k] + field.dr[k] * field.dr[k];
  };
  auto wsq = [&](std::size_t it, std::size_t ir) {
    const std::size_t k = it * field.r.size() + ir;
    const double b = bracket(field.r[ir]);
    return field.value[k] * field.value[k] / (b * b);
  };
  LeReport a = le_single(field, LeKind::LE, dsq);
  LeReport b = le_single(field, LeKind::LE, wsq);
  LeReport rep;
  rep.value = a.value + b.value;
  rep.annuli = a.annuli;
  return rep;
}

double le_norm(const DiscreteField& field, LeKind kind) { return le_norm_report(field, kind).value; }

HardyReport hardy_check(const DiscreteField& field, double gamma) {
  field.validate();
  if (!(gamma > 1.0) || gamma == 3.0)
    throw std::invalid_argument("hardy_check: requires gamma > 1 and gamma != 3");
  const Lattice d = spacing(field);
  HardyReport rep;
  for (std::size_t it = 0; it < field.t.size(); ++it) {
    double num = 0.0, den = 0.0;
    for (std::size_t ir = 0; ir < field.r.size(); ++ir) {
      const std::size_t k = it * field.r.size() + ir;
      const double rv = field.r[ir];
      const double bu = bracket(field.t[it] - rv);
      const double meas = kFourPi * rv * rv * d.dr;
      num += field.value[k] * field.value[k] * std::pow(bu, -gamma) * meas;
      den += field.dr[k] * field.dr[k] * std::pow(bu, -(gamma - 2.0)) * meas;
    }
    if (den < kFloor)
      throw std::invalid_argument("hardy_check: radial derivative below the noise floor");
    rep.per_t.push_back(num / den);
    rep.max_ratio = std::max(rep.max_ratio, num / den);
  }
  return rep;
}

DyadicH1Report dyadic_h1_check(const DiscreteField& field, const ModelEquation& eq,
                               const DyadicRegion& region) {
  field.validate();
  if (region.kind != ConeRegionKind::CTR)
    throw std::invalid_argument("dyadic_h1_check: region must be of kind CTR");
  const double T = region.T, R = region.R;
  if (!(R >= 1.0) || R > 3.0 * T / 8.0)
    throw std::invalid_argument("dyadic_h1_check: needs 1 <= R <= 3T/8");
  const double pad = 9.0 / 8.0;
  const double r_lo = R == 1.0 ? 0.0 : R, r_hi = 2.0 * R;
  const double tr_lo = r_lo / pad, tr_hi = r_hi * pad;
  const double tt_lo = T / pad, tt_hi = 2.0 * T * pad;
  const Lattice d = spacing(field);
  const std::size_t nr = field.r.size();
  if (field.t.front() > tt_lo || field.t.back() < tt_hi || field.r.back() < tr_hi)
    throw std::invalid_argument("dyadic_h1_check: region (with enlargement) outside lattice");

  double lhs = 0.0, w1 = 0.0, pw = 0.0;
  for (std::size_t it = 1; it + 1 < field.t.size(); ++it) {
    const double tv = field.t[it];
    for (std::size_t ir = 1; ir + 1 < nr; ++ir) {
      const double rv = field.r[ir];
      const std::size_t k = it * nr + ir;
      const double meas = kFourPi * rv * rv * d.dr * d.dt;
      const double grad_sq = field.dt[k] * field.dt[k] + field.dr[k] * field.dr[k];
      if (tv > T && tv < 2 * T && rv > r_lo && rv < r_hi) lhs += grad_sq * meas;
      if (tv > tt_lo && tv < tt_hi && rv > tr_lo && rv < tr_hi) {
        const double v = field.value[k];
        const double sw = tv * field.dt[k] + rv * field.dr[k];
        w1 += (v * v + grad_sq + sw * sw) * meas;  // Omega w = 0 in spherical symmetry
        // P w by centered second differences on the value lattice.
        const double wtt =
            (field.value[(it + 1) * nr + ir] - 2 * v + field.value[(it - 1) * nr + ir]) /
            (d.dt * d.dt);
        const double wrr = (field.value[k + 1] - 2 * v + field.value[k - 1]) / (d.dr * d.dr);
        const double wr = field.dr[k];
        double pval = -wtt + wrr + 2.0 / rv * wr -
                      (eq.potential(rv) + eq.metric_term(rv) / (1.0 + rv * rv)) * v;
        if (eq.ell > 0) pval -= eq.ell * (eq.ell + 1) / (rv * rv) * v;
        pval += eq.first_order(rv) * field.dr[k];
        pw += pval * pval * meas;
      }
    }
  }
  DyadicH1Report rep;
  rep.lhs = R * std::sqrt(lhs);
  rep.rhs = std::sqrt(w1) + R * R * std::sqrt(pw);
  if (rep.lhs < kFloor && rep.rhs < kFloor) {
    rep.degenerate = true;
    return rep;
  }
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

DiscreteField field_from_slices(const FieldSlices& slices, double t_lo, double t_hi,
                                double r_max, int step_mult) {
  if (slices.stride != 1)
    throw std::invalid_argument("field_from_slices: slices must retain every row (stride 1)");
  if (step_mult < 1) throw std::invalid_argument("field_from_slices: step_mult must be >= 1");
  const double h = slices.h;
  const double step = step_mult * h;

  // psi(t, r) = phi(u, v)/r at u = t - r, v = t + r; nodes land on grid
  // diagonals because t and r are multiples of h.
  auto phi_at = [&](long iu, long iv) -> double {
    if (iu < 0 || iv < 0 || iv > slices.n_v) throw std::invalid_argument("field_from_slices: node outside grid");
    const std::size_t k = static_cast<std::size_t>(iu);
    if (k >= slices.rows.size() || slices.row_index[k] != iu)
      throw std::invalid_argument("field_from_slices: node outside retained rows");
    return slices.rows[k][iv];
  };
  auto psi = [&](long it, long ir) -> double {
    const double r = ir * step;
    return phi_at(it * step_mult - ir * step_mult, it * step_mult + ir * step_mult) / r;
  };

  const long it_lo = std::lround(t_lo / step), it_hi = std::lround(t_hi / step);
  const long nr = std::lround(r_max / step);
  DiscreteField out;
  for (long it = it_lo; it <= it_hi; ++it) out.t.push_back(it * step);
  for (long ir = 1; ir <= nr; ++ir) out.r.push_back(ir * step);
  for (long it = it_lo; it <= it_hi; ++it) {
    for (long ir = 1; ir <= nr; ++ir) {
      out.value.push_back(psi(it, ir));
      out.dt.push_back((psi(it + 1, ir) - psi(it - 1, ir)) / (2 * step));
      double drv;
      if (ir == 1)
        drv = (psi(it, 2) - psi(it, 1)) / step;  // one-sided at the lattice edges
      else if (ir == nr)
        drv = (psi(it, nr) - psi(it, nr - 1)) / step;
      else
        drv = (psi(it, ir + 1) - psi(it, ir - 1)) / (2 * step);
      out.dr.push_back(drv);
    }
  }
  return out;
}

}  // namespace wavetail
