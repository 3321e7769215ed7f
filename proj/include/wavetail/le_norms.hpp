#pragma once

#include <functional>
#include <vector>

#include "wavetail/region_geometry.hpp"
#include "wavetail/wave_simulator.hpp"

namespace wavetail {

/// Spherically symmetric field sampled on a regular (t, r) lattice over a
/// slab [T1, T2], with first-derivative samples. All integrals below use
/// the spherical measure 4 pi r^2 dr and midpoint quadrature in (t, r).
struct DiscreteField {
  std::vector<double> t;   // strictly increasing, uniform
  std::vector<double> r;   // strictly increasing, uniform
  std::vector<double> value, dt, dr;  // row-major [it * r.size() + ir]

  double at(std::size_t it, std::size_t ir) const { return value[it * r.size() + ir]; }
  void validate() const;

  static DiscreteField from_function(const std::function<double(double, double)>& f, double t1,
                                     double t2, int nt, double r_max, int nr);
};

enum class LeKind { LE, LE1, LEstar };

struct LeReport {
  double value = 0.0;
  int annuli = 0;
  bool truncated = false;  // outermost annulus still contributes >= 10% (LE*)
};

/// Local-energy norms over dyadic annuli A_1 = {r<2}, A_R = {R<r<2R}
/// (R = 2^k): LE takes sup_R of the <r>^-1/2-weighted L^2, LE1 adds the
/// derivative and <r>^-1 pieces, LE* sums <r>^1/2-weighted L^2 over R.
/// Requires the lattice to resolve A_1 (>= 2 radial points below r = 2).
double le_norm(const DiscreteField& field, LeKind kind);
LeReport le_norm_report(const DiscreteField& field, LeKind kind);

struct HardyReport {
  double max_ratio = 0.0;
  std::vector<double> per_t;  // ratio at each lattice time
};

/// max over t of  int f^2 <t-r>^-gamma dx / int (d_r f)^2 <t-r>^-(gamma-2) dx;
/// a finite ratio witnesses the weighted Hardy inequality instance.
/// Requires gamma > 1, gamma != 3, and a nontrivial radial derivative.
HardyReport hardy_check(const DiscreteField& field, double gamma);

struct DyadicH1Report {
  double ratio = 0.0;
  bool degenerate = false;  // 0/0 (zero field)
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Ratio  R ||d w||_{L2(C_T^R)} / ( ||w_{<=1}||_{L2(~C_T^R)} + R^2 ||P w||_{L2(~C_T^R)} )
/// on the block C_T^R = [T,2T] x {R<r<2R}, enlargement ~C = 9/8 padding.
/// w_{<=1} holds w, its (t,r) derivatives and Sw = t w_t + r w_r; the
/// spherical rotations vanish identically and are recorded as 0. P w is
/// formed from the model equation by centered finite differences.
DyadicH1Report dyadic_h1_check(const DiscreteField& field, const ModelEquation& eq,
                               const DyadicRegion& region);

/// Bridges the simulator output to a (t, r) lattice of the physical field
/// psi = phi/r. Lattice spacing is step_mult * h so every node falls on a
/// grid diagonal; requires the slices to retain every row (stride 1).
/// Derivative samples are centered differences at the lattice spacing.
DiscreteField field_from_slices(const FieldSlices& slices, double t_lo, double t_hi,
                                double r_max, int step_mult);

}  // namespace wavetail
