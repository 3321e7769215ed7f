#pragma once

#include <cstdint>
#include <string>

namespace wavetail {

/// Membership in the light-cone integration domain
///   D_tr = { (rho, s) : 0 <= s - rho <= t - r <= s + rho <= t + r }.
/// Boundary points are included.
bool dtr_contains(double t, double r, double rho, double s);

/// Exact vertical measure |{ s : (rho, s) in D_tr }| of the rho-slice.
/// Requires 0 <= r <= t, rho >= 0. Always <= min(2*rho, 2*r, t - r).
double vertical_extent(double t, double r, double rho);

enum class RadialRegion { R1, R2, Outside };

/// Region 1: dyadic R < (t-r)/8. Region 2: (t-r)/8 <= R < t.
RadialRegion region_classify(double t, double r, double R);

/// Dyadic conical decomposition of { 1 <= r <= t } used by the norm module
/// and the covering checks. T runs over powers of 2; the radial and
/// cone-distance scales run over powers of the base a (in (2,5], default
/// a = sqrt(12) so that a^2 = (3/8)*2^5 exactly).
struct DyadicFamily {
  double base = 3.4641016151377543864;  // sqrt(12)

  static DyadicFamily with_base(double a);

  /// Unique cell containing (t, r), as a partition of { 1 <= r <= t }:
  ///   kind 'R', index -1 -> r < 2                     (R = 1 cell)
  ///   kind 'U', index -1 -> t - r < 2 and r >= 2      (U = 1 cell)
  ///   kind 'R', index k  -> a^k <= r < a^(k+1), r <= t/2
  ///   kind 'U', index k  -> a^k <= t - r < a^(k+1), r > t/2
  struct Cell {
    char kind;       // 'R' or 'U'
    int t_level;     // T = 2^t_level
    int index;
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  Cell classify(double t, double r) const;
};

enum class ConeRegionKind { CTR, CTU, CRU_ext, CTU_ext, R1, R2 };

/// A dyadic spacetime block, e.g. C_T^R = [T,2T] x {R < r < 2R}. The norm
/// module consumes the CTR kind; enlargements use a single 9/8 padding.
struct DyadicRegion {
  ConeRegionKind kind = ConeRegionKind::CTR;
  double T = 1.0;
  double R = 1.0;
  double U = 1.0;
  double base = 3.4641016151377543864;

  std::string str() const;
};

}  // namespace wavetail
