#include "wavetail/region_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavetail {

bool dtr_contains(double t, double r, double rho, double s) {
  if (t < 0 || r < 0 || rho < 0 || s < 0)
    throw std::invalid_argument("dtr_contains: arguments must be nonnegative");
  const double d = s - rho;
  return 0.0 <= d && d <= t - r && t - r <= s + rho && s + rho <= t + r;
}

double vertical_extent(double t, double r, double rho) {
  if (!(0 <= r && r <= t)) throw std::invalid_argument("vertical_extent: needs 0 <= r <= t");
  if (rho < 0) throw std::invalid_argument("vertical_extent: rho must be nonnegative");
  // Slice of D_tr at fixed rho: s in [max(rho, t-r-rho), min(rho + (t-r), t+r-rho)].
  const double lo = std::max(rho, (t - r) - rho);
  const double hi = std::min(rho + (t - r), (t + r) - rho);
  return std::max(0.0, hi - lo);
}

RadialRegion region_classify(double t, double r, double R) {
  if (R < 1.0) throw std::invalid_argument("region_classify: R must be a dyadic >= 1");
  if (!(0 <= r && r <= t)) throw std::invalid_argument("region_classify: needs 0 <= r <= t");
  if (R < (t - r) / 8.0) return RadialRegion::R1;
  if (R < t) return RadialRegion::R2;
  return RadialRegion::Outside;
}

DyadicFamily DyadicFamily::with_base(double a) {
  if (!(a > 2.0 && a <= 5.0))
    throw std::invalid_argument("DyadicFamily: base must lie in (2, 5]");
  DyadicFamily f;
  f.base = a;
  return f;
}

DyadicFamily::Cell DyadicFamily::classify(double t, double r) const {
  if (!(t >= 1.0) || !(r >= 0.0) || r > t)
    throw std::invalid_argument("DyadicFamily::classify: needs 1 <= t, 0 <= r <= t");
  Cell c{};
  c.t_level = static_cast<int>(std::floor(std::log2(t)));
  if (r < 2.0) {
    c.kind = 'R';
    c.index = -1;
    return c;
  }
  if (t - r < 2.0) {
    c.kind = 'U';
    c.index = -1;
    return c;
  }
  if (r <= t / 2.0) {
    c.kind = 'R';
    c.index = static_cast<int>(std::floor(std::log(r) / std::log(base)));
  } else {
    c.kind = 'U';
    c.index = static_cast<int>(std::floor(std::log(t - r) / std::log(base)));
  }
  return c;
}

std::string DyadicRegion::str() const {
  std::ostringstream os;
  switch (kind) {
    case ConeRegionKind::CTR: os << "C_T^R(T=" << T << ",R=" << R << ")"; break;
    case ConeRegionKind::CTU: os << "C_T^U(T=" << T << ",U=" << U << ")"; break;
    case ConeRegionKind::CRU_ext: os << "C^R_U(R=" << R << ",U=" << U << ")"; break;
    case ConeRegionKind::CTU_ext: os << "C^T_U(T=" << T << ",U=" << U << ")"; break;
    case ConeRegionKind::R1: os << "Region1"; break;
    case ConeRegionKind::R2: os << "Region2"; break;
  }
  return os.str();
}

}  // namespace wavetail
