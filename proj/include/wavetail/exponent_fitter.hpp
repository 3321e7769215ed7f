#pragma once

#include <vector>

#include "wavetail/wave_simulator.hpp"

namespace wavetail {

struct FitResult {
  double exponent = 0.0;  // -slope of log|value| vs log(param)
  double stderr_ = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n_points = 0;
  bool oscillatory = false;  // fitted on the envelope of |local maxima|
};

struct FitWindow {
  double t_lo;
  double t_hi;
};

/// Default window: the last decade of the series' parameter range.
FitWindow default_window(const Series& series);

/// Least-squares slope of log|value| vs log(param) over the window. Points
/// with |value| <= 1e-14 are discarded (machine-noise floor); sign-changing
/// series are fitted on the envelope of |local maxima| with the oscillatory
/// flag set. Requires >= 8 usable points.
FitResult fit_exponent(const Series& series, const FitWindow& window);

/// Instantaneous exponent p(t) = -d log|value| / d log t by centered
/// differences; output series has length input - 2.
Series local_exponent(const Series& series);

}  // namespace wavetail
