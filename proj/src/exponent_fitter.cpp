#include "wavetail/exponent_fitter.hpp"

#include <cmath>
#include <stdexcept>

namespace wavetail {

namespace {

constexpr double kNoiseFloor = 1e-14;

}  // namespace

FitWindow default_window(const Series& series) {
  if (series.param.empty()) throw std::invalid_argument("default_window: empty series");
  const double t_hi = series.param.back();
  return FitWindow{t_hi / 10.0, t_hi};
}

FitResult fit_exponent(const Series& series, const FitWindow& window) {
  if (series.param.size() != series.value.size())
    throw std::invalid_argument("fit_exponent: mismatched series lengths");
  if (!(window.t_lo < window.t_hi))
    throw std::invalid_argument("fit_exponent: window needs t_lo < t_hi");

  std::vector<double> ts, vs;
  bool sign_change = false;
  double last_sign = 0.0;
  for (std::size_t i = 0; i < series.param.size(); ++i) {
    const double t = series.param[i], v = series.value[i];
    if (t < window.t_lo || t > window.t_hi) continue;
    if (!(t > 0) || std::abs(v) <= kNoiseFloor) continue;
    const double s = v > 0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && s != last_sign) sign_change = true;
    last_sign = s;
    ts.push_back(t);
    vs.push_back(std::abs(v));
  }

  FitResult res;
  res.t_lo = window.t_lo;
  res.t_hi = window.t_hi;
  if (sign_change) {
    // Oscillatory tail: fit on the envelope of local maxima of |value|.
    std::vector<double> et, ev;
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
      if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1]) {
        et.push_back(ts[i]);
        ev.push_back(vs[i]);
      }
    }
    ts = std::move(et);
    vs = std::move(ev);
    res.oscillatory = true;
  }
  const std::size_t n = ts.size();
  if (n < 8) throw std::invalid_argument("fit_exponent: fewer than 8 usable points in window");

  double sx = 0, sy = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(ts[i]);
    ys[i] = std::log(vs[i]);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_exponent: degenerate abscissae");
  const double slope = sxy / sxx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - my - slope * (xs[i] - mx);
    ss_res += r * r;
  }
  res.exponent = -slope;
  res.n_points = static_cast<int>(n);
  res.stderr_ = n > 2 ? std::sqrt(ss_res / (double(n) - 2.0) / sxx) : 0.0;
  res.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return res;
}

Series local_exponent(const Series& series) {
  const std::size_t n = series.param.size();
  if (n < 3) throw std::invalid_argument("local_exponent: needs at least 3 points");
  Series out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double vm = std::abs(series.value[i - 1]);
    const double vp = std::abs(series.value[i + 1]);
    if (vm <= kNoiseFloor || vp <= kNoiseFloor)
      throw std::invalid_argument("local_exponent: value at/below the noise floor");
    const double dlogt = std::log(series.param[i + 1]) - std::log(series.param[i - 1]);
    out.param.push_back(series.param[i]);
    out.value.push_back(-(std::log(vp) - std::log(vm)) / dlogt);
  }
  return out;
}

}  // namespace wavetail
