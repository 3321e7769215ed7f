#include "wavetail/wave_simulator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavetail {

namespace {

double bracket_pow(double r, double exponent) {
  // <r>^-exponent
  return std::pow(1.0 + r * r, -0.5 * exponent);
}

int exact_steps(double span, double h, const char* what) {
  const double q = span / h;
  const double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-9 * std::max(1.0, q) || rounded < 1)
    throw std::invalid_argument(std::string("GridSpec: ") + what + "/h must be a positive integer");
  return static_cast<int>(rounded);
}

}  // namespace

void GridSpec::validate() const {
  if (!(h > 0)) throw std::invalid_argument("GridSpec: h must be positive");
  if (!(u_min < u_max) || !(u_max <= v_max))
    throw std::invalid_argument("GridSpec: needs u_min < u_max <= v_max");
  if (output_stride < 1) throw std::invalid_argument("GridSpec: output_stride must be >= 1");
  exact_steps(u_max - u_min, h, "(u_max-u_min)");
  exact_steps(v_max - u_min, h, "(v_max-u_min)");
}

int GridSpec::n_u() const { return exact_steps(u_max - u_min, h, "(u_max-u_min)"); }
int GridSpec::n_v() const { return exact_steps(v_max - u_min, h, "(v_max-u_min)"); }

void ModelEquation::validate() const {
  if (amp_V < 0 || amp_h < 0 || amp_A < 0)
    throw std::invalid_argument("ModelEquation: amplitudes must be nonnegative");
  if (amp_V > 0.5 || amp_h > 0.5 || amp_A > 0.5)
    throw std::invalid_argument("ModelEquation: amplitudes must not exceed 0.5 (smallness)");
  if ((amp_V > 0 && !(delta > 0)) || ((amp_h > 0 || amp_A > 0) && !(sigma > 0)))
    throw std::invalid_argument("ModelEquation: requires 0 < sigma, delta < infinity");
  if (ell < 0) throw std::invalid_argument("ModelEquation: ell must be nonnegative");
}

double ModelEquation::potential(double r) const { return amp_V * bracket_pow(r, 2.0 + delta); }
double ModelEquation::metric_term(double r) const { return amp_h * bracket_pow(r, 1.0 + sigma); }
double ModelEquation::first_order(double r) const { return amp_A * bracket_pow(r, 1.0 + sigma); }

double ModelEquation::F(double r) const {
  double w = potential(r) + metric_term(r) / (1.0 + r * r);
  if (ell > 0) w += ell * (ell + 1) / (r * r);
  return -0.25 * w;
}

double ModelEquation::a(double r) const { return 0.25 * first_order(r); }

double InitialData::operator()(double v) const {
  const double x = (v - center) / width;
  if (std::abs(x) >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - x * x));
}

namespace {

FieldSlices evolve_core(const GridSpec& grid, const ModelEquation& eq,
                        const std::function<double(double)>& initial_row,
                        const std::function<double(double)>& axis,
                        const std::function<double(double, double)>& forcing) {
  grid.validate();
  eq.validate();
  const int nu = grid.n_u();
  const int nv = grid.n_v();
  const double h = grid.h;

  // Diamond centers sit at r = d*h/2 where d = j - i, so the coefficients
  // depend on the diagonal offset only.
  std::vector<double> cF(nv + 1, 0.0), cA(nv + 1, 0.0);
  for (int d = 1; d <= nv; ++d) {
    const double rc = 0.5 * d * h;
    cF[d] = 0.5 * h * h * eq.F(rc);
    cA[d] = h * eq.a(rc);
  }

  FieldSlices out;
  out.u_min = grid.u_min;
  out.h = h;
  out.stride = grid.output_stride;
  out.n_v = nv;

  std::vector<double> prev(nv + 1, 0.0), cur(nv + 1, 0.0);
  for (int j = 0; j <= nv; ++j) prev[j] = initial_row(grid.u_min + j * h);
  out.row_index.push_back(0);
  out.rows.push_back(prev);

  const bool forced = static_cast<bool>(forcing);
  for (int i = 1; i <= nu; ++i) {
    const double u_i = grid.u_min + i * h;
    cur[i] = axis ? axis(u_i) : 0.0;
    for (int j = i + 1; j <= nv; ++j) {
      const int d = j - i;  // 2*r_center/h for this diamond
      const double e = prev[j], w = cur[j - 1], s = prev[j - 1];
      double n = e + w - s + cF[d] * (e + w) + cA[d] * (w - e);
      if (forced) n += h * h * forcing(u_i - 0.5 * h, grid.u_min + (j - 0.5) * h);
      if (!std::isfinite(n) || std::abs(n) > 1e12) {
        std::ostringstream os;
        os << "evolve: blowup at diamond u=" << u_i << ", v=" << grid.u_min + j * h
           << " (|phi|=" << std::abs(n) << ")";
        throw std::runtime_error(os.str());
      }
      cur[j] = n;
    }
    if (i % grid.output_stride == 0 || i == nu) {
      for (int j = 0; j < i; ++j) cur[j] = 0.0;  // r < 0: unused
      out.row_index.push_back(i);
      out.rows.push_back(cur);
    }
    std::swap(prev, cur);
  }
  return out;
}

double interp_row(const std::vector<double>& row, double jf) {
  const int j0 = static_cast<int>(std::floor(jf));
  const double frac = jf - j0;
  if (frac == 0.0) return row[j0];
  return (1.0 - frac) * row[j0] + frac * row[j0 + 1];
}

}  // namespace

FieldSlices evolve(const GridSpec& grid, const ModelEquation& eq, const InitialData& data) {
  if (!(data.width > 0)) throw std::invalid_argument("InitialData: width must be positive");
  if (data.center - data.width < grid.u_min || data.center + data.width > grid.v_max)
    throw std::invalid_argument("InitialData: bump support must fit inside [u_min, v_max]");
  return evolve_core(grid, eq, [&](double v) { return data(v); }, nullptr, nullptr);
}

FieldSlices evolve_forced(const GridSpec& grid, const ModelEquation& eq,
                          const std::function<double(double)>& initial_row,
                          const std::function<double(double)>& axis,
                          const std::function<double(double, double)>& forcing) {
  return evolve_core(grid, eq, initial_row, axis, forcing);
}

Series sample(const FieldSlices& slices, const SamplerSpec& curve) {
  if (slices.rows.empty()) throw std::invalid_argument("sample: empty field");
  const double h = slices.h;
  const double v_max = slices.u_min + slices.n_v * h;
  const double u_last = slices.u_of_row(slices.rows.size() - 1);
  Series s;

  switch (curve.kind) {
    case SamplerKind::FixedR: {
      const double r0 = curve.value;
      if (r0 < 0 || slices.u_min + 2 * r0 > v_max)
        throw std::invalid_argument("sample: fixed_r curve outside grid");
      for (std::size_t k = 0; k < slices.rows.size(); ++k) {
        const double u = slices.u_of_row(k);
        const double v = u + 2 * r0;
        if (v > v_max + 1e-12) break;
        const double jf = (v - slices.u_min) / h;
        s.param.push_back(u + r0);  // t = (u + v)/2
        s.value.push_back(interp_row(slices.rows[k], std::min(jf, double(slices.n_v))));
      }
      break;
    }
    case SamplerKind::FixedU: {
      const double u0 = curve.value;
      if (u0 < slices.u_min - 1e-12 || u0 > u_last + 1e-12)
        throw std::invalid_argument("sample: fixed_u curve outside grid");
      // Locate the bracketing retained rows.
      std::size_t k1 = 0;
      while (k1 + 1 < slices.rows.size() && slices.u_of_row(k1 + 1) <= u0) ++k1;
      std::size_t k2 = (slices.u_of_row(k1) >= u0 || k1 + 1 == slices.rows.size()) ? k1 : k1 + 1;
      const double u1 = slices.u_of_row(k1), u2 = slices.u_of_row(k2);
      const double w = (k1 == k2 || u2 == u1) ? 0.0 : (u0 - u1) / (u2 - u1);
      const int j_start = static_cast<int>(std::ceil((u0 - slices.u_min) / h - 1e-12));
      for (int j = j_start; j <= slices.n_v; ++j) {
        s.param.push_back(slices.u_min + j * h);
        s.value.push_back((1.0 - w) * slices.rows[k1][j] + w * slices.rows[k2][j]);
      }
      break;
    }
    case SamplerKind::FixedT: {
      const double t0 = curve.value;
      if (t0 < slices.u_min || t0 > u_last || 2 * t0 - slices.u_min > v_max)
        throw std::invalid_argument("sample: fixed_t curve outside grid");
      // r decreasing as u grows; emit with increasing r.
      std::vector<double> ps, vs;
      for (std::size_t k = 0; k < slices.rows.size(); ++k) {
        const double u = slices.u_of_row(k);
        if (u > t0 + 1e-12) break;
        const double v = 2 * t0 - u;
        if (v > v_max + 1e-12) continue;
        const double jf = (v - slices.u_min) / h;
        ps.push_back(t0 - u);  // r = (v - u)/2
        vs.push_back(interp_row(slices.rows[k], std::min(jf, double(slices.n_v))));
      }
      for (std::size_t k = ps.size(); k-- > 0;) {
        s.param.push_back(ps[k]);
        s.value.push_back(vs[k]);
      }
      break;
    }
  }
  if (s.param.empty()) throw std::invalid_argument("sample: curve produced no points");
  return s;
}

}  // namespace wavetail
