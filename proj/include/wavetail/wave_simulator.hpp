#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wavetail {

/// Double-null grid u in [u_min, u_max], v in [u_min, v_max], square mesh
/// Delta u = Delta v = h. Rows with u-index divisible by output_stride are
/// retained in the result.
struct GridSpec {
  double u_min = 0.0;
  double u_max = 120.0;
  double v_max = 128.0;
  double h = 1.0 / 16.0;
  int output_stride = 16;

  void validate() const;
  int n_u() const;  // (u_max - u_min)/h
  int n_v() const;  // (v_max - u_min)/h
};

/// Radial, time-independent model coefficients. The scheme integrates
///   phi_uv = F(r) phi + a(r) (phi_u - phi_v),        r = (v - u)/2,
/// with phi = r psi and the regularity boundary phi(u, u) = 0. The
/// potential and the centrifugal term enter F directly; the stationary
/// metric term enters through its radial reduction as an effective
/// potential metric_term(r)/<r>^2; the first-order term gives a(r).
struct ModelEquation {
  double delta = 0.5;
  double sigma = 0.5;
  double amp_V = 0.0;
  double amp_h = 0.0;
  double amp_A = 0.0;
  int ell = 0;

  void validate() const;
  double potential(double r) const;    // amp_V <r>^-(2+delta)
  double metric_term(double r) const;  // amp_h <r>^-(1+sigma)
  double first_order(double r) const;  // amp_A <r>^-(1+sigma)
  double F(double r) const;            // -(potential + metric/<r>^2 + l(l+1)/r^2)/4
  double a(double r) const;            // first_order/4
};

/// Smooth compactly supported bump on the initial outgoing segment u = u_min:
/// amplitude * exp(1 - 1/(1 - x^2)) with x = (v - center)/width.
struct InitialData {
  double center = 20.0;
  double width = 4.0;
  double amplitude = 1.0;

  double operator()(double v) const;
};

enum class SamplerKind { FixedR, FixedU, FixedT };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::FixedR;
  double value = 10.0;
};

struct Series {
  std::vector<double> param;
  std::vector<double> value;
};

/// Retained grid diagonals phi(u, v) plus enough geometry to sample curves.
struct FieldSlices {
  double u_min = 0.0;
  double h = 1.0;
  int stride = 1;
  int n_v = 0;
  std::vector<int> row_index;             // u-index of each retained row
  std::vector<std::vector<double>> rows;  // rows[k][j] = phi(u_min + row_index[k]*h, u_min + j*h)

  double u_of_row(std::size_t k) const { return u_min + row_index[k] * h; }
};

/// Diamond-scheme characteristic evolution, second-order accurate,
/// deterministic and bit-identical for fixed inputs. Throws on blowup
/// (|phi| > 1e12 or non-finite), citing the first offending diamond.
FieldSlices evolve(const GridSpec& grid, const ModelEquation& eq, const InitialData& data);

/// Forced variant for manufactured-solution studies: prescribed initial row,
/// axis values, and source term G(u,v) added to phi_uv.
FieldSlices evolve_forced(const GridSpec& grid, const ModelEquation& eq,
                          const std::function<double(double)>& initial_row,
                          const std::function<double(double)>& axis,
                          const std::function<double(double, double)>& forcing);

/// Samples a curve through the retained rows with linear interpolation
/// between adjacent grid diagonals. Parameters are strictly increasing:
/// t for fixed_r, v for fixed_u, r for fixed_t. Throws std::invalid_argument
/// when the curve lies outside the computed grid.
Series sample(const FieldSlices& slices, const SamplerSpec& curve);

}  // namespace wavetail
