// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wavetail/exponent_fitter.hpp"
#include "wavetail/iteration_engine.hpp"
#include "wavetail/le_norms.hpp"
#include "wavetail/wave_simulator.hpp"

using namespace wavetail;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int idx, const char* name, bool pass, double secs, double budget,
            const std::string& detail) {
  const bool ok = pass && secs < budget;
  if (!ok) ++failures;
  std::printf("criterion %d [%s]: %s  (%.1fs / budget %.0fs)  %s\n", idx, name,
              ok ? "PASS" : "FAIL", secs, budget, detail.c_str());
  std::fflush(stdout);
}

CoefficientProfile make_profile(std::optional<Rational> s, std::optional<Rational> d, int part) {
  CoefficientProfile p;
  p.sigma = s;
  p.delta = d;
  p.part = part;
  return p;
}

// --------------------------------------------------------------------------
// 1. Theorem-exponent exactness over the 49-point sweep, both parts.
void criterion1() {
  Timer timer;
  const Rational grid[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1),
                           Rational(3, 2), Rational(2),    Rational(3)};
  bool pass = true;
  std::string detail;
  for (const Rational& s : grid) {
    for (const Rational& d : grid) {
      const PredictionReport p1 = predict(make_profile(s, d, 1));
      const PredictionReport p2 = predict(make_profile(s, d, 2));
      const Rational want1 = Rational(1) + min(s, d);
      const Rational want2 = Rational(1) + min(Rational(1) + s, d);
      if (p1.theorem_exponent != want1 || !p1.discrepancies.empty() ||
          p2.theorem_exponent != want2 || !p2.discrepancies.empty()) {
        pass = false;
        detail = "mismatch at sigma=" + s.str() + " delta=" + d.str();
      }
    }
  }
  if (pass) detail = "49 x 2 exponents exact";
  report(1, "theorem-exponent exactness", pass, timer.seconds(), 5, detail);
}

// --------------------------------------------------------------------------
// 2. Conversion-oracle domination and slope agreement.
void criterion2() {
  Timer timer;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(0, 1);
  bool pass = true;
  double worst_gap = 1e9;
  int slope_checked = 0;
  std::string detail;

  for (int s = 0; s < 50 && pass; ++s) {
    const bool low = uni(rng) < 0.5;
    const int a_num =
        low ? 9 + static_cast<int>(uni(rng) * 14) : 25 + static_cast<int>(uni(rng) * 23);
    SourceBound src{uni(rng) < 0.5 ? 0 : 1, ExtRational(Rational(a_num, 8)),
                    ExtRational(Rational(static_cast<int>(uni(rng) * 16), 8)),
                    ExtRational(Rational(static_cast<int>(uni(rng) * 24) - 8, 8))};
    const BoundExpr sym = convert_interior(src);

    double cmax = 0;
    for (int p = 0; p < 20; ++p) {
      const double t = 50 + uni(rng) * 750;
      const double r = uni(rng) * t;
      const double num = oracle_integral(src, t, r, 0.01);
      const double den = evaluate(sym, t, r, 0.01);
      if (!(den > 0) || !std::isfinite(num / den)) {
        pass = false;
        detail = "non-finite ratio for source " + src.str();
        break;
      }
      cmax = std::max(cmax, num / den);
    }
    if (!pass) break;

    // Slope along r = t/2 for sources with a unique dominant term. Sources
    // whose conversion sits within 1/2 of a summation threshold (alpha near
    // 2 or 3, eta or beta near 1) converge to their asymptote only at
    // u ~ e^8 and are excluded: their finite-window slope reflects
    // integration constants, not the exponent.
    const DecayTerm dom = sym.dominant();
    bool unique = true;
    for (const auto& g : sym.groups) {
      DecayTerm rep = g.terms.front();
      for (const auto& t : g.terms)
        if (t.total_order() > rep.total_order()) rep = t;
      if (!(rep == dom) && rep.total_order().std() - dom.total_order().std() < Rational(1, 4))
        unique = false;
    }
    auto away_from = [](const Rational& x, const Rational& c) {
      Rational d = x - c;
      if (d < Rational(0)) d = -d;
      return !(d < Rational(1, 2));
    };
    const bool clean = away_from(src.alpha.std(), Rational(2)) &&
                       away_from(src.alpha.std(), Rational(3)) &&
                       away_from(src.eta.std(), Rational(1)) &&
                       away_from(src.beta.std(), Rational(1));
    if (!unique || !clean) continue;
    ++slope_checked;
    std::vector<double> lx, ly;
    for (double t : {120.0, 240.0, 480.0, 1600.0}) {
      const double u = t / 2;
      double val = oracle_integral(src, t, t / 2, 0.01);
      const double bu = std::sqrt(1 + u * u);
      if (dom.m > 0) val /= std::pow(std::log(bu), dom.m);
      lx.push_back(std::log(bu));
      ly.push_back(std::log(val));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = -sxy / sxx;  // decay exponent of the oracle in <u>
    const double target = dom.eta.std().to_double();
    worst_gap = std::min(worst_gap, slope - (target - 0.15));
    if (slope < target - 0.15) {
      pass = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "slope %.3f < %.3f - 0.15 for %s", slope, target,
                    src.str().c_str());
      detail = buf;
    }
  }
  if (pass) {
    char buf[120];
    std::snprintf(buf, sizeof(buf), "50 sources dominated; %d slope checks, min margin %.3f",
                  slope_checked, worst_gap);
    detail = buf;
  }
  report(2, "conversion-oracle domination", pass, timer.seconds(), 120, detail);
}

// --------------------------------------------------------------------------
// Shared tail-run helper for criteria 3 and 4.
struct TailRun {
  double fitted = 0;
  double predicted_local = 0;
  bool consistent = false;
  double r_squared = 0;
};

TailRun tail_run(const CoefficientProfile& prof, const ModelEquation& eq, double u_max,
                 double v_max, double t_lo, double t_hi, double tol) {
  GridSpec g;
  g.u_min = 0;
  g.u_max = u_max;
  g.v_max = v_max;
  g.h = 1.0 / 16;
  g.output_stride = 64;
  FieldSlices s = evolve(g, eq, InitialData{20, 4, 1});
  Series tail = sample(s, SamplerSpec{SamplerKind::FixedR, 10.0});
  FitResult fit = fit_exponent(tail, FitWindow{t_lo, t_hi});
  TailRun out;
  out.fitted = fit.exponent;
  out.r_squared = fit.r_squared;
  out.predicted_local = predict(prof).theorem_exponent.to_double() + 1.0;
  out.consistent = out.fitted >= out.predicted_local - tol;
  return out;
}

// 3. Price-law consistency: stationary metric channel, sigma = 1/100.
void criterion3() {
  Timer timer;
  ModelEquation eq;
  eq.amp_h = 0.1;
  eq.sigma = 0.01;
  eq.amp_V = 0;
  CoefficientProfile prof = make_profile(Rational(1, 100), std::nullopt, 2);
  TailRun run = tail_run(prof, eq, 2000, 2048, 200, 2000, 0.35);
  const bool pass = run.fitted >= 3.0 - 0.35 && run.consistent;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "fitted %.3f (>= %.2f), predicted local %.2f, verdict %s, R^2 %.5f", run.fitted,
                3.0 - 0.35, run.predicted_local, run.consistent ? "CONSISTENT" : "INCONSISTENT",
                run.r_squared);
  report(3, "Price-law consistency", pass, timer.seconds(), 600, buf);
}

// 4. Potential-tail runs: delta = 0.5 and delta = 1.5.
void criterion4() {
  {
    Timer timer;
    ModelEquation eq;
    eq.amp_V = 0.1;
    eq.delta = 0.5;
    CoefficientProfile prof = make_profile(std::nullopt, Rational(1, 2), 1);
    TailRun run = tail_run(prof, eq, 2000, 2048, 200, 2000, 0.3);
    const bool pass = run.fitted >= 2.5 - 0.3;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "delta=0.5: fitted %.3f (>= %.2f), R^2 %.5f", run.fitted,
                  2.5 - 0.3, run.r_squared);
    report(4, "potential tail delta=0.5", pass, timer.seconds(), 600, buf);
  }
  {
    Timer timer;
    ModelEquation eq;
    eq.amp_V = 0.1;
    eq.delta = 1.5;
    CoefficientProfile prof = make_profile(std::nullopt, Rational(3, 2), 1);
    TailRun run = tail_run(prof, eq, 1000, 1024, 100, 1000, 0.4);
    const bool pass = run.fitted >= 3.5 - 0.4;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "delta=1.5: fitted %.3f (>= %.2f), R^2 %.5f", run.fitted,
                  3.5 - 0.4, run.r_squared);
    report(4, "potential tail delta=1.5", pass, timer.seconds(), 600, buf);
  }
}

// --------------------------------------------------------------------------
// 5. Manufactured-solution convergence: error ratio in [3.5, 4.5].
void criterion5() {
  Timer timer;
  ModelEquation eq;
  eq.amp_V = 0.1;
  eq.delta = 0.5;
  eq.amp_A = 0.05;
  eq.sigma = 0.5;

  struct M {
    std::function<double(double, double)> phi, phi_u, phi_v, phi_uv;
  };
  const M cases[3] = {
      {[](double u, double v) { return std::sin(u) * std::exp(-v / 10); },
       [](double u, double v) { return std::cos(u) * std::exp(-v / 10); },
       [](double u, double v) { return -0.1 * std::sin(u) * std::exp(-v / 10); },
       [](double u, double v) { return -0.1 * std::cos(u) * std::exp(-v / 10); }},
      {[](double u, double v) { return std::cos(u / 2) * std::sin(v / 3); },
       [](double u, double v) { return -0.5 * std::sin(u / 2) * std::sin(v / 3); },
       [](double u, double v) { return std::cos(u / 2) * std::cos(v / 3) / 3; },
       [](double u, double v) { return -std::sin(u / 2) * std::cos(v / 3) / 6; }},
      {[](double u, double v) { return std::exp(-u / 6) / (1 + 0.1 * v); },
       [](double u, double v) { return -std::exp(-u / 6) / (6 * (1 + 0.1 * v)); },
       [](double u, double v) {
         return -0.1 * std::exp(-u / 6) / ((1 + 0.1 * v) * (1 + 0.1 * v));
       },
       [](double u, double v) {
         return 0.1 * std::exp(-u / 6) / (6 * (1 + 0.1 * v) * (1 + 0.1 * v));
       }}};

  bool pass = true;
  std::string detail = "ratios";
  for (const M& m : cases) {
    auto forcing = [&](double u, double v) {
      const double r = 0.5 * (v - u);
      return m.phi_uv(u, v) - eq.F(r) * m.phi(u, v) - eq.a(r) * (m.phi_u(u, v) - m.phi_v(u, v));
    };
    auto err = [&](double h) {
      GridSpec g;
      g.u_min = 0;
      g.u_max = 8;
      g.v_max = 16;
      g.h = h;
      g.output_stride = 1;
      FieldSlices s = evolve_forced(g, eq, [&](double v) { return m.phi(0, v); },
                                    [&](double u) { return m.phi(u, u); }, forcing);
      double e = 0;
      for (std::size_t k = 0; k < s.rows.size(); ++k)
        for (int j = s.row_index[k]; j <= s.n_v; ++j)
          e = std::max(e, std::abs(s.rows[k][j] - m.phi(s.u_of_row(k), s.u_min + j * s.h)));
      return e;
    };
    const double ratio = err(1.0 / 8) / err(1.0 / 16);
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.2f", ratio);
    detail += buf;
    if (ratio < 3.5 || ratio > 4.5) pass = false;
  }
  report(5, "simulator convergence", pass, timer.seconds(), 120, detail);
}

// --------------------------------------------------------------------------
// 6. Flat Huygens: zero amplitudes, |phi| <= 1e-10 at r = 5 after transit.
void criterion6() {
  Timer timer;
  GridSpec g;
  g.u_min = 0;
  g.u_max = 120;
  g.v_max = 128;
  g.h = 1.0 / 16;
  g.output_stride = 4;
  ModelEquation eq;  // all amplitudes zero
  eq.amp_V = eq.amp_h = eq.amp_A = 0;
  FieldSlices s = evolve(g, eq, InitialData{20, 4, 1});
  Series tail = sample(s, SamplerSpec{SamplerKind::FixedR, 5.0});
  double post = 0;
  for (std::size_t i = 0; i < tail.param.size(); ++i)
    if (tail.param[i] >= 30) post = std::max(post, std::abs(tail.value[i]));
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max |phi| = %.2e beyond the transit", post);
  report(6, "flat Huygens", post <= 1e-10, timer.seconds(), 30, buf);
}

// --------------------------------------------------------------------------
// 7. Property suites.
void criterion7() {
  Timer timer;
  bool pass = true;
  std::string detail = "all sub-suites green";
  auto fail = [&](const std::string& why) {
    pass = false;
    detail = why;
  };

  // ExtRational ordering totality + min/max identity, 1e4 random pairs.
  {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> num(-16, 24), den(1, 8), epsc(-2, 2);
    for (int i = 0; i < 10000 && pass; ++i) {
      ExtRational a(Rational(num(rng), den(rng)), Rational(epsc(rng)));
      ExtRational b(Rational(num(rng), den(rng)), Rational(epsc(rng)));
      const int rel = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (a > b ? 1 : 0);
      if (rel != 1 || min(a, b) + max(a, b) != a + b) fail("ExtRational ordering violation");
    }
  }

  // radial_to_temporal termwise on 1e3 random terms with p <= 1.
  {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-8, 8), den(1, 8), logs(0, 2);
    for (int i = 0; i < 1000 && pass; ++i) {
      int an = num(rng), ad = den(rng);
      if (an > ad) an = ad;
      DecayTerm t;
      t.m = logs(rng);
      t.alpha = ExtRational(Rational(an, ad));
      t.beta = ExtRational(Rational(num(rng), den(rng)));
      t.eta = ExtRational(Rational(num(rng), den(rng)));
      const DecayTerm o = radial_to_temporal(BoundExpr::single(t)).groups[0].terms[0];
      if (!(o.alpha == ExtRational(0) && o.beta == t.beta + t.alpha && o.eta == t.eta &&
            o.m == t.m))
        fail("radial_to_temporal termwise violation");
    }
  }

  // kappa trichotomy over a rational lattice with eps offsets.
  for (int n = -18; n <= 24 && pass; ++n) {
    for (int e = -2; e <= 2; ++e) {
      ExtRational lambda(Rational(n, 6), Rational(e));
      const KappaSymbol k = kappa(lambda);
      const ExtRational one(Rational(1));
      const bool ok = (lambda > one && k.kind == KappaSymbol::Kind::One) ||
                      (lambda == one && k.kind == KappaSymbol::Kind::Log) ||
                      (lambda < one && k.kind == KappaSymbol::Kind::Power &&
                       k.exponent == one - lambda);
      if (!ok) fail("kappa trichotomy violation");
    }
  }

  // exterior_step termination for a in {0.1, ..., 2.0}.
  for (int tenths = 1; tenths <= 20 && pass; ++tenths) {
    ExteriorState s;
    s.a = ExtRational(Rational(tenths, 10));
    const int limit = 2 * static_cast<int>(std::ceil(10.0 / tenths)) + 2;
    int steps = 0;
    ExteriorStepResult r = s;
    while (std::holds_alternative<ExteriorState>(r) && steps <= limit) {
      r = exterior_step(std::get<ExteriorState>(r));
      ++steps;
    }
    if (std::holds_alternative<ExteriorState>(r)) fail("exterior_step over budget");
  }

  // Hardy ratios bounded on the 20-case suite.
  if (pass) {
    auto bump = [](double x) { return std::abs(x) < 1 ? std::exp(1 - 1 / (1 - x * x)) : 0.0; };
    for (double gamma : {1.5, 2.0, 2.5, 4.0}) {
      for (double center : {4.0, 6.0, 8.0, 10.0, 12.0}) {
        DiscreteField f = DiscreteField::from_function(
            [&](double, double r) { return bump((r - center) / 2.0); }, 0, 1, 2, 20, 1500);
        if (hardy_check(f, gamma).max_ratio > 50.0) fail("hardy ratio unbounded");
      }
    }
  }

  // dyadic_h1_check mesh stability within 20%.
  if (pass) {
    auto bump = [](double x) { return std::abs(x) < 1 ? std::exp(1 - 1 / (1 - x * x)) : 0.0; };
    auto psi = [&](double t, double r) {
      return (bump((t - r - 180) / 30.0) - bump((t + r - 180) / 30.0)) / r;
    };
    DyadicRegion region;
    region.kind = ConeRegionKind::CTR;
    region.T = 128;
    region.R = 8;
    ModelEquation eq;
    eq.amp_V = eq.amp_h = eq.amp_A = 0;
    auto run = [&](int n) {
      DiscreteField f = DiscreteField::from_function(psi, 100, 300, n, 20, n / 4);
      return dyadic_h1_check(f, eq, region).ratio;
    };
    const double coarse = run(400), fine = run(800);
    if (std::abs(coarse - fine) / fine > 0.2) fail("dyadic_h1_check mesh instability");
  }

  report(7, "property suites", pass, timer.seconds(), 60, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures == 0) std::printf("all acceptance criteria PASS\n");
  return failures;
}
