// wavetail: pointwise tail-decay toolkit.
//
// Subcommands wire the pipeline: symbolic prediction of the decay exponent,
// characteristic evolution of the model equation, exponent fitting, norm
// diagnostics, the conversion-kernel quadrature oracle, and the verify
// comparison between the fitted and predicted exponents.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wavetail/exponent_fitter.hpp"
#include "wavetail/iteration_engine.hpp"
#include "wavetail/json_io.hpp"
#include "wavetail/le_norms.hpp"
#include "wavetail/wave_simulator.hpp"

using json = nlohmann::json;
using namespace wavetail;

namespace {

struct RunConfig {
  GridSpec grid;
  ModelEquation equation;
  InitialData data;
  std::optional<std::string> sigma, delta;  // rational strings; absent = channel disabled
  int part = 1;
  double r0 = 10.0;
  std::optional<double> t_lo, t_hi;
  double tol = 0.3;
  double eps = 0.01;
  long seed = 1;
  int oracle_sources = 50;
  int oracle_points = 20;
  std::string in_path;
  std::string out_dir = ".";

  json canonical() const {
    json j;
    j["grid"] = {{"u_min", grid.u_min},
                 {"u_max", grid.u_max},
                 {"v_max", grid.v_max},
                 {"h", grid.h},
                 {"output_stride", grid.output_stride}};
    j["equation"] = {{"delta", equation.delta}, {"sigma", equation.sigma},
                     {"amp_V", equation.amp_V}, {"amp_h", equation.amp_h},
                     {"amp_A", equation.amp_A}, {"ell", equation.ell}};
    j["data"] = {{"center", data.center}, {"width", data.width}, {"amplitude", data.amplitude}};
    json prof;
    if (sigma) prof["sigma"] = Rational::parse(*sigma).str();  // canonicalized
    if (delta) prof["delta"] = Rational::parse(*delta).str();
    prof["part"] = part;
    j["profile"] = prof;
    json fit;
    fit["r0"] = r0;
    if (t_lo) fit["t_lo"] = *t_lo;
    if (t_hi) fit["t_hi"] = *t_hi;
    j["fit"] = fit;
    j["tol"] = tol;
    j["eps"] = eps;
    j["seed"] = seed;
    if (!in_path.empty()) j["in"] = in_path;
    return j;
  }

  std::string hash() const { return hash_hex(fnv1a64(canonical().dump())); }
};

void load_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (g.contains("u_min")) c.grid.u_min = g["u_min"];
    if (g.contains("u_max")) c.grid.u_max = g["u_max"];
    if (g.contains("v_max")) c.grid.v_max = g["v_max"];
    if (g.contains("h")) c.grid.h = g["h"];
    if (g.contains("output_stride")) c.grid.output_stride = g["output_stride"];
  }
  if (j.contains("equation")) {
    const json& e = j["equation"];
    if (e.contains("delta")) c.equation.delta = e["delta"];
    if (e.contains("sigma")) c.equation.sigma = e["sigma"];
    if (e.contains("amp_V")) c.equation.amp_V = e["amp_V"];
    if (e.contains("amp_h")) c.equation.amp_h = e["amp_h"];
    if (e.contains("amp_A")) c.equation.amp_A = e["amp_A"];
    if (e.contains("ell")) c.equation.ell = e["ell"];
  }
  if (j.contains("data")) {
    const json& d = j["data"];
    if (d.contains("center")) c.data.center = d["center"];
    if (d.contains("width")) c.data.width = d["width"];
    if (d.contains("amplitude")) c.data.amplitude = d["amplitude"];
  }
  if (j.contains("profile")) {
    const json& p = j["profile"];
    if (p.contains("sigma"))
      c.sigma = p["sigma"].is_string() ? p["sigma"].get<std::string>() : p["sigma"].dump();
    if (p.contains("delta"))
      c.delta = p["delta"].is_string() ? p["delta"].get<std::string>() : p["delta"].dump();
    if (p.contains("part")) c.part = p["part"];
  }
  if (j.contains("fit")) {
    const json& f = j["fit"];
    if (f.contains("r0")) c.r0 = f["r0"];
    if (f.contains("t_lo")) c.t_lo = f["t_lo"];
    if (f.contains("t_hi")) c.t_hi = f["t_hi"];
  }
  if (j.contains("tol")) c.tol = j["tol"];
  if (j.contains("eps")) c.eps = j["eps"];
  if (j.contains("seed")) c.seed = j["seed"];
  if (j.contains("oracle_sources")) c.oracle_sources = j["oracle_sources"];
  if (j.contains("oracle_points")) c.oracle_points = j["oracle_points"];
  if (j.contains("in")) c.in_path = j["in"];
}

CoefficientProfile profile_from_strings(const RunConfig& c) {
  CoefficientProfile p;
  if (c.sigma) p.sigma = Rational::parse(*c.sigma);
  if (c.delta) p.delta = Rational::parse(*c.delta);
  p.part = c.part;
  p.amp_h = c.equation.amp_h;
  p.amp_A = c.equation.amp_A;
  p.amp_V = c.equation.amp_V;
  return p;
}

/// Effective profile for verify: a coefficient family participates only if
/// its simulator amplitude is switched on.
CoefficientProfile profile_from_amplitudes(const RunConfig& c) {
  CoefficientProfile p;
  if (c.equation.amp_h > 0 || c.equation.amp_A > 0)
    p.sigma = c.sigma ? Rational::parse(*c.sigma) : Rational::parse(std::to_string(c.equation.sigma));
  if (c.equation.amp_V > 0)
    p.delta = c.delta ? Rational::parse(*c.delta) : Rational::parse(std::to_string(c.equation.delta));
  p.part = c.part;
  p.amp_h = c.equation.amp_h;
  p.amp_A = c.equation.amp_A;
  p.amp_V = c.equation.amp_V;
  return p;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string series_csv(const Series& s, const std::string& hash) {
  std::ostringstream os;
  os << "# param,value\n# config_hash=" << hash << "\n";
  char buf[80];
  for (std::size_t i = 0; i < s.param.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.param[i], s.value[i]);
    os << buf;
  }
  return os.str();
}

Series read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open series file: " + path);
  Series s;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("malformed CSV line: " + line);
    s.param.push_back(std::stod(line.substr(0, comma)));
    s.value.push_back(std::stod(line.substr(comma + 1)));
  }
  if (s.param.empty()) throw std::invalid_argument("empty series: " + path);
  return s;
}

DiscreteField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field file: " + path);
  std::vector<std::array<double, 5>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::array<double, 5> row{};
    std::istringstream ls(line);
    std::string cell;
    for (int k = 0; k < 5; ++k) {
      if (!std::getline(ls, cell, ','))
        throw std::invalid_argument("field CSV needs t,r,value,dt,dr");
      row[k] = std::stod(cell);
    }
    rows.push_back(row);
  }
  DiscreteField f;
  for (const auto& row : rows) {
    if (f.t.empty() || row[0] > f.t.back()) f.t.push_back(row[0]);
    if (f.t.size() == 1) f.r.push_back(row[1]);
  }
  const std::size_t n = f.t.size() * f.r.size();
  if (rows.size() != n) throw std::invalid_argument("field CSV is not a full (t,r) lattice");
  for (const auto& row : rows) {
    f.value.push_back(row[2]);
    f.dt.push_back(row[3]);
    f.dr.push_back(row[4]);
  }
  return f;
}

json fit_to_json(const FitResult& r) {
  return json{{"exponent", r.exponent},   {"stderr", r.stderr_},
              {"r_squared", r.r_squared}, {"window", {r.t_lo, r.t_hi}},
              {"n_points", r.n_points},   {"oscillatory", r.oscillatory}};
}

struct SimArtifacts {
  Series tail;
  double wall_ms = 0;
};

SimArtifacts run_simulation(const RunConfig& c, const std::filesystem::path& out) {
  const auto start = std::chrono::steady_clock::now();
  FieldSlices slices = evolve(c.grid, c.equation, c.data);
  SimArtifacts art;
  art.tail = sample(slices, SamplerSpec{SamplerKind::FixedR, c.r0});
  art.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  write_text(out / "tail_fixed_r.csv", series_csv(art.tail, c.hash()));
  json meta;
  meta["config_hash"] = c.hash();
  meta["grid"] = {{"u_min", c.grid.u_min},
                  {"u_max", c.grid.u_max},
                  {"v_max", c.grid.v_max},
                  {"h", c.grid.h},
                  {"output_stride", c.grid.output_stride}};
  meta["wall_time_ms"] = art.wall_ms;  // the one field exempt from byte-identity
  write_json(out / "metadata.json", meta);
  return art;
}

FitWindow window_of(const RunConfig& c, const Series& s) {
  FitWindow w = default_window(s);
  if (c.t_lo) w.t_lo = *c.t_lo;
  if (c.t_hi) w.t_hi = *c.t_hi;
  return w;
}

int mode_predict(const RunConfig& c, const std::filesystem::path& out) {
  PredictionReport report = predict(profile_from_strings(c));
  json j = to_json(report);
  j["config_hash"] = c.hash();
  write_json(out / "prediction.json", j);
  std::cout << render_step_table(report);
  std::cout << "theorem_exponent = " << report.theorem_exponent.str() << "\n";
  return 0;
}

int mode_simulate(const RunConfig& c, const std::filesystem::path& out) {
  SimArtifacts art = run_simulation(c, out);
  std::cout << "simulated " << art.tail.param.size() << " tail samples at r0=" << c.r0
            << " (wall " << art.wall_ms << " ms)\n";
  return 0;
}

int mode_fit(const RunConfig& c, const std::filesystem::path& out) {
  if (c.in_path.empty()) throw std::invalid_argument("fit: requires --in <series.csv>");
  Series s = read_series_csv(c.in_path);
  FitResult r = fit_exponent(s, window_of(c, s));
  json j = fit_to_json(r);
  j["config_hash"] = c.hash();
  write_json(out / "fit.json", j);
  std::cout << "fitted exponent " << r.exponent << " +- " << r.stderr_ << " (R^2 " << r.r_squared
            << ")\n";
  return 0;
}

int mode_norms(const RunConfig& c, const std::filesystem::path& out) {
  DiscreteField field;
  if (!c.in_path.empty()) {
    field = read_field_csv(c.in_path);
  } else {
    GridSpec g = c.grid;
    g.output_stride = 1;
    FieldSlices slices = evolve(g, c.equation, c.data);
    // Lattice within the domain of dependence: u = t - r stays positive and
    // v = t + r stays inside the grid, with one lattice step of margin for
    // the centered time differences.
    const double step = 4 * g.h;
    auto snap = [&](double x) { return std::floor(x / step) * step; };
    const double t_lo = snap(0.25 * g.u_max);
    const double t_hi = snap(0.95 * g.u_max);
    const double r_max =
        snap(std::min({24.0, t_lo - 2 * step, g.v_max - t_hi - 2 * step}));
    if (r_max < 2 + 2 * step)
      throw std::invalid_argument("norms: grid too small to carve a (t, r) lattice");
    field = field_from_slices(slices, t_lo, t_hi, r_max, 4);
  }
  json j;
  LeReport le = le_norm_report(field, LeKind::LE);
  LeReport le1 = le_norm_report(field, LeKind::LE1);
  LeReport les = le_norm_report(field, LeKind::LEstar);
  j["LE"] = le.value;
  j["LE1"] = le1.value;
  j["LEstar"] = {{"value", les.value}, {"truncated", les.truncated}, {"annuli", les.annuli}};
  // Per-slab tabulation: local energy decay shows up as non-growth of the
  // slab values in T.
  json slabs = json::array();
  for (double T = 2; 2 * T <= field.t.back(); T *= 2) {
    if (T < field.t.front()) continue;
    DiscreteField slab;
    slab.r = field.r;
    for (std::size_t it = 0; it < field.t.size(); ++it) {
      if (field.t[it] < T || field.t[it] > 2 * T) continue;
      slab.t.push_back(field.t[it]);
      for (std::size_t ir = 0; ir < field.r.size(); ++ir) {
        const std::size_t k = it * field.r.size() + ir;
        slab.value.push_back(field.value[k]);
        slab.dt.push_back(field.dt[k]);
        slab.dr.push_back(field.dr[k]);
      }
    }
    if (slab.t.size() < 2) continue;
    slabs.push_back({{"T", T},
                     {"LE", le_norm(slab, LeKind::LE)},
                     {"LE1", le_norm(slab, LeKind::LE1)}});
  }
  j["per_slab"] = slabs;
  json dyadic = json::array();
  for (double T = 2; 2 * T * 9 / 8 <= field.t.back(); T *= 2) {
    if (T * 8.0 / 9.0 < field.t.front()) continue;
    for (double R = 1; R <= 3 * T / 8 && 2 * R * 9 / 8 <= field.r.back(); R *= 2) {
      DyadicRegion region;
      region.kind = ConeRegionKind::CTR;
      region.T = T;
      region.R = R;
      DyadicH1Report rep = dyadic_h1_check(field, c.equation, region);
      dyadic.push_back({{"T", T}, {"R", R}, {"ratio", rep.ratio}, {"degenerate", rep.degenerate}});
    }
  }
  j["dyadic_h1"] = dyadic;
  j["note"] =
      "finite-slab surrogates support but cannot certify the decay hypothesis; norms are "
      "per-slab";
  j["config_hash"] = c.hash();
  write_json(out / "norms.json", j);
  std::cout << "LE=" << le.value << " LE1=" << le1.value << " LE*=" << les.value << "\n";
  return 0;
}

int mode_oracle(const RunConfig& c, const std::filesystem::path& out) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(c.seed));
  std::uniform_real_distribution<double> uni(0, 1);
  std::ostringstream csv;
  csv << "# alpha,beta,eta,m,t,r,value\n# config_hash=" << c.hash() << "\n";
  for (int s = 0; s < c.oracle_sources; ++s) {
    // alpha in (1.1, 2.9) u (3.1, 6), beta in [0, 2], eta in [-1, 2], m in {0, 1}
    const bool low = uni(rng) < 0.5;
    const int a_num =
        low ? 9 + static_cast<int>(uni(rng) * 14) : 25 + static_cast<int>(uni(rng) * 23);
    SourceBound src{uni(rng) < 0.5 ? 0 : 1, ExtRational(Rational(a_num, 8)),
                    ExtRational(Rational(static_cast<int>(uni(rng) * 16), 8)),
                    ExtRational(Rational(static_cast<int>(uni(rng) * 24) - 8, 8))};
    for (int p = 0; p < c.oracle_points; ++p) {
      const double t = 50 + uni(rng) * 750;
      const double r = uni(rng) * t;
      const double val = oracle_integral(src, t, r, c.eps);
      csv << oracle_csv_row(src, t, r, val) << "\n";
    }
  }
  write_text(out / "oracle.csv", csv.str());
  std::cout << "wrote " << c.oracle_sources << " sources x " << c.oracle_points
            << " oracle samples\n";
  return 0;
}

int mode_verify(const RunConfig& c, const std::filesystem::path& out) {
  PredictionReport report = predict(profile_from_amplitudes(c));
  SimArtifacts art = run_simulation(c, out);
  FitResult fit = fit_exponent(art.tail, window_of(c, art.tail));
  // At fixed r the closed-form bound <t+r>^-1 <t-r>^-(theorem) decays one
  // power faster than its <t-r> exponent.
  const double predicted_local = report.theorem_exponent.to_double() + 1.0;
  const bool consistent = fit.exponent >= predicted_local - c.tol;
  const bool tight = std::abs(fit.exponent - predicted_local) <= c.tol;
  const std::string verdict = consistent ? "CONSISTENT" : "INCONSISTENT";

  json j;
  j["config_hash"] = c.hash();
  j["prediction"] = to_json(report);
  j["fit"] = fit_to_json(fit);
  j["predicted_local_exponent"] = predicted_local;
  j["fitted_exponent"] = fit.exponent;
  j["tol"] = c.tol;
  j["verdict"] = verdict;
  j["tight"] = tight;
  write_json(out / "verify.json", j);
  std::cout << "predicted local exponent " << predicted_local << ", fitted " << fit.exponent
            << " -> " << verdict << (tight ? " (tight)" : "") << "\n";
  return consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavetail: pointwise tail-decay prediction, simulation and verification"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::string sigma_flag, delta_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print usage");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", flags.out_dir, "output directory");
    sub->add_option("--sigma", sigma_flag, "metric/first-order decay exponent (rational)");
    sub->add_option("--delta", delta_flag, "potential decay exponent (rational)");
    sub->add_option("--part", flags.part, "theorem part (1 or 2)");
    sub->add_option("--amp-v", flags.equation.amp_V, "potential amplitude");
    sub->add_option("--amp-h", flags.equation.amp_h, "metric amplitude");
    sub->add_option("--amp-a", flags.equation.amp_A, "first-order amplitude");
    sub->add_option("--ell", flags.equation.ell, "angular mode");
    sub->add_option("--h", flags.grid.h, "mesh width");
    sub->add_option("--umax", flags.grid.u_max, "grid u_max");
    sub->add_option("--vmax", flags.grid.v_max, "grid v_max");
    sub->add_option("--r0", flags.r0, "sampling radius");
    sub->add_option("--tol", flags.tol, "verify tolerance");
    sub->add_option("--seed", flags.seed, "seed for randomized sweeps");
    sub->add_option("--eps", flags.eps, "numeric value for the formal infinitesimal");
    sub->add_option("--t-lo", flags.t_lo, "fit window start");
    sub->add_option("--t-hi", flags.t_hi, "fit window end");
    sub->add_option("--in", flags.in_path, "input CSV path");
    return sub;
  };

  CLI::App* s_predict = add_common(app.add_subcommand("predict", "symbolic decay prediction"));
  CLI::App* s_sim = add_common(app.add_subcommand("simulate", "characteristic evolution"));
  CLI::App* s_fit = add_common(app.add_subcommand("fit", "fit a decay exponent to a series"));
  CLI::App* s_norms = add_common(app.add_subcommand("norms", "local-energy norm diagnostics"));
  CLI::App* s_oracle = add_common(app.add_subcommand("oracle", "conversion quadrature sweep"));
  CLI::App* s_verify = add_common(app.add_subcommand("verify", "compare fitted vs predicted"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    // Flags override the file.
    CLI::App* active = app.get_subcommands().front();
    auto passed = [&](const char* name) { return active->count(name) > 0; };
    cfg.out_dir = flags.out_dir;
    if (passed("--part")) cfg.part = flags.part;
    if (passed("--amp-v")) cfg.equation.amp_V = flags.equation.amp_V;
    if (passed("--amp-h")) cfg.equation.amp_h = flags.equation.amp_h;
    if (passed("--amp-a")) cfg.equation.amp_A = flags.equation.amp_A;
    if (passed("--ell")) cfg.equation.ell = flags.equation.ell;
    if (passed("--h")) cfg.grid.h = flags.grid.h;
    if (passed("--umax")) cfg.grid.u_max = flags.grid.u_max;
    if (passed("--vmax")) cfg.grid.v_max = flags.grid.v_max;
    if (passed("--r0")) cfg.r0 = flags.r0;
    if (passed("--tol")) cfg.tol = flags.tol;
    if (passed("--seed")) cfg.seed = flags.seed;
    if (passed("--eps")) cfg.eps = flags.eps;
    if (passed("--t-lo")) cfg.t_lo = flags.t_lo;
    if (passed("--t-hi")) cfg.t_hi = flags.t_hi;
    if (passed("--in")) cfg.in_path = flags.in_path;
    if (!sigma_flag.empty()) cfg.sigma = sigma_flag;
    if (!delta_flag.empty()) cfg.delta = delta_flag;
    // Keep the simulator's decay exponents in sync with the profile.
    if (cfg.sigma) cfg.equation.sigma = Rational::parse(*cfg.sigma).to_double();
    if (cfg.delta) cfg.equation.delta = Rational::parse(*cfg.delta).to_double();

    std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);

    if (s_predict->parsed()) return mode_predict(cfg, out);
    if (s_sim->parsed()) return mode_simulate(cfg, out);
    if (s_fit->parsed()) return mode_fit(cfg, out);
    if (s_norms->parsed()) return mode_norms(cfg, out);
    if (s_oracle->parsed()) return mode_oracle(cfg, out);
    if (s_verify->parsed()) return mode_verify(cfg, out);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cout << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cout << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 3;
  }
}
