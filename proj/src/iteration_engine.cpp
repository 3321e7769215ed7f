#include "wavetail/iteration_engine.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavetail {

namespace {

const ExtRational kOne(Rational(1));
const ExtRational kHalf(Rational(1, 2));
const ExtRational kTwo(Rational(2));
const ExtRational kThree(Rational(3));

ExtRational min_present(const std::optional<ExtRational>& x, const std::optional<ExtRational>& y) {
  if (x && y) return min(*x, *y);
  if (x) return *x;
  if (y) return *y;
  throw std::invalid_argument("profile must enable at least one coefficient family");
}

/// Multiply a pure-<u> bound by <r>^-1 (the conversion bounds <r>*w).
BoundExpr shift_r(BoundExpr expr) {
  for (auto& g : expr.groups)
    for (auto& t : g.terms) t.alpha = t.alpha + kOne;
  return expr;
}

struct StepBudget {
  int remaining;
  std::vector<TraceStep>* trace;
  void spend(const std::string& channel) {
    if (--remaining < 0) {
      std::ostringstream os;
      os << "channel '" << channel << "' exceeded its step budget (cycle suspected); trace:\n";
      for (const auto& s : *trace)
        os << "  [" << s.channel << " #" << s.step << "] " << s.bound.str() << " " << s.note
           << "\n";
      throw std::runtime_error(os.str());
    }
  }
};

TraceStep make_step(std::string channel, int step, SourceBound src, BoundExpr bound,
                    std::string note, bool replayable) {
  TraceStep t;
  t.channel = std::move(channel);
  t.step = step;
  t.source = src;
  t.bound = std::move(bound);
  t.note = std::move(note);
  t.replayable = replayable;
  return t;
}

/// Region-1 / Region-2 stitch: takes the min-group (Region 1 route) of the
/// first conversion output and the kappa term (Region 2 route) of the
/// second. convert_interior emits groups in that order.
BoundExpr stitch_regions(const BoundExpr& region1_src, const BoundExpr& region2_src) {
  BoundExpr out;
  out.groups.push_back(region1_src.groups.front());
  out.groups.push_back(region2_src.groups.back());
  return normalize(std::move(out));
}

/// 2 + T as a usable conversion exponent: the excluded alpha == 3 is
/// sidestepped by weakening the majorant to <r>^-(3-eps).
ExtRational saturation_alpha(const ExtRational& T) {
  ExtRational alpha = kTwo + T;
  if (alpha == kThree) alpha = alpha - ExtRational::eps();
  return alpha;
}

/// Runs the two-route ladder w <= <r>^-1 <u>^-e -> <u>^-(e+gain), saturating
/// at <u>^-(1+T). Shared by the part-two interior loop and the cone channel.
ChannelOutcome run_two_route_ladder(const std::string& channel, ExtRational e, ExtRational gain,
                                    ExtRational T, int& step, StepBudget& budget,
                                    std::vector<TraceStep>& trace) {
  const ExtRational target = kOne + T;
  const ExtRational alpha_sharp = kTwo + gain;
  const ExtRational alpha_sat = saturation_alpha(T);
  BoundExpr last = BoundExpr::single(DecayTerm{0, {}, {}, e});
  while (e < target) {
    budget.spend(channel);
    SourceBound src_sharp{0, alpha_sharp, kOne, e};
    SourceBound src_sat{0, alpha_sat, kOne, e};
    BoundExpr out_sharp = convert_interior(src_sharp);
    BoundExpr out_sat = convert_interior(src_sat);
    trace.push_back(make_step(channel, ++step, src_sharp, out_sharp, "region-1 majorant", true));
    trace.push_back(make_step(channel, ++step, src_sat, out_sat, "region-2 majorant", true));
    BoundExpr stitched = stitch_regions(out_sharp, out_sat);
    if (!stitched.log_free()) {
      BoundExpr absorbed = absorb_log(stitched);
      trace.push_back(make_step(channel, ++step, src_sat, absorbed,
                                "kappa(1) log absorbed into an eps-weaker power", false));
      stitched = std::move(absorbed);
    }
    e = e + gain;
    last = std::move(stitched);
    trace.push_back(
        make_step(channel, ++step, src_sharp, radial_to_temporal(last),
                  "radial-to-temporal recombined to <t+r>^-1 (interior regime r <= t)", false));
  }
  // Saturated: the Region 2 route pins <u>^-(1+T) exactly.
  ChannelOutcome out;
  out.u_exponent = last.dominant().eta;
  out.bound = shift_r(last);
  return out;
}

ChannelOutcome run_interior_ladder(const std::string& channel, ExtRational T, int& step,
                                   StepBudget& budget, std::vector<TraceStep>& trace) {
  const bool part_two = !(T < kOne);
  const ExtRational nu = part_two ? kOne - ExtRational::eps() : T;

  // In-pattern phase: n' full gain steps from the seed estimate, plus the
  // threshold-landing step n'+1.
  int n_prime = 0;
  while (kHalf + Rational(n_prime + 1) * nu < kOne) ++n_prime;

  SourceBound src{0, kTwo + nu, kOne, -kHalf};
  trace.push_back(make_step(channel, ++step, src, shift_r(BoundExpr::single(DecayTerm{0, {}, kOne, -kHalf})),
                            "seed from the initial <u>^(1/2)/<v> estimate (reconstructed)", false));
  BoundExpr out;
  for (int k = 1; k <= n_prime + 1; ++k) {
    budget.spend(channel);
    out = convert_interior(src);
    trace.push_back(make_step(channel, ++step, src, out, "conversion step", true));
    ExtRational e = Rational(k) * nu - kHalf;
    src = SourceBound{0, kTwo + nu, kOne, e};
    trace.push_back(
        make_step(channel, ++step, src, BoundExpr::single(DecayTerm{0, {}, kOne, e}),
                  "radial-to-temporal recombined to <t+r>^-1 (interior regime r <= t)", false));
  }

  // Case resolution at tau = 1/2 + (n'+1) nu in [1, 1+nu).
  const ExtRational tau = kHalf + Rational(n_prime + 1) * nu;
  ExtRational eta_star = tau;
  if (tau == kOne) {
    // Case (2): the kappa(1) log appears and is absorbed.
    SourceBound case2{0, kTwo + nu, kOne, kOne};
    BoundExpr raw = convert_interior(case2);
    trace.push_back(make_step(channel, ++step, case2, raw,
                              "case (2) threshold: 1/2+(n'+1)nu = 1; <t>~<t-r> re-expression",
                              true));
    BoundExpr absorbed = absorb_log(raw);
    trace.push_back(make_step(channel, ++step, case2, absorbed,
                              "log absorbed: back in case (1)", false));
    eta_star = absorbed.dominant().eta;
  }

  // Case (1) closing round: source <r>^-(2+nu) <v>^-1 <u>^-eta*.
  budget.spend(channel);
  SourceBound closing{0, kTwo + nu, kOne, eta_star};
  BoundExpr closed = convert_interior(closing);
  trace.push_back(make_step(channel, ++step, closing, closed, "case (1) closing conversion", true));

  if (!part_two) {
    ChannelOutcome res;
    res.u_exponent = closed.dominant().eta;  // 1 + nu exactly
    res.bound = shift_r(closed);
    return res;
  }

  // Part two: nu = 1 - eps ladder with the two-majorant min, saturating at
  // the coefficient's full decay 2+T in Region 2.
  ExtRational e = closed.dominant().eta;  // 1 + nu = 2 - eps
  return run_two_route_ladder(channel, e, nu, T, step, budget, trace);
}

}  // namespace

void CoefficientProfile::validate() const {
  if (!sigma && !delta)
    throw std::invalid_argument("profile: at least one of sigma, delta must be set");
  if (sigma && !(*sigma > Rational(0)))
    throw std::invalid_argument("profile: requires 0 < sigma < infinity");
  if (delta && !(*delta > Rational(0)))
    throw std::invalid_argument("profile: requires 0 < delta < infinity");
  if (part != 1 && part != 2) throw std::invalid_argument("profile: part must be 1 or 2");
  if (amp_h < 0 || amp_A < 0 || amp_V < 0)
    throw std::invalid_argument("profile: amplitudes must be nonnegative");
}

BoundExpr radial_to_temporal(const BoundExpr& expr) {
  BoundExpr out = expr;
  for (auto& g : out.groups) {
    for (auto& t : g.terms) {
      if (t.alpha.std() > Rational(1))
        throw std::invalid_argument(
            "radial_to_temporal: term has <r> exponent with standard part > 1");
      t.beta = t.beta + t.alpha;
      t.alpha = ExtRational(0);
    }
  }
  return out;
}

ChannelOutcome iterate_interior(const CoefficientProfile& profile, InteriorTarget target,
                                std::vector<TraceStep>& trace) {
  profile.validate();
  std::optional<ExtRational> s, d;
  if (profile.sigma) s = ExtRational(*profile.sigma);
  if (profile.delta) d = ExtRational(*profile.delta);
  ExtRational T = target == InteriorTarget::Potential
                      ? min_present(s ? std::optional<ExtRational>(kOne + *s) : std::nullopt, d)
                      : min_present(s, d);
  const Rational m = min(min(profile.sigma.value_or(Rational(1)), profile.delta.value_or(Rational(1))),
                         Rational(1));
  // The sweep bound plus headroom for large targets (the part-two ladder
  // takes about one step per unit of target).
  StepBudget budget{4 * static_cast<int>(std::ceil(3.0 / m.to_double())) + 12 +
                        4 * static_cast<int>(std::ceil(T.std().to_double())),
                    &trace};
  int step = 0;
  return run_interior_ladder(target == InteriorTarget::Potential ? "potential" : "lockstep", T,
                             step, budget, trace);
}

ChannelOutcome iterate_cone(const CoefficientProfile& profile, std::vector<TraceStep>& trace) {
  profile.validate();
  if (!profile.sigma)
    throw std::invalid_argument("iterate_cone: requires sigma (metric/first-order channel)");
  const ExtRational q =
      profile.part == 2 ? ExtRational(Rational(1) + *profile.sigma) : ExtRational(*profile.sigma);
  std::optional<ExtRational> d;
  if (profile.delta) d = ExtRational(*profile.delta);
  const ExtRational T = min_present(std::optional<ExtRational>(q), d);
  const ExtRational gain = min(T, kOne - ExtRational::eps());

  const Rational m = min(min(*profile.sigma, profile.delta.value_or(Rational(1))), Rational(1));
  StepBudget budget{4 * static_cast<int>(std::ceil(3.0 / m.to_double())) + 12 +
                        4 * static_cast<int>(std::ceil(T.std().to_double())),
                    &trace};

  int step = 0;
  ExtRational e = q - kHalf;
  SourceBound seed{0, kTwo + q, kOne, -kHalf};
  trace.push_back(make_step("cone", ++step, seed,
                            shift_r(BoundExpr::single(DecayTerm{0, {}, {}, e})),
                            "cone-support reduction of d_t v (seed, reconstructed)", false));
  if (!(e < kOne + T)) {
    // The seed already beats the saturation level; one conversion pins 1+T.
    budget.spend("cone");
    SourceBound src_sat{0, saturation_alpha(T), kOne, e};
    BoundExpr out = convert_interior(src_sat);
    trace.push_back(make_step("cone", ++step, src_sat, out, "saturation conversion", true));
    BoundExpr region2;
    region2.groups.push_back(out.groups.back());
    ChannelOutcome res;
    res.u_exponent = region2.dominant().eta;
    res.bound = shift_r(region2);
    return res;
  }
  return run_two_route_ladder("cone", e, gain, T, step, budget, trace);
}

ChannelOutcome iterate_exterior(const CoefficientProfile& profile,
                                std::vector<TraceStep>& trace) {
  profile.validate();
  std::optional<ExtRational> s1, d;
  if (profile.sigma) s1 = kOne + ExtRational(*profile.sigma);
  if (profile.delta) d = ExtRational(*profile.delta);
  const ExtRational a = min_present(s1, d);

  ExteriorState state;
  state.phase = ExteriorState::Phase::A;
  state.N = 0;
  state.a = a;

  auto integrand = [](const ExteriorState& st) {
    SourceBound s;
    switch (st.phase) {
      case ExteriorState::Phase::A:
        s = SourceBound{0, ExtRational(Rational(3, 2)) + Rational(st.N + 1) * st.a, {},
                        Rational(st.N) * st.a};
        break;
      case ExteriorState::Phase::B:
        s = SourceBound{0, kOne + Rational(st.N + 1) * st.a, {},
                        kHalf + Rational(st.N + 1) * st.a};
        break;
      case ExteriorState::Phase::Tail:
        s = SourceBound{0, kTwo + st.a, {}, st.theta};
        break;
    }
    return s;
  };

  const int limit = 2 * static_cast<int>(std::ceil(1.0 / a.std().to_double())) + 2;
  int step = 0;
  {
    TraceStep seed = make_step("exterior", ++step, integrand(state), state.bound(),
                               "seeded from the initial estimate (reconstructed)", false);
    seed.ext_state = state;
    trace.push_back(std::move(seed));
  }
  for (int i = 0; i < limit; ++i) {
    ExteriorStepResult res = exterior_step(state);
    if (std::holds_alternative<FinalBound>(res)) {
      const FinalBound& f = std::get<FinalBound>(res);
      TraceStep row = make_step("exterior", ++step, integrand(state), f.expr,
                                "terminal exterior bound", true);
      row.ext_state = state;
      trace.push_back(std::move(row));
      ChannelOutcome out;
      out.u_exponent = f.u_exponent;
      out.bound = f.expr;
      return out;
    }
    const ExteriorState& next = std::get<ExteriorState>(res);
    TraceStep row =
        make_step("exterior", ++step, integrand(state), next.bound(), next.str(), true);
    row.ext_state = state;
    trace.push_back(std::move(row));
    state = next;
  }
  throw std::runtime_error("iterate_exterior: did not terminate within the step bound");
}

PredictionReport predict(const CoefficientProfile& profile) {
  profile.validate();
  PredictionReport report;
  report.profile = profile;

  std::optional<Rational> s = profile.sigma, d = profile.delta;
  auto min_opt = [](std::optional<Rational> x, std::optional<Rational> y) {
    if (x && y) return min(*x, *y);
    return x ? *x : *y;
  };

  ChannelOutcome ext = iterate_exterior(profile, report.trace);
  report.channel_bounds["exterior"] = ext.bound;
  ChannelOutcome pot = iterate_interior(profile, InteriorTarget::Potential, report.trace);
  report.channel_bounds["potential"] = pot.bound;

  const Rational pot_target = min_opt(s ? std::optional<Rational>(Rational(1) + *s) : std::nullopt, d);
  auto check = [&](const std::string& name, const Rational& computed, const Rational& expected) {
    if (computed != expected) {
      std::ostringstream os;
      os << "channel '" << name << "' terminated at <t-r> exponent " << computed.str()
         << ", expected " << expected.str();
      report.discrepancies.push_back(os.str());
    }
  };
  check("exterior", ext.u_exponent.std(), Rational(1) + pot_target);
  check("potential", pot.u_exponent.std(), Rational(1) + pot_target);

  Rational global = min(ext.u_exponent.std(), pot.u_exponent.std());
  if (s) {
    ChannelOutcome cone = iterate_cone(profile, report.trace);
    report.channel_bounds["cone"] = cone.bound;
    const Rational cone_target =
        profile.part == 2 ? min_opt(std::optional<Rational>(Rational(1) + *s), d)
                          : min_opt(s, d);
    check("cone", cone.u_exponent.std(), Rational(1) + cone_target);
    global = min(global, cone.u_exponent.std());
  }

  const Rational closed_form = profile.part == 2
                                   ? Rational(1) + min_opt(s ? std::optional<Rational>(Rational(1) + *s)
                                                             : std::nullopt,
                                                           d)
                                   : Rational(1) + min_opt(s, d);
  if (global != closed_form) {
    std::ostringstream os;
    os << "assembled exponent " << global.str() << " does not match the closed form "
       << closed_form.str();
    report.discrepancies.push_back(os.str());
  }

  report.theorem_exponent = global;
  DecayTerm final_term;
  final_term.beta = kOne;
  final_term.eta = ExtRational(global);
  report.final = BoundExpr::single(final_term);

  report.notes.push_back(
      "implicit constants are untracked; only exponents and log powers are asserted");
  report.notes.push_back(
      "conversion steps assume vanishing data for each iterate; data enters only through the "
      "seed estimate");
  report.notes.push_back(
      "beta slots are read against <t> inside interior-regime steps (valid for r <= t)");
  return report;
}

std::string render_step_table(const PredictionReport& report) {
  std::ostringstream os;
  os << "part " << report.profile.part;
  if (report.profile.sigma) os << "  sigma=" << report.profile.sigma->str();
  if (report.profile.delta) os << "  delta=" << report.profile.delta->str();
  os << "  theorem_exponent=" << report.theorem_exponent.str() << "\n";
  os << "---------------------------------------------------------------\n";
  for (const auto& s : report.trace) {
    os << "[" << s.channel << " #" << s.step << "] src: " << s.source.str() << "\n";
    os << "    bound: " << s.bound.str();
    if (!s.note.empty()) os << "   (" << s.note << ")";
    os << "\n";
  }
  for (const auto& d : report.discrepancies) os << "DISCREPANCY: " << d << "\n";
  return os.str();
}

}  // namespace wavetail
