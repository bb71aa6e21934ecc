#include "szegolab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <utility>

namespace szegolab {

namespace {

class PrecGuard {
 public:
  explicit PrecGuard(long bits) : saved_(Real::default_bits()) { Real::set_default_bits(bits); }
  ~PrecGuard() { Real::set_default_bits(saved_); }
  PrecGuard(const PrecGuard&) = delete;
  PrecGuard& operator=(const PrecGuard&) = delete;

 private:
  long saved_;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt_real(const Real& r) {
  if (r.is_nan()) return "nan";
  if (r.is_inf()) return r.sign() < 0 ? "-inf" : "inf";
  std::ostringstream o;
  o << std::setprecision(15) << r.to_double();
  return o.str();
}

std::string fmt_cnum(const CNum& z) {
  std::string s = fmt_real(z.re);
  std::string i = fmt_real(z.im);
  if (!i.empty() && i[0] != '-') s += "+";
  return s + i + "i";
}

void add_crit(ScenarioReport& rep, std::string name, std::string expected, std::string measured,
              std::string tol, bool pass) {
  rep.criteria.push_back(
      {std::move(name), std::move(expected), std::move(measured), std::move(tol), pass});
}

Json points_json(const std::vector<CNum>& pts) {
  Json arr = Json::array();
  for (const CNum& p : pts) arr.push_back(fmt_cnum(p));
  return arr;
}

// Fitted exponential model restricted to its first-layer generators: drop
// every exponent already generated (as a triple product or deeper) by smaller
// ones, and every exponent at or beyond the cube scale where the fit carries
// no first-layer information.
ExponentialModel reduce_model(const ExponentialModel& fitted, const Real& eps) {
  if (fitted.empty()) return fitted;
  Real rho_min = Real::pos_inf(Prec{fitted.tail_rate.bits()});
  std::vector<CNum> mus;
  for (const auto& [c, mu] : fitted.terms) {
    mus.push_back(mu);
    Real m = mag(mu);
    if (m < rho_min) rho_min = m;
  }
  Real rcut = rho_min * rho_min * rho_min * Real(1.5);
  ExteriorSet T = make_exterior_set(mus, rcut, eps);
  ExteriorSet W = reduce_generated(T);
  std::vector<std::pair<CNum, CNum>> kept;
  for (const auto& term : fitted.terms) {
    if (set_contains(W, term.second)) kept.push_back(term);
  }
  return make_exponential_model(std::move(kept), fitted.tail_rate);
}

Real model_min_mod(const ExponentialModel& m) {
  Real out = Real::pos_inf(Prec{Real::default_bits()});
  for (const auto& [c, mu] : m.terms) {
    Real v = mag(mu);
    if (v < out) out = v;
  }
  return out;
}

Real model_max_mod(const ExponentialModel& m) {
  Real out(0L);
  for (const auto& [c, mu] : m.terms) {
    Real v = mag(mu);
    if (v > out) out = v;
  }
  return out;
}

// Radius estimate with "entire" mapped to +inf instead of an error.
Real radius_or_inf(const LaurentSlice& slice, AnalyticityEstimate* est_out) {
  try {
    AnalyticityEstimate est = analyticity_radius(slice);
    if (est_out) *est_out = est;
    return est.radius;
  } catch (const SzegoLabError& e) {
    if (e.code() == ErrorCode::WindowBelowFloor || e.code() == ErrorCode::WindowTooShort) {
      return Real::pos_inf(Prec{slice.bits});
    }
    throw;
  }
}

bool close_within(const CNum& u, const CNum& v, const Real& eps) {
  Real scale = max(Real(1L), (mag(u) + mag(v)) * Real(0.5));
  return mag(u - v) < eps * scale;
}

// Rate of |mags[n]| over [lo, hi], with hi clipped to the last index clearly
// above the floor.  Returns false when too little of the window survives.
bool clipped_rate(const std::vector<Real>& mags, long lo, long hi, const Real& floor,
                  Real* rate_out, long* hi_out) {
  long usable = lo - 1;
  for (long n = lo; n <= hi && n < static_cast<long>(mags.size()); ++n) {
    if (mags[static_cast<std::size_t>(n)] > Real(10L) * floor) {
      usable = n;
    }
  }
  if (usable - lo + 1 < 8) return false;
  RateEstimate est = fit_decay_rate(mags, lo, usable, floor);
  *rate_out = est.rate;
  if (hi_out) *hi_out = usable;
  return true;
}

}  // namespace

FamilySpec family_rogers_szego(const Real& q) { return {"rogers-szego", q}; }
FamilySpec family_single_moment(const Real& a) { return {"single-moment", a}; }
FamilySpec family_zero() { return {"zero", Real(0L)}; }

VerblunskySequence family_sequence(const FamilySpec& f, long bits) {
  if (f.name == "rogers-szego") return verblunsky_rogers_szego(f.param, bits);
  if (f.name == "single-moment") return verblunsky_single_moment(f.param, bits);
  if (f.name == "zero") return verblunsky_explicit({}, bits);
  fail(ErrorCode::BadInput, "unknown family: " + f.name);
}

Weight family_weight(const FamilySpec& f, long bits) {
  if (f.name == "rogers-szego") return weight_rogers_szego(f.param, bits);
  if (f.name == "single-moment") return weight_single_moment(f.param, bits);
  if (f.name == "zero") return weight_constant(bits);
  fail(ErrorCode::BadInput, "unknown family: " + f.name);
}

Real family_outer_scale(const FamilySpec& f, long bits) {
  Prec p{bits};
  if (f.name == "rogers-szego") {
    return Real(1L, p) / sqrt(Real(f.param));
  }
  if (f.name == "single-moment") {
    Real a = f.param;
    Real one(1L, p);
    return (one + sqrt(one - a * a)) / a;
  }
  if (f.name == "zero") return Real::pos_inf(p);
  fail(ErrorCode::BadInput, "unknown family: " + f.name);
}

bool ScenarioReport::all_pass() const {
  for (const Criterion& c : criteria) {
    if (!c.pass) return false;
  }
  return true;
}

Json ScenarioReport::to_json() const {
  Json j;
  j["scenario"] = scenario;
  j["inputs"] = inputs;
  j["measurements"] = measurements;
  Json arr = Json::array();
  for (const Criterion& c : criteria) {
    Json cj;
    cj["name"] = c.name;
    cj["expected"] = c.expected;
    cj["measured"] = c.measured;
    cj["tol"] = c.tol;
    cj["pass"] = c.pass;
    arr.push_back(std::move(cj));
  }
  j["criteria"] = std::move(arr);
  j["runtime_ms"] = runtime_ms;
  return j;
}

ScenarioReport verify_thm21(const FamilySpec& f, long bits) {
  PrecGuard guard(bits);
  Stopwatch sw;
  ScenarioReport rep;
  rep.scenario = "thm21";
  const Real rho(1.5);
  const long M = 512;
  const long N = 600;
  rep.inputs["family"] = f.name;
  rep.inputs["param"] = fmt_real(f.param);
  rep.inputs["precision_bits"] = bits;
  rep.inputs["rho"] = fmt_real(rho);
  rep.inputs["grid"] = M;
  rep.inputs["series_degree"] = N;

  if (f.name == "zero") {
    rep.measurements["note"] = "difference is identically zero; analytic everywhere";
    add_crit(rep, "radius_above_cutoff", "analytic beyond every cutoff", "inf", "none", true);
    rep.runtime_ms = sw.ms();
    return rep;
  }

  VerblunskySequence seq = family_sequence(f, bits);
  Real R = family_outer_scale(f, bits);
  Real R3 = R * R * R;
  SzegoData sd = make_szego_data(seq, N, 20);
  TwoPathLaurent tp = r_minus_S_laurent(sd, rho, M);
  AnalyticityEstimate est;
  Real radius = radius_or_inf(tp.slice, &est);

  rep.measurements["radius"] = fmt_real(radius);
  rep.measurements["radius_stderr"] = fmt_real(est.stderr_);
  rep.measurements["fit_window"] = Json::array({est.window_lo, est.window_hi});
  rep.measurements["two_path_disagreement"] = fmt_real(tp.disagreement);
  rep.measurements["two_path_bound"] = fmt_real(tp.bound);
  rep.measurements["alpha_decay_ratio"] = fmt_real(sd.alpha_ratio);
  rep.measurements["dinv_radius"] = fmt_real(sd.dinv_radius);

  Real lo_band = R3 * Real(0.95), hi_band = R3 * Real(1.05);
  bool in_band = radius.is_finite() && radius >= lo_band && radius <= hi_band;
  add_crit(rep, "radius_in_band",
           "[" + fmt_real(lo_band) + ", " + fmt_real(hi_band) + "]", fmt_real(radius),
           "5% of cube scale", in_band);
  add_crit(rep, "two_path_agreement", "<= " + fmt_real(tp.bound), fmt_real(tp.disagreement),
           "combined floor/alias bound", !(tp.disagreement > tp.bound));
  rep.runtime_ms = sw.ms();
  return rep;
}

ScenarioReport verify_thm54(const FamilySpec& f, long bits) {
  PrecGuard guard(bits);
  Stopwatch sw;
  ScenarioReport rep;
  rep.scenario = "thm54";
  const long M = 512;
  const long Jmax = 220;
  const long Nser = 300;
  const long ncross = 48;
  rep.inputs["family"] = f.name;
  rep.inputs["param"] = fmt_real(f.param);
  rep.inputs["precision_bits"] = bits;
  rep.inputs["grid"] = M;
  rep.inputs["tail_terms"] = Jmax;
  rep.inputs["series_degree"] = Nser;

  if (f.name == "zero") {
    rep.measurements["note"] = "empty model; correction vanishes and the difference is zero";
    add_crit(rep, "radius_above_cutoff", "analytic beyond every cutoff", "inf", "none", true);
    add_crit(rep, "q3_poles_match_generated", "empty set", "empty set", "1e-9", true);
    rep.runtime_ms = sw.ms();
    return rep;
  }

  VerblunskySequence seq = family_sequence(f, bits);
  std::vector<CNum> al = alphas_upto(seq, Jmax);
  PronyFit fit = prony_fit(std::vector<CNum>(al.begin(), al.begin() + 121), 4);
  Real merge_eps(1e-6);
  // The raw Hankel exponents carry ~1e-12 error from the unmodeled ladder
  // tail; the cube-scale pole of the correction then misses the true
  // singularity by ~3*mu^2 times that, leaving a remnant that caps the
  // corrected radius near the cube scale.  Polishing against the late tail
  // pushes the exponent error far below the slice floor.
  ExponentialModel model = refine_exponential_model(reduce_model(fit.model, merge_eps), al);
  if (model.empty()) fail(ErrorCode::BadInput, "model reduction left no generator terms");
  Real Rhat = model_min_mod(model);
  Real Rhat3 = Rhat * Rhat * Rhat;
  Real Rhat5 = Rhat3 * Rhat * Rhat;
  Real rho = sqrt(model_max_mod(model) * Rhat3);
  rep.measurements["model"] = model_to_json(model);
  rep.measurements["prony_saturated"] = fit.saturated;
  rep.measurements["rho"] = fmt_real(rho);

  SzegoData sd = make_szego_data(seq, Nser, 40);
  auto fvals = circle_samples(
      [&](const CNum& z) {
        return r_minus_s_pointwise(al, sd, z, Jmax) - q3_term(model, z);
      },
      rho, M, bits);
  LaurentSlice slice = laurent_from_samples(fvals, rho, bits);

  // Independent check on the low-index coefficients: convolution for the
  // uncorrected difference minus the correction's outer-annulus expansion.
  std::vector<CNum> ell = q3_outer_coeffs(model, ncross, bits);
  Real cross(0L);
  for (long n = 0; n <= ncross; ++n) {
    CNum conv(0, Prec{bits});
    for (long k = 0; n + k <= sd.dinv.degree(); ++k) {
      conv += conj(sd.d[static_cast<std::size_t>(k)]) *
              sd.dinv[static_cast<std::size_t>(n + k)];
    }
    if (n <= sd.S.degree()) conv -= sd.S[static_cast<std::size_t>(n)];
    CNum diff = conv - ell[static_cast<std::size_t>(n)] - slice.at(n);
    Real d = mag(diff);
    if (d > cross) cross = d;
  }
  Real cross_bound = Real(1000L) * max(slice.floor, sd.dinv.floor) +
                     Real(10L) * slice.alias_bound + Real(100L) * sd.dinv_tail;

  AnalyticityEstimate est;
  Real radius = radius_or_inf(slice, &est);
  rep.measurements["radius"] = fmt_real(radius);
  rep.measurements["radius_stderr"] = fmt_real(est.stderr_);
  rep.measurements["fit_window"] = Json::array({est.window_lo, est.window_hi});
  rep.measurements["cross_path_disagreement"] = fmt_real(cross);
  rep.measurements["cross_path_bound"] = fmt_real(cross_bound);

  Real need = Rhat5 * Real(0.93);
  add_crit(rep, "radius_ge_fifth_power", ">= " + fmt_real(need), fmt_real(radius),
           "7% of fifth-power scale", !(radius < need));
  add_crit(rep, "cross_path_agreement", "<= " + fmt_real(cross_bound), fmt_real(cross),
           "combined floor/alias bound", !(cross > cross_bound));

  // The correction's pole set against the generated-set prediction from the
  // fitted generators.
  {
    Real pole_eps(1e-9);
    std::vector<CNum> qp = q3_poles(model, pole_eps);
    std::vector<CNum> gens;
    for (const auto& [c, mu] : model.terms) gens.push_back(mu);
    Real rcut = model_max_mod(model);
    rcut = rcut * rcut * rcut * Real(1.5);
    ExteriorSet TW = make_exterior_set(gens, rcut, pole_eps);
    ExteriorSet layer1 = g_layer(TW, 1);
    ExteriorSet layer2 = g_layer(TW, 2);
    std::vector<CNum> predicted = layer1.points;
    for (const CNum& p : layer2.points) {
      bool dup = false;
      for (const CNum& q : predicted) {
        if (close_within(p, q, pole_eps)) dup = true;
      }
      if (!dup) predicted.push_back(p);
    }
    std::sort(predicted.begin(), predicted.end(), [](const CNum& u, const CNum& v) {
      Real mu = mag(u), mv = mag(v);
      if (mu != mv) return mu < mv;
      return arg(u) < arg(v);
    });
    bool match = qp.size() == predicted.size();
    for (std::size_t i = 0; match && i < qp.size(); ++i) {
      match = close_within(qp[i], predicted[i], pole_eps);
    }
    rep.measurements["q3_poles"] = points_json(qp);
    rep.measurements["generated_prediction"] = points_json(predicted);
    add_crit(rep, "q3_poles_match_generated", Json(points_json(predicted)).dump(),
             Json(points_json(qp)).dump(), "1e-9", match);
  }

  // Coefficient-series pole detection at the fifth-power point for the
  // single-moment family (the higher-annulus statement, checked without any
  // symbolic fifth-order correction).
  if (f.name == "single-moment") {
    std::vector<CNum> scoef(sd.S.coeffs.begin(), sd.S.coeffs.begin() + 33);
    PowerSeries sser = make_power_series(std::move(scoef), bits);
    PoleReport pr = pade_poles(sser, 8);
    Real best = Real::pos_inf(Prec{bits});
    CNum best_pole(0, Prec{bits});
    for (const auto& [z, res] : pr.poles) {
      Real d = mag(z - CNum(Rhat5));
      if (d < best) {
        best = d;
        best_pole = z;
      }
    }
    rep.measurements["s_series_pole_near_fifth_power"] = fmt_cnum(best_pole);
    add_crit(rep, "s_series_pole_fifth_power", fmt_real(Rhat5), fmt_cnum(best_pole),
             "1e-3 relative", best < Real(1e-3) * Rhat5);

    std::vector<Real> smags;
    for (const CNum& c : sd.S.coeffs) smags.push_back(mag(c));
    RateEstimate sest = fit_decay_rate(smags, 5, 60, sd.S.floor);
    Real sradius = Real(1L) / sest.rate;
    rep.measurements["s_series_radius"] = fmt_real(sradius);
    add_crit(rep, "s_series_radius_first_power",
             "[" + fmt_real(Rhat * Real(0.95)) + ", " + fmt_real(Rhat * Real(1.05)) + "]",
             fmt_real(sradius), "5%",
             sradius >= Rhat * Real(0.95) && sradius <= Rhat * Real(1.05));
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

ScenarioReport verify_thm44(const FamilySpec& f, const Real& rmax, long bits) {
  PrecGuard guard(bits);
  Stopwatch sw;
  ScenarioReport rep;
  rep.scenario = "thm44";
  rep.inputs["family"] = f.name;
  rep.inputs["param"] = fmt_real(f.param);
  rep.inputs["precision_bits"] = bits;
  rep.inputs["rmax"] = fmt_real(rmax);
  Real merge_eps(1e-6);

  if (f.name == "zero") {
    rep.measurements["note"] = "no exponents and no poles; inclusions hold vacuously";
    add_crit(rep, "T_in_G_of_P", "empty", "empty", "merge 1e-6", true);
    add_crit(rep, "P_in_G_of_T", "empty", "empty", "merge 1e-6", true);
    rep.runtime_ms = sw.ms();
    return rep;
  }

  VerblunskySequence seq = family_sequence(f, bits);
  std::vector<CNum> al = alphas_upto(seq, 120);
  PronyFit fit = prony_fit(al, 4);
  // Polish the exponents: the raw Hankel estimate of the highest retained
  // rung can sit ~1e-5 off, which the 1e-6 set-inclusion merge would reject.
  // Rungs beyond the truncation radius are dropped before polishing: they
  // cannot enter T, and their narrow observable band makes the joint
  // refinement fragile.
  std::vector<std::pair<CNum, CNum>> within;
  for (const auto& term : fit.model.terms) {
    if (mag(term.second) <= rmax * Real(1.2)) within.push_back(term);
  }
  ExponentialModel refined = refine_exponential_model(
      make_exponential_model(std::move(within), fit.model.tail_rate), al);
  std::vector<CNum> mus;
  for (const auto& [c, mu] : refined.terms) mus.push_back(mu);
  ExteriorSet T = make_exterior_set(mus, rmax, merge_eps);

  PowerSeries dser = dinv_series(seq, 40);
  PoleReport pr = pade_poles(dser, 12);
  std::vector<CNum> locs;
  for (const auto& [z, res] : pr.poles) locs.push_back(z);
  ExteriorSet P = make_exterior_set(locs, rmax, merge_eps);

  ExteriorSet GT = g_full(T);
  ExteriorSet GP = g_full(P);
  bool t_in = set_subset(T, GP);
  bool p_in = set_subset(P, GT);

  rep.measurements["T"] = points_json(T.points);
  rep.measurements["P"] = points_json(P.points);
  rep.measurements["G_of_T"] = points_json(GT.points);
  rep.measurements["G_of_P"] = points_json(GP.points);
  rep.measurements["prony_saturated"] = fit.saturated;
  rep.measurements["pade_order"] = Json::array({pr.order.first, pr.order.second});
  rep.measurements["pade_spurious_rejected"] = pr.spurious_rejected;
  Json retried = Json::array();
  for (long m : pr.retried_orders) retried.push_back(m);
  rep.measurements["pade_retried_orders"] = std::move(retried);

  add_crit(rep, "T_in_G_of_P", "every exponent inside the generated pole set",
           t_in ? "holds" : "violated", "merge 1e-6", t_in);
  add_crit(rep, "P_in_G_of_T", "every pole inside the generated exponent set",
           p_in ? "holds" : "violated", "merge 1e-6", p_in);
  rep.runtime_ms = sw.ms();
  return rep;
}

ScenarioReport verify_predictors(const FamilySpec& f, long bits) {
  PrecGuard guard(bits);
  Stopwatch sw;
  ScenarioReport rep;
  rep.scenario = "predictors";
  rep.inputs["family"] = f.name;
  rep.inputs["param"] = fmt_real(f.param);
  rep.inputs["precision_bits"] = bits;
  const long n_lo = 10, n_hi = 60;
  rep.inputs["n_window"] = Json::array({n_lo, n_hi});
  const char* zs[] = {"0.02", "0.05", "0.1"};

  VerblunskySequence seq = family_sequence(f, bits);
  ExponentialModel model;
  Real R3inv(0L);
  Real Rhat = Real::pos_inf(Prec{bits});
  SzegoData sd;
  bool trivial = f.name == "zero";
  if (!trivial) {
    std::vector<CNum> al = alphas_upto(seq, 120);
    PronyFit fit = prony_fit(al, 4);
    model = refine_exponential_model(reduce_model(fit.model, Real(1e-6)), al);
    Rhat = model_min_mod(model);
    R3inv = Real(1L) / (Rhat * Rhat * Rhat);
    sd = make_szego_data(seq, 120, 40);
    rep.measurements["model"] = model_to_json(model);
  }

  for (const char* ztxt : zs) {
    Real zr = Real::from_string(ztxt, Prec{bits});
    CNum z(zr);
    std::vector<std::pair<CNum, CNum>> vals = phi_values_at(seq, n_hi, z);
    std::vector<Real> emags, etmags;
    CNum dinv_z = trivial ? CNum(1, Prec{bits}) : eval_series(sd.dinv, z);
    for (long n = 0; n <= n_hi; ++n) {
      CNum pred_phi(0, Prec{bits}), pred_star(0, Prec{bits});
      if (!trivial) {
        pred_phi = predictor_phi(model, sd, n, z);
        pred_star = predictor_phistar(model, sd, n, z);
      }
      emags.push_back(mag(vals[static_cast<std::size_t>(n)].first - pred_phi));
      etmags.push_back(mag(vals[static_cast<std::size_t>(n)].second - dinv_z - pred_star));
    }
    Real emax(0L), etmax(0L);
    for (const Real& v : emags) {
      if (v > emax) emax = v;
    }
    for (const Real& v : etmags) {
      if (v > etmax) etmax = v;
    }
    Real efloor = magnitude_floor(bits, emax);
    Real etfloor = magnitude_floor(bits, etmax);

    Real scale = max(R3inv, zr);
    Real ebound = scale + Real(0.02);
    Real etbound = scale * Real(1.05) / Rhat + Real(0.02);
    if (trivial) etbound = Real(0.02);

    Real erate(0L);
    long ehi = 0;
    bool have_e = clipped_rate(emags, n_lo, n_hi, efloor, &erate, &ehi);
    std::string ename = std::string("E_rate_z_") + ztxt;
    rep.measurements[ename + "_window_hi"] = have_e ? Json(ehi) : Json("below floor");
    add_crit(rep, ename, "<= " + fmt_real(ebound),
             have_e ? fmt_real(erate) : "below floor", "+0.02 additive",
             !have_e || !(erate > ebound));

    Real etrate(0L);
    long ethi = 0;
    bool have_et = clipped_rate(etmags, n_lo, n_hi, etfloor, &etrate, &ethi);
    std::string etname = std::string("Etilde_rate_z_") + ztxt;
    rep.measurements[etname + "_window_hi"] = have_et ? Json(ethi) : Json("below floor");
    add_crit(rep, etname, "<= " + fmt_real(etbound),
             have_et ? fmt_real(etrate) : "below floor", "+0.02 additive over 5% factor",
             !have_et || !(etrate > etbound));
  }
  rep.runtime_ms = sw.ms();
  return rep;
}

std::vector<ScenarioReport> verify_all() {
  FamilySpec rs = family_rogers_szego(Real(1L, Prec{512}) / Real(4L, Prec{512}));
  FamilySpec sm = family_single_moment(Real::from_string("0.8", Prec{512}));
  std::vector<ScenarioReport> out;
  out.push_back(verify_thm21(rs));
  out.push_back(verify_thm21(sm));
  out.push_back(verify_thm44(rs, Real(40L)));
  out.push_back(verify_thm44(sm, Real(40L)));
  out.push_back(verify_thm54(rs));
  out.push_back(verify_thm54(sm));
  out.push_back(verify_predictors(rs));
  out.push_back(verify_predictors(sm));
  return out;
}

}  // namespace szegolab
