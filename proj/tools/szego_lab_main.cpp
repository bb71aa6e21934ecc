// szego-lab: command-line front end for the configurable-precision toolkit.
//
// Subcommands cover coefficient generation, orthogonal-polynomial recursion,
// series construction for the outer function, annulus analysis of the
// reflected-ratio difference, exponential-sum fitting, rational pole
// detection, generated-set algebra, the weight-to-coefficients inverse, and
// the verification scenarios.
//
// Exit codes: 0 success, 1 usage error, 2 domain error (structured JSON on
// stderr).

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "szegolab/harness.hpp"

namespace {

using namespace szegolab;

struct GlobalOpts {
  long bits = 0;  // 0 = per-subcommand default
  std::string out;
  std::string format;  // "", "json", "csv"

  long bits_or(long fallback) const { return bits > 0 ? bits : fallback; }
  std::string format_or(const std::string& fallback) const {
    return format.empty() ? fallback : format;
  }
};

struct FamilyOpts {
  std::string family = "single-moment";
  std::string q = "0.25";
  std::string a = "0.8";
  std::string params;  // generic override for whichever parameter applies
};

void add_family_options(CLI::App* sub, FamilyOpts& fo) {
  sub->add_option("--family", fo.family, "rogers-szego | single-moment | zero")
      ->capture_default_str();
  sub->add_option("--q", fo.q, "rogers-szego parameter, 0 < q < 1")->capture_default_str();
  sub->add_option("--a", fo.a, "single-moment parameter, 0 < a < 1")->capture_default_str();
  sub->add_option("--params", fo.params, "override the family's parameter value");
}

FamilySpec make_family(const FamilyOpts& fo, long bits) {
  Prec p{bits};
  if (fo.family == "rogers-szego") {
    Real q = Real::from_string(fo.params.empty() ? fo.q : fo.params, p);
    if (!(q > Real(0L) && q < Real(1L))) fail(ErrorCode::BadInput, "q must lie in (0,1)");
    return family_rogers_szego(q);
  }
  if (fo.family == "single-moment") {
    Real a = Real::from_string(fo.params.empty() ? fo.a : fo.params, p);
    if (!(a > Real(0L) && a < Real(1L))) fail(ErrorCode::BadInput, "a must lie in (0,1)");
    return family_single_moment(a);
  }
  if (fo.family == "zero") return family_zero();
  fail(ErrorCode::BadInput, "unknown family: " + fo.family);
}

void emit(const GlobalOpts& g, const std::string& payload) {
  std::string text = payload;
  if (text.empty() || text.back() != '\n') text += '\n';
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.out, text);
  }
}

void emit_json(const GlobalOpts& g, const Json& j) { emit(g, j.dump(2)); }

// Coefficient lists arrive as CSV rows, record arrays, [[re,im],...] arrays,
// or a serialized sequence object with an "alphas" field.
std::vector<CNum> load_coeff_list(const std::string& path, long bits) {
  std::string text = read_text_file(path);
  std::size_t at = text.find_first_not_of(" \t\r\n");
  if (at != std::string::npos && (text[at] == '{' || text[at] == '[')) {
    Json j = parse_json_text(text);
    if (j.is_object() && j.contains("alphas")) {
      std::vector<CNum> out;
      for (const Json& e : j["alphas"]) out.push_back(cnum_from_json(e, bits));
      return out;
    }
    if (j.is_array() && !j.empty() && j.front().is_object()) return series_from_json(j, bits);
    std::vector<CNum> out;
    for (const Json& e : j) out.push_back(cnum_from_json(e, bits));
    return out;
  }
  return series_from_csv(text, bits);
}

Json laurent_records(const LaurentSlice& slice) {
  Json arr = Json::array();
  for (long n = slice.n_min; n <= slice.n_max(); ++n) {
    Json row;
    row["n"] = n;
    row["re"] = real_to_json(slice.at(n).re);
    row["im"] = real_to_json(slice.at(n).im);
    arr.push_back(std::move(row));
  }
  return arr;
}

std::string laurent_csv(const LaurentSlice& slice) {
  std::string out = "n,re,im\n";
  for (long n = slice.n_min; n <= slice.n_max(); ++n) {
    out += std::to_string(n) + "," + slice.at(n).re.to_string() + "," +
           slice.at(n).im.to_string() + "\n";
  }
  return out;
}

long next_pow2_at_least(long n) {
  long m = 8;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "configurable-precision toolkit for unit-circle recursion coefficients, "
      "outer-function series, and their exterior asymptotics"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--precision-bits", g.bits,
                 "working precision in bits (default 256; verify picks per-scenario defaults)");
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_option("--format", g.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // --- alphas ---
  auto* c_alphas = app.add_subcommand("alphas", "recursion coefficients alpha_0..alpha_N");
  FamilyOpts fo_alphas;
  long n_alphas = 40;
  add_family_options(c_alphas, fo_alphas);
  c_alphas->add_option("--n", n_alphas, "last index N")->capture_default_str();
  c_alphas->fallthrough();
  c_alphas->callback([&] {
    long bits = g.bits_or(256);
    FamilySpec f = make_family(fo_alphas, bits);
    std::vector<CNum> al = alphas_upto(family_sequence(f, bits), n_alphas);
    if (g.format_or("csv") == "csv") {
      emit(g, series_to_csv(al));
      return;
    }
    Json j;
    j["kind"] = f.name;
    Json params = Json::object();
    if (f.name == "rogers-szego") params["q"] = real_to_json(f.param);
    if (f.name == "single-moment") params["a"] = real_to_json(f.param);
    j["params"] = std::move(params);
    Json arr = Json::array();
    for (const CNum& z : al) arr.push_back(cnum_to_json(z));
    j["alphas"] = std::move(arr);
    emit_json(g, j);
  });

  // --- phi ---
  auto* c_phi = app.add_subcommand("phi", "monic orthogonal polynomial at one degree");
  FamilyOpts fo_phi;
  long n_phi = 8;
  std::string z_phi;
  add_family_options(c_phi, fo_phi);
  c_phi->add_option("--n", n_phi, "degree")->capture_default_str();
  c_phi->add_option("--z", z_phi, "also evaluate at this point, e.g. \"0.5+0.25i\"");
  c_phi->fallthrough();
  c_phi->callback([&] {
    long bits = g.bits_or(256);
    FamilySpec f = make_family(fo_phi, bits);
    VerblunskySequence seq = family_sequence(f, bits);
    std::vector<PolynomialPair> pairs = phi_upto(seq, n_phi);
    const PolynomialPair& top = pairs.back();
    if (g.format_or("json") == "csv") {
      emit(g, series_to_csv(top.phi));
      return;
    }
    Json j;
    j["n"] = top.n;
    j["kappa"] = real_to_json(top.kappa);
    j["phi"] = series_to_json(top.phi);
    j["phistar"] = series_to_json(top.phistar);
    if (!z_phi.empty()) {
      CNum z = parse_cnum_arg(z_phi, bits);
      auto [pv, sv] = eval_phi(top, z);
      Json v;
      v["z"] = cnum_to_json(z);
      v["phi"] = cnum_to_json(pv);
      v["phistar"] = cnum_to_json(sv);
      j["value"] = std::move(v);
    }
    emit_json(g, j);
  });

  // --- dseries / sseries ---
  auto* c_dser = app.add_subcommand("dseries", "Taylor coefficients of the inverse outer ratio");
  auto* c_sser = app.add_subcommand("sseries", "coefficient generating series S");
  FamilyOpts fo_dser, fo_sser;
  long n_dser = 200, n_sser = 200;
  add_family_options(c_dser, fo_dser);
  add_family_options(c_sser, fo_sser);
  c_dser->add_option("--n", n_dser, "truncation degree")->capture_default_str();
  c_sser->add_option("--n", n_sser, "truncation degree")->capture_default_str();
  c_dser->fallthrough();
  c_sser->fallthrough();
  auto run_series = [&](const FamilyOpts& fo, long n, bool want_dinv) {
    long bits = g.bits_or(256);
    FamilySpec f = make_family(fo, bits);
    VerblunskySequence seq = family_sequence(f, bits);
    PowerSeries s = want_dinv ? dinv_series(seq, n) : S_series(seq, n);
    if (g.format_or("csv") == "csv") {
      emit(g, series_to_csv(s.coeffs));
    } else {
      emit_json(g, series_to_json(s.coeffs));
    }
  };
  c_dser->callback([&] { run_series(fo_dser, n_dser, true); });
  c_sser->callback([&] { run_series(fo_sser, n_sser, false); });

  // --- rminus-s ---
  auto* c_rms = app.add_subcommand(
      "rminus-s", "Laurent slice of the reflected ratio minus S on a sampling circle");
  FamilyOpts fo_rms;
  long n_rms = 200, m_rms = 1024;
  std::string rho_rms = "1.5";
  add_family_options(c_rms, fo_rms);
  c_rms->add_option("--n", n_rms, "series truncation degree")->capture_default_str();
  c_rms->add_option("--rho", rho_rms, "sampling radius, 1 < rho < validated radius")
      ->capture_default_str();
  c_rms->add_option("--samples", m_rms, "grid size (power of two)")->capture_default_str();
  c_rms->fallthrough();
  c_rms->callback([&] {
    long bits = g.bits_or(256);
    FamilySpec f = make_family(fo_rms, bits);
    VerblunskySequence seq = family_sequence(f, bits);
    SzegoData sd = make_szego_data(seq, n_rms);
    TwoPathLaurent tp = r_minus_S_laurent(sd, Real::from_string(rho_rms, Prec{bits}), m_rms);
    if (g.format_or("csv") == "csv") {
      emit(g, laurent_csv(tp.slice));
      return;
    }
    Json j;
    j["rho"] = rho_rms;
    j["samples"] = m_rms;
    j["n_min"] = tp.slice.n_min;
    j["n_max"] = tp.slice.n_max();
    j["disagreement"] = real_to_json(tp.disagreement);
    j["bound"] = real_to_json(tp.bound);
    j["coeffs"] = laurent_records(tp.slice);
    emit_json(g, j);
  });

  // --- q3 ---
  auto* c_q3 = app.add_subcommand("q3", "third-order correction term from an exponential model");
  std::string model_path, z_q3;
  bool q3_want_poles = false;
  c_q3->add_option("--model", model_path, "model JSON: {terms:[{c,mu},...], tail_rate}")
      ->required();
  c_q3->add_option("--z", z_q3, "evaluation point, e.g. \"4+0i\"");
  c_q3->add_flag("--poles", q3_want_poles, "emit the pole locations instead of a value");
  c_q3->fallthrough();
  c_q3->callback([&] {
    long bits = g.bits_or(256);
    ExponentialModel model = model_from_json(parse_json_text(read_text_file(model_path)), bits);
    Json j;
    if (q3_want_poles) {
      Json arr = Json::array();
      for (const CNum& p : q3_poles(model, Real(1e-9))) arr.push_back(cnum_to_json(p));
      j["poles"] = std::move(arr);
    } else {
      if (z_q3.empty()) fail(ErrorCode::BadInput, "q3 needs --z (or --poles)");
      CNum z = parse_cnum_arg(z_q3, bits);
      j["z"] = cnum_to_json(z);
      j["value"] = cnum_to_json(q3_term(model, z));
    }
    emit_json(g, j);
  });

  // --- fit-prony ---
  auto* c_prony = app.add_subcommand("fit-prony", "exponential-sum fit of a coefficient list");
  std::string alphas_path;
  long kmax = 4;
  c_prony->add_option("--alphas", alphas_path, "coefficient file (csv or json)")->required();
  c_prony->add_option("--kmax", kmax, "largest model order tried")->capture_default_str();
  c_prony->fallthrough();
  c_prony->callback([&] {
    long bits = g.bits_or(256);
    std::vector<CNum> al = load_coeff_list(alphas_path, bits);
    PronyFit fit = prony_fit(al, kmax);
    Json j = model_to_json(fit.model);
    j["residual_rate"] = real_to_json(fit.residual_rate);
    j["condition"] = real_to_json(fit.condition);
    j["saturated"] = fit.saturated;
    emit_json(g, j);
  });

  // --- pade-poles ---
  auto* c_pade = app.add_subcommand("pade-poles", "denominator poles of the diagonal rational fit");
  std::string series_path;
  long pade_m = 12;
  c_pade->add_option("--series", series_path, "power-series file (csv or json)")->required();
  c_pade->add_option("--m", pade_m, "diagonal order m of the [m/m] fit")->capture_default_str();
  c_pade->fallthrough();
  c_pade->callback([&] {
    long bits = g.bits_or(256);
    PowerSeries s = make_power_series(load_coeff_list(series_path, bits), bits);
    emit_json(g, poles_to_json(pade_poles(s, pade_m)));
  });

  // --- gset / mingen ---
  auto* c_gset = app.add_subcommand("gset", "generated set of an exterior point set");
  auto* c_mingen = app.add_subcommand("mingen", "minimal generators of a closed generated set");
  std::string gset_points, gset_rmax, gset_eps = "1e-9", gset_layer = "all";
  std::string mingen_points, mingen_rmax, mingen_eps = "1e-9";
  c_gset->add_option("--points", gset_points, "point file (set json, pole report, or array)")
      ->required();
  c_gset->add_option("--rmax", gset_rmax, "truncation radius (required unless embedded)");
  c_gset->add_option("--eps", gset_eps, "merge tolerance")->capture_default_str();
  c_gset->add_option("--layer", gset_layer, "all or a layer number k >= 1")
      ->capture_default_str();
  c_mingen->add_option("--points", mingen_points, "closed-set file")->required();
  c_mingen->add_option("--rmax", mingen_rmax, "truncation radius (required unless embedded)");
  c_mingen->add_option("--eps", mingen_eps, "merge tolerance")->capture_default_str();
  c_gset->fallthrough();
  c_mingen->fallthrough();
  auto load_set = [&](const std::string& path, const std::string& rmax_arg,
                      const std::string& eps_arg, long bits) {
    Json j = parse_json_text(read_text_file(path));
    Real rmax(Prec{bits}), eps = Real::from_string(eps_arg, Prec{bits});
    if (!rmax_arg.empty()) {
      rmax = Real::from_string(rmax_arg, Prec{bits});
    } else if (j.is_object() && j.contains("rmax")) {
      ExteriorSet s = set_from_json(j, bits);
      return s;
    } else {
      fail(ErrorCode::BadInput, "--rmax is required when the input embeds none");
    }
    return make_exterior_set(points_from_json(j, bits), rmax, eps);
  };
  c_gset->callback([&] {
    long bits = g.bits_or(256);
    ExteriorSet T = load_set(gset_points, gset_rmax, gset_eps, bits);
    ExteriorSet out;
    if (gset_layer == "all") {
      out = g_full(T);
    } else {
      long k = 0;
      try {
        k = std::stol(gset_layer);
      } catch (const std::exception&) {
        fail(ErrorCode::BadInput, "--layer must be 'all' or an integer");
      }
      out = g_layer(T, k);
    }
    emit_json(g, set_to_json(out));
  });
  c_mingen->callback([&] {
    long bits = g.bits_or(256);
    ExteriorSet Q = load_set(mingen_points, mingen_rmax, mingen_eps, bits);
    emit_json(g, set_to_json(minimal_generators(Q)));
  });

  // --- invert ---
  auto* c_inv = app.add_subcommand("invert", "weight -> moments -> recursion coefficients");
  std::string weight_name;
  FamilyOpts fo_inv;
  long n_inv = 40, m_inv = 0;
  bool inv_normalize = false;
  c_inv->add_option("--weight", weight_name,
                    "builtin:single-moment | builtin:rogers-szego | builtin:constant")
      ->required();
  c_inv->add_option("--q", fo_inv.q, "rogers-szego parameter")->capture_default_str();
  c_inv->add_option("--a", fo_inv.a, "single-moment parameter")->capture_default_str();
  c_inv->add_option("--n", n_inv, "number of coefficients")->capture_default_str();
  c_inv->add_option("--m", m_inv, "quadrature grid (0 = adaptive doubling)")
      ->capture_default_str();
  c_inv->add_flag("--normalize", inv_normalize, "rescale the weight to unit mass");
  c_inv->fallthrough();
  c_inv->callback([&] {
    long bits = g.bits_or(256);
    std::string name = weight_name;
    if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
    fo_inv.family = name == "constant" ? "zero" : name;
    FamilySpec f = make_family(fo_inv, bits);
    Weight w = family_weight(f, bits);
    MomentSequence ms;
    if (m_inv > 0) {
      ms = moments_from_weight(w, n_inv, m_inv, inv_normalize);
    } else {
      long M = next_pow2_at_least(std::max(512L, 8 * n_inv));
      ms = moments_from_weight(w, n_inv, M, inv_normalize);
      Real tol = ldexp2(Real(1L, Prec{bits}), -(bits / 2));
      bool settled = false;
      while (M <= (1L << 15)) {
        MomentSequence ms2 = moments_from_weight(w, n_inv, 2 * M, inv_normalize);
        Real diff(0L);
        for (std::size_t i = 0; i < ms.c.size(); ++i) {
          Real d = mag(ms.c[i] - ms2.c[i]);
          if (d > diff) diff = d;
        }
        ms = std::move(ms2);
        M *= 2;
        if (diff <= tol) {
          settled = true;
          break;
        }
      }
      if (!settled) {
        fail(ErrorCode::QuadratureUnresolved,
             "moment quadrature did not stabilize by grid size " + std::to_string(M));
      }
    }
    std::vector<CNum> al = alphas_from_moments(ms);
    if (g.format_or("csv") == "csv") {
      emit(g, series_to_csv(al));
    } else {
      emit_json(g, series_to_json(al));
    }
  });

  // --- crosscheck ---
  auto* c_cross = app.add_subcommand(
      "crosscheck", "integral-formula coefficients against the recursion ground truth");
  FamilyOpts fo_cross;
  std::string formula;
  long n_cross = 5, m_cross = 512;
  add_family_options(c_cross, fo_cross);
  c_cross->add_option("--formula", formula, "freud | 2414")
      ->required()
      ->check(CLI::IsMember({"freud", "2414"}));
  c_cross->add_option("--n", n_cross, "check indices 0..N")->capture_default_str();
  c_cross->add_option("--m", m_cross, "base quadrature grid")->capture_default_str();
  c_cross->fallthrough();
  c_cross->callback([&] {
    long bits = g.bits_or(256);
    FamilySpec f = make_family(fo_cross, bits);
    VerblunskySequence seq = family_sequence(f, bits);
    Weight w = family_weight(f, bits);
    SzegoData sd = make_szego_data(seq, 200);
    Json rows = Json::array();
    Real worst(0L);
    for (long n = 0; n <= n_cross; ++n) {
      CNum truth = alpha(seq, n);
      CNum est = formula == "freud" ? alpha_check_freud(n, sd, w, m_cross)
                                    : alpha_check_2414(n, sd, w, m_cross);
      Real diff = mag(est - truth);
      if (diff > worst) worst = diff;
      Json row;
      row["n"] = n;
      row["recursion"] = cnum_to_json(truth);
      row["formula"] = cnum_to_json(est);
      row["abs_diff"] = real_to_json(diff);
      rows.push_back(std::move(row));
    }
    Json j;
    j["formula"] = formula;
    j["family"] = f.name;
    j["rows"] = std::move(rows);
    j["max_abs_diff"] = real_to_json(worst);
    emit_json(g, j);
  });

  // --- verify / report ---
  auto* c_verify = app.add_subcommand("verify", "run a verification scenario");
  FamilyOpts fo_verify;
  std::string scenario, verify_json, verify_rmax = "40";
  c_verify->add_option("scenario", scenario, "thm21 | thm54 | thm44 | predictors | all")
      ->required()
      ->check(CLI::IsMember({"thm21", "thm54", "thm44", "predictors", "all"}));
  add_family_options(c_verify, fo_verify);
  c_verify->add_option("--rmax", verify_rmax, "truncation radius for thm44")
      ->capture_default_str();
  c_verify->add_option("--json", verify_json, "write the report JSON to this path");
  c_verify->fallthrough();
  auto run_suite = [&](const std::string& json_path) {
    std::vector<ScenarioReport> reports = verify_all();
    Json arr = Json::array();
    bool ok = true;
    for (const ScenarioReport& r : reports) {
      arr.push_back(r.to_json());
      ok = ok && r.all_pass();
    }
    Json j;
    j["scenarios"] = std::move(arr);
    j["all_pass"] = ok;
    GlobalOpts go = g;
    if (!json_path.empty()) go.out = json_path;
    emit_json(go, j);
  };
  c_verify->callback([&] {
    if (scenario == "all") {
      run_suite(verify_json);
      return;
    }
    FamilySpec f = make_family(fo_verify, g.bits_or(512));
    ScenarioReport rep;
    if (scenario == "thm21") {
      rep = verify_thm21(f, g.bits_or(256));
    } else if (scenario == "thm54") {
      rep = verify_thm54(f, g.bits_or(512));
    } else if (scenario == "thm44") {
      rep = verify_thm44(f, Real::from_string(verify_rmax, Prec{g.bits_or(256)}), g.bits_or(256));
    } else {
      rep = verify_predictors(f, g.bits_or(320));
    }
    GlobalOpts go = g;
    if (!verify_json.empty()) go.out = verify_json;
    emit_json(go, rep.to_json());
  });

  auto* c_report = app.add_subcommand("report", "run the full verification suite");
  std::string report_json;
  c_report->add_option("--json", report_json, "write the combined report JSON to this path");
  c_report->fallthrough();
  c_report->callback([&] { run_suite(report_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const SzegoLabError& e) {
    Json err;
    err["error"] = Json{{"code", error_code_name(e.code())}, {"message", e.message()}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
  return 0;
}
