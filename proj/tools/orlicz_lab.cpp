// Command-line surface for the Orlicz-space laboratory: analyze Orlicz
// functions, build span functions psi, run embedding criteria, run Monte
// Carlo simulations, and reproduce the bundled worked examples. Every report
// embeds the full run configuration for reproducibility.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/criteria.hpp"
#include "orlicz/indices.hpp"
#include "orlicz/io.hpp"
#include "orlicz/mc_sim.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/orlicz_spec.hpp"
#include "orlicz/presets.hpp"
#include "orlicz/report_json.hpp"
#include "orlicz/sampled_function.hpp"
#include "orlicz/span_builder.hpp"

namespace {

using nlohmann::json;
using namespace orlicz;

struct Options {
  std::string spec_path;
  std::string f_spec_path;
  std::string out = ".";
  std::string preset;
  std::uint64_t seed = 20240914;
  std::size_t paths = 100000;
  int decades = 8;
  double tmin = 1e-8;
  double tmax = 1e12;
  double band = 10.0;
};

int thread_cap() {
  if (const char* env = std::getenv("ORLICZ_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

json run_config(const Options& o, const std::string& command) {
  return {{"command", command},
          {"spec", o.spec_path},
          {"f_spec", o.f_spec_path},
          {"preset", o.preset},
          {"out", o.out},
          {"seed", o.seed},
          {"paths", o.paths},
          {"decades", o.decades},
          {"tmin", o.tmin},
          {"tmax", o.tmax},
          {"band", o.band},
          {"threads", thread_cap()},
          {"schema_version", kSchemaVersion},
          {"library_version", kLibraryVersion}};
}

struct Inputs {
  OrliczSpec M = OrliczSpec::power(2.0);
  SampledRealFunction f = SampledRealFunction::constant(1.0);
  bool have_f = false;
};

Inputs load_inputs(const Options& o, bool need_f) {
  Inputs in;
  if (!o.preset.empty()) {
    const auto pr = preset_by_name(o.preset);
    in.M = pr.M;
    in.f = pr.f;
    in.have_f = true;
    return in;
  }
  if (o.spec_path.empty()) throw std::invalid_argument("need --spec or --preset");
  in.M = spec_from_json(load_json_file(o.spec_path));
  if (!o.f_spec_path.empty()) {
    in.f = profile_from_json(load_json_file(o.f_spec_path));
    in.have_f = true;
  } else if (need_f) {
    throw std::invalid_argument("need --f-spec or --preset");
  }
  return in;
}

void write_report(const Options& o, json report) {
  std::filesystem::create_directories(o.out);
  save_json_file(o.out + "/report.json", std::move(report));
}

json equivalence_curve_csv(const Options& o, const std::string& name,
                           const EquivalenceReport& r, const std::string& comment) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.param.size(); ++i)
    rows.push_back({r.param[i], r.lhs[i], r.rhs[i], r.lhs[i] / r.rhs[i]});
  std::filesystem::create_directories(o.out);
  save_csv(o.out + "/" + name + ".csv", comment, {"param", "lhs", "rhs", "ratio"}, rows);
  return to_json(r);
}

// ---------------------------------------------------------------- analyze --

int cmd_analyze(const Options& o) {
  const auto in = load_inputs(o, /*need_f=*/false);
  json rep;
  rep["config"] = run_config(o, "analyze");
  rep["indices_at_zero"] = to_json(index_at_zero(in.M));
  const auto idx_inf = index_at_infinity(in.M);
  rep["indices_at_infinity"] = to_json(idx_inf);
  rep["delta2_at_zero"] = to_json(delta2_constant(in.M, Regime::AtZero));
  rep["delta2_at_infinity"] = to_json(delta2_constant(in.M, Regime::AtInfinity));
  rep["delta2_global"] = to_json(delta2_constant(in.M, Regime::Global));
  json conj = json::array();
  for (double u : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto c = conjugate(in.M, u);
    conj.push_back({{"u", u}, {"value", c.value}, {"diverged", c.diverged}});
  }
  rep["conjugate_samples"] = conj;
  const double p_lo = std::max(1.0, idx_inf.alpha.point);
  rep["p_convexity_at_alpha"] = to_json(p_convexity_check(in.M, p_lo));
  std::vector<std::vector<double>> rows;
  for (double u : detail::log_grid(o.tmin, 1.0, o.decades))
    rows.push_back({u, in.M.value(u), fundamental_Lm(in.M, u)});
  std::filesystem::create_directories(o.out);
  save_csv(o.out + "/fundamental.csv",
           "Orlicz function values and fundamental function phi(u) on a log grid",
           {"u", "M", "phi"}, rows);
  write_report(o, std::move(rep));
  return 0;
}

// -------------------------------------------------------------- build-psi --

int cmd_build_psi(const Options& o) {
  const auto in = load_inputs(o, /*need_f=*/true);
  const auto psi = build_psi(in.M, in.f);
  std::filesystem::create_directories(o.out);
  save_json_file(o.out + "/psi.json", to_json(psi));
  json rep;
  rep["config"] = run_config(o, "build-psi");
  rep["psi_file"] = o.out + "/psi.json";
  rep["psi_indices_at_zero"] = to_json(index_at_zero(psi));
  // curve: psi^{-1}(t) and 1/f(t) on [tmin, 0.5]
  std::vector<std::vector<double>> rows;
  for (double t : detail::log_grid(o.tmin, 0.5, o.decades)) {
    const double inv = inverse(psi, t);
    const double fv = std::exp(in.f.log_value(std::log(t)));
    rows.push_back({t, inv, 1.0 / fv});
  }
  save_csv(o.out + "/psi_inverse.csv",
           "inverse of the span function psi against the reciprocal profile",
           {"t", "psi_inv", "recip_f"}, rows);
  write_report(o, std::move(rep));
  return 0;
}

// ------------------------------------------------------------------ check --

int cmd_check(const Options& o) {
  const auto in = load_inputs(o, /*need_f=*/true);
  json rep;
  rep["config"] = run_config(o, "check");
  const auto v = strongly_embedded_verdict(in.M, in.f);
  rep["verdict"] = to_json(v);
  equivalence_curve_csv(o, "dilation", v.dilation,
                        "Luxemburg vs L1 norm of the dilated profile over n = 2^k");
  write_report(o, std::move(rep));
  return 0;
}

// --------------------------------------------------------------- simulate --

int cmd_simulate(const Options& o) {
  json rep;
  rep["config"] = run_config(o, "simulate");
  std::filesystem::create_directories(o.out);

  if (o.preset == "counterexample") {
    const std::size_t copies = 16;
    const auto spec = counterexample_spec(copies);
    const auto M2 = OrliczSpec::power(2.0);
    std::vector<CoeffSeq> profiles;
    for (std::size_t k = 0; k < copies; ++k) {
      CoeffSeq a(copies, 0.0);
      a[k] = 1.0 / std::sqrt(1.5);  // unit L2 copies
      profiles.push_back(a);
    }
    std::vector<double> deltas;
    for (int j = 1; j <= 16; ++j) deltas.push_back(std::pow(2.0, -j));
    const auto curve = equicontinuity_modulus(M2, spec, profiles, deltas, o.paths, o.seed);
    std::vector<std::vector<double>> rows;
    json jc = json::array();
    for (const auto& [d, m] : curve) {
      rows.push_back({d, m});
      jc.push_back({{"delta", d}, {"modulus", m}});
    }
    save_csv(o.out + "/modulus.csv",
             "sampled equicontinuity modulus of the two-valued counterexample sequence",
             {"delta", "modulus"}, rows);
    rep["modulus"] = jc;
    write_report(o, std::move(rep));
    return 0;
  }

  const auto in = load_inputs(o, /*need_f=*/true);
  if (o.preset == "rademacher") {
    CopySpec spec;  // constant-one symmetric copies
    const auto batch = sample_copies(spec, o.paths, 8, o.seed);
    json jc = json::array();
    std::vector<std::vector<double>> rows;
    for (const CoeffSeq& a :
         {CoeffSeq{1.0}, CoeffSeq{3.0, 4.0}, CoeffSeq{1, 1, 1, 1}, CoeffSeq{1, -2, 2, -1, 3}}) {
      const auto e = empirical_luxemburg(in.M, a, batch);
      double l2 = 0.0;
      for (double x : a) l2 += x * x;
      l2 = std::sqrt(l2);
      jc.push_back({{"empirical", to_json(e)}, {"l2", l2}});
      rows.push_back({static_cast<double>(a.size()), e.norm.value, l2, e.norm.value / l2});
    }
    save_csv(o.out + "/rademacher.csv", "empirical L2 Luxemburg norms against ||a||_2",
             {"len", "empirical", "exact", "ratio"}, rows);
    rep["rademacher"] = jc;
    write_report(o, std::move(rep));
    return 0;
  }

  // generic (M, f): Monte Carlo check of the independent-sum formula
  const auto psi = build_psi(in.M, in.f);
  const auto corpus = make_profile_corpus(5, 8, o.seed);
  std::vector<double> ses;
  const auto js = js_check(in.M, in.f, corpus, o.paths, o.seed, o.band, &ses);
  rep["js_check"] = equivalence_curve_csv(
      o, "js_check", js, "empirical norm of sums of copies vs disjoint-sum functional");
  rep["bootstrap_se"] = ses;
  write_report(o, std::move(rep));
  return 0;
}

// -------------------------------------------------------------- reproduce --

struct BandChecks {
  json results = json::array();
  bool all_ok = true;
  void add(const std::string& name, bool ok, double value, double limit) {
    results.push_back({{"check", name}, {"ok", ok}, {"value", value}, {"limit", limit}});
    all_ok = all_ok && ok;
    std::cout << (ok ? "  [ok]   " : "  [FAIL] ") << name << "  value=" << value
              << " limit=" << limit << "\n";
  }
};

double band_ratio_vs_model(const OrliczSpec& psi, double e, double a, double lo, double hi) {
  // ratio band of psi^{-1}(t) against t^e ln^a(e/t) over [lo, hi]
  double rmin = detail::kInf, rmax = detail::kNegInf;
  for (double t : detail::log_grid(lo, hi, 8)) {
    const double lt = std::log(t);
    const double model = e * lt + a * std::log(1.0 - lt);
    const double r = std::log(inverse(psi, t)) - model;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  return std::exp(rmax - rmin);
}

int cmd_reproduce(const Options& o) {
  json rep;
  rep["config"] = run_config(o, "reproduce");
  BandChecks bc;
  std::cout << "reproduce " << o.preset << "\n";

  if (o.preset == "example1") {
    const auto pr = preset_example1();
    const double p = pr.p;
    const auto psi = build_psi(pr.M, pr.f, 1e-60, 16);
    const auto phi = build_psi(OrliczSpec::power(1.0), pr.f, 1e-60, 16);
    bc.add("psi_inverse_band", band_ratio_vs_model(psi, 1.0 / p, 0.5 / p, 1e-8, 0.5) <= 3.0,
           band_ratio_vs_model(psi, 1.0 / p, 0.5 / p, 1e-8, 0.5), 3.0);
    bc.add("phi_inverse_band", band_ratio_vs_model(phi, 1.0 / p, 1.5 / p, 1e-8, 0.5) <= 3.0,
           band_ratio_vs_model(phi, 1.0 / p, 1.5 / p, 1e-8, 0.5), 3.0);
    // ratio psi^{-1}/phi^{-1} decays like ln^{-1}(e/t): slope -1 in lnln coords
    std::vector<double> xs, ys;
    for (double lt = -90.0; lt <= -25.0; lt += 2.5) {
      const double t = std::exp(lt);
      xs.push_back(std::log(1.0 - lt));
      ys.push_back(std::log(inverse(psi, t) / inverse(phi, t)));
    }
    const double slope = detail::fit_line(xs, ys).slope;
    bc.add("loglog_ratio_slope", std::abs(p * slope + 1.0) <= 0.15, p * slope, -1.0);
    const auto l2c = luxem2_check(pr.M, psi, pr.f);
    rep["luxem2"] = equivalence_curve_csv(o, "luxem2", l2c,
                                          "sequence fundamental vs dilated-norm functional");
    bc.add("luxem2_equivalent", l2c.verdict == EquivVerdict::Equivalent, l2c.trend_slope, 0.02);
    const auto v = strongly_embedded_verdict(pr.M, pr.f);
    rep["verdict"] = to_json(v);
    bc.add("dilation_grows", v.dilation.trend_slope >= 0.05, v.dilation.trend_slope, 0.05);
    bc.add("not_strongly_embedded", v.strongly_embedded != Tri::Yes, 0.0, 0.0);
  } else if (o.preset == "example2") {
    const auto pr = preset_example2();
    const double p = pr.p, alpha = pr.alpha;
    const auto psi = build_psi(pr.M, pr.f);
    bc.add("recip_psi_inverse_tracks_f",
           band_ratio_vs_model(psi, 1.0 / p, -alpha, 1e-8, 0.5) <= 3.0,
           band_ratio_vs_model(psi, 1.0 / p, -alpha, 1e-8, 0.5), 3.0);
    const auto sm = submultiplicative_check(psi);
    rep["submultiplicative"] = to_json(sm);
    bc.add("submultiplicative", sm.holds, sm.C, 0.0);
    const auto v = strongly_embedded_verdict(pr.M, pr.f);
    rep["verdict"] = to_json(v);
    bc.add("strongly_embedded", v.strongly_embedded == Tri::Yes, v.index_gap, v.gap_uncertainty);
    bc.add("equicontinuous", v.equicontinuous == Tri::Yes, 0.0, 0.0);
    const auto l2c = luxem2_check(pr.M, psi, pr.f);
    rep["luxem2"] = equivalence_curve_csv(o, "luxem2", l2c,
                                          "sequence fundamental vs dilated-norm functional");
    bc.add("luxem2_equivalent", l2c.verdict == EquivVerdict::Equivalent, l2c.trend_slope, 0.02);
  } else if (o.preset == "l2-theorem") {
    const auto pr = preset_l2_theorem();
    const auto psi = build_psi(pr.M, pr.f);
    double rmin = detail::kInf, rmax = detail::kNegInf;
    std::vector<std::vector<double>> rows;
    for (int k = 0; k <= 20; ++k) {
      const double n = std::pow(2.0, k);
      const double r = fundamental_seq(psi, n) / std::sqrt(n);
      rows.push_back({n, r});
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    std::filesystem::create_directories(o.out);
    save_csv(o.out + "/fundamental_ratio.csv",
             "sequence-space fundamental function over sqrt(n)", {"n", "ratio"}, rows);
    bc.add("fundamental_sqrt_band", rmax / rmin <= 3.0, rmax / rmin, 3.0);
    CopySpec rad;
    const auto batch = sample_copies(rad, o.paths, 4, o.seed);
    const CoeffSeq a{3.0, 4.0};
    const auto e = empirical_luxemburg(OrliczSpec::power(2.0), a, batch);
    bc.add("rademacher_within_3se", std::abs(e.norm.value - 5.0) <= 3.0 * e.se,
           std::abs(e.norm.value - 5.0), 3.0 * e.se);
  } else if (o.preset == "counterexample") {
    const std::size_t copies = 16;
    const auto spec = counterexample_spec(copies);
    const auto M2 = OrliczSpec::power(2.0);
    std::vector<CoeffSeq> profiles;
    for (std::size_t k = 0; k < copies; ++k) {
      CoeffSeq a(copies, 0.0);
      a[k] = 1.0 / std::sqrt(1.5);
      profiles.push_back(a);
    }
    std::vector<double> deltas;
    for (int j = 1; j <= 16; ++j) deltas.push_back(std::pow(2.0, -j));
    const auto curve = equicontinuity_modulus(M2, spec, profiles, deltas, o.paths, o.seed);
    std::vector<double> xs, ys;
    std::vector<std::vector<double>> rows;
    double mmin = detail::kInf;
    for (const auto& [d, m] : curve) {
      rows.push_back({d, m});
      xs.push_back(std::log(d));
      ys.push_back(std::log(m));
      mmin = std::min(mmin, m);
    }
    std::filesystem::create_directories(o.out);
    save_csv(o.out + "/modulus.csv", "sampled equicontinuity modulus (should not decay)",
             {"delta", "modulus"}, rows);
    const double slope = detail::fit_line(xs, ys).slope;
    bc.add("modulus_no_decay_slope", slope >= -0.01, slope, -0.01);
    bc.add("modulus_bounded_below", mmin >= 0.3, mmin, 0.3);
  } else {
    throw std::invalid_argument(
        "unknown reproduction '" + o.preset +
        "' (expected example1 | example2 | l2-theorem | counterexample)");
  }
  rep["checks"] = bc.results;
  rep["all_ok"] = bc.all_ok;
  write_report(o, std::move(rep));
  return bc.all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Orlicz function and sequence spaces"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec_path, "Orlicz function spec JSON file");
    sub->add_option("--f-spec", o.f_spec_path, "profile spec JSON file");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--preset", o.preset, "named preset");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--paths", o.paths, "Monte Carlo path count");
    sub->add_option("--decades", o.decades, "grid points per decade");
    sub->add_option("--tmin", o.tmin, "lower end of the t grid");
    sub->add_option("--tmax", o.tmax, "upper end of the t grid");
    sub->add_option("--band", o.band, "equivalence band limit");
  };

  auto* analyze = app.add_subcommand("analyze", "indices, Delta2, conjugate, fundamental function");
  auto* build = app.add_subcommand("build-psi", "build the span function psi from (M, f)");
  auto* check = app.add_subcommand("check", "run the strong-embedding criteria");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo norms and modulus curves");
  auto* reproduce = app.add_subcommand("reproduce", "rerun a bundled worked example with bands");
  for (auto* s : {analyze, build, check, simulate, reproduce}) add_common(s);
  std::string repro_name;
  reproduce->add_option("name", repro_name, "example1 | example2 | l2-theorem | counterexample");

  CLI11_PARSE(app, argc, argv);
  if (!repro_name.empty()) o.preset = repro_name;

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(o);
    if (app.got_subcommand(build)) return cmd_build_psi(o);
    if (app.got_subcommand(check)) return cmd_check(o);
    if (app.got_subcommand(simulate)) return cmd_simulate(o);
    if (app.got_subcommand(reproduce)) return cmd_reproduce(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
