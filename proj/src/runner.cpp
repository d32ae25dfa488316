#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "io/cache.hpp"
#include "io/svg.hpp"
#include "lightcone.hpp"
#include "packets.hpp"
#include "scattering.hpp"
#include "smearing.hpp"

namespace hrlab {

namespace {

using nlohmann::json;

struct ModelSetup {
  Interaction phi;
  Lattice lat = Lattice::chain(2, Boundary::Periodic);
  Metric metric = Metric::LInf;
  DecayFunction decay;
};

ModelSetup read_model(const Manifest& m) {
  ModelSetup s;
  const std::string name = m.get("model", "name", "ising");
  const double eps = m.get_double("model", "epsilon", 0.1);
  const int d = m.get_int("model", "d", 1);
  const int n = m.get_int("model", "N", 10);
  const std::string bnd = m.get("model", "boundary", "periodic");
  const std::string metric = m.get("model", "metric", "linf");
  if (d < 1 || d > 2) throw DomainError("model: d must be 1 or 2");
  if (n < 2) throw DomainError("model: N must be at least 2");
  const int64_t total_sites = d == 1 ? n : int64_t(n) * n;
  if (total_sites > 24) throw DomainError("model: site count above the 2^24 basis-state cap");
  s.metric = metric == "l1" ? Metric::L1 : Metric::LInf;
  Boundary b = bnd == "open" ? Boundary::Open : Boundary::Periodic;
  s.lat = d == 1 ? Lattice::chain(n, b, s.metric)
                 : Lattice(2, {n, n}, b, s.metric);
  if (name == "ising") s.phi = Interaction::ising(d, eps);
  else if (name == "heisenberg") s.phi = Interaction::heisenberg(d, eps);
  else throw DomainError("model: unknown name '" + name + "' (ising | heisenberg)");
  s.decay.d = d;
  s.decay.eps_f = m.get_double("decay", "eps_f", 1.0);
  return s;
}

std::vector<double> lambda_grid(const Manifest& m) {
  auto g = m.get_list("grids", "lambda");
  if (!g.empty()) return g;
  std::vector<double> out;
  for (double l = 0.25; l <= 4.0 + 1e-12; l *= std::sqrt(2.0)) out.push_back(l);
  return out;
}

json certificate_json(const LRCertificate& c) {
  json j;
  j["lambda_star"] = c.lambda_star;
  j["phi_norm_star"] = c.phi_norm_star;
  j["C_lambda_bound"] = c.c_lambda;
  j["v_star"] = c.v_star;
  j["F_norm"] = c.f_norm;
  j["F_norm_tail_bound"] = c.f_norm_tail;
  j["metric"] = c.metric_tag;
  json grid = json::array();
  for (size_t i = 0; i < c.grid_lambda.size(); ++i)
    grid.push_back({{"lambda", c.grid_lambda[i]},
                    {"phi_norm", c.grid_phi_norm[i]},
                    {"v", c.grid_v[i]}});
  j["grid"] = grid;
  return j;
}

LRCertificate make_certificate(const ModelSetup& s, const Manifest& m) {
  return lr_velocity(s.phi, lambda_grid(m), s.decay, s.metric);
}

// shared engine across subcommands of one run
struct Context {
  const Manifest* manifest;
  ModelSetup model;
  std::shared_ptr<EvolutionEngine> engine;  // sector mode on the model lattice

  EvolutionEngine& sector_engine() {
    if (!engine) {
      Hamiltonian h = build_hamiltonian(model.phi, model.lat);
      engine = std::make_shared<EvolutionEngine>(EvolutionEngine::make_sectors(h));
    }
    return *engine;
  }
};

void verdict(ResultEnvelope& env, const std::string& name, bool pass,
             const std::string& details) {
  env.verdicts.push_back({name, pass ? "PASS" : "FAIL", details});
}

void report(ResultEnvelope& env, const std::string& name, const std::string& details) {
  env.verdicts.push_back({name, "REPORT", details});
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

// ---------------- commands ----------------

void cmd_certify(Context& ctx, ResultEnvelope& env) {
  LRCertificate cert = make_certificate(ctx.model, *ctx.manifest);
  env.payload = certificate_json(cert);
  bool monotone = true;
  for (size_t i = 1; i < cert.grid_phi_norm.size(); ++i)
    if (cert.grid_phi_norm[i] < cert.grid_phi_norm[i - 1] - 1e-12) monotone = false;
  verdict(env, "phi_norm_monotone_in_lambda", monotone, "grid check, slack 1e-12");
  verdict(env, "certificate_positive", cert.v_star > 0,
          "v_star = " + num(cert.v_star) + " at lambda_star = " + num(cert.lambda_star));
}

json spectrum_payload(const JointSpectrum& js) {
  json j;
  j["E0"] = js.e0_raw;
  j["gap"] = js.gap;
  json pts = json::array();
  for (const auto& p : js.points)
    pts.push_back({{"E", p.e}, {"p_index", p.p_flat}, {"mult", p.mult}});
  j["points"] = pts;
  j["sector_dims"] = js.sector_dims;
  return j;
}

void cmd_spectrum(Context& ctx, ResultEnvelope& env) {
  if (ctx.model.lat.boundary() != Boundary::Periodic)
    throw DomainError("spectrum: open boundary has no momentum sectors; see gapflow");
  const int nsites = int(ctx.model.lat.num_sites());
  JointSpectrum js;
  if (nsites <= 14) {
    js = momentum_sectors(ctx.sector_engine());
  } else {
    js = momentum_sectors_band(ctx.sector_engine().hamiltonian(),
                               ctx.manifest->get_int("spectrum", "levels", 3));
  }
  env.payload = spectrum_payload(js);

  int64_t total = 0;
  for (int dsz : js.sector_dims) total += dsz;
  verdict(env, "sector_dims_sum", total == (int64_t{1} << nsites),
          num(double(total)) + " vs 2^" + std::to_string(nsites));
  bool has00 = false;
  for (const auto& p : js.points)
    if (std::abs(p.e) <= 1e-10 && p.p_flat == 0) has00 = true;
  verdict(env, "contains_origin", has00, "ground state at (0, 0), tolerance 1e-10");
  report(env, "gap", "gap = " + num(js.gap));
}

void cmd_massshell(Context& ctx, ResultEnvelope& env) {
  EvolutionEngine& eng = ctx.sector_engine();
  JointSpectrum js = momentum_sectors(eng);
  const double lo = ctx.manifest->get_double("massshell", "e_lo", 0.75 * js.gap);
  const double hi = ctx.manifest->get_double("massshell", "e_hi", 1.75 * js.gap);
  MassShell shell = extract_mass_shell(js, lo, hi);
  group_velocity(shell);

  json band = json::array();
  for (int k = 0; k < shell.n_grid; ++k)
    band.push_back({{"p_index", k},
                    {"p", js.grid.point(k)[0]},
                    {"sigma", shell.sigma[k]},
                    {"isolation", shell.isolation[k]},
                    {"dsigma_fd", shell.dsigma_fd[k]},
                    {"dsigma_interp", shell.dsigma_interp.empty() ? 0.0 : shell.dsigma_interp[k]}});
  env.payload["band"] = band;
  env.payload["window"] = {{"e_lo", lo}, {"e_hi", hi}};
  env.payload["flags"] = {{"regular", shell.regular},
                          {"pseudo_relativistic", shell.pseudo_relativistic},
                          {"condition_c", shell.condition_c},
                          {"note", shell.classification_note}};
  env.payload["interp"] = {{"order", shell.interp_order},
                           {"max_residual", shell.interp_max_residual}};
  env.payload["fd_interp_discrepancy"] = shell.fd_interp_discrepancy;

  double min_iso = 1e300;
  for (double i : shell.isolation) min_iso = std::min(min_iso, i);
  verdict(env, "isolation_positive", min_iso > 0, "min margin = " + num(min_iso));
  if (!shell.condition_c)
    report(env, "mass_shell_validity",
           "condition (c) surrogate FAILS: curvature below 1e-6 on most of the grid; "
           "not a valid mass shell");
  LRCertificate cert = make_certificate(ctx.model, *ctx.manifest);
  const double vmax = shell.max_group_velocity();
  verdict(env, "group_velocity_bound", vmax <= cert.v_star,
          "max |Sigma'| = " + num(vmax) + " <= v_star = " + num(cert.v_star));
}

void cmd_lightcone(Context& ctx, ResultEnvelope& env) {
  EvolutionEngine& eng = ctx.sector_engine();
  const Lattice& lat = ctx.model.lat;
  const int nsites = int(lat.num_sites());
  std::vector<double> times = ctx.manifest->get_list("lightcone", "times");
  if (times.empty()) times = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  std::vector<int> disp = ctx.manifest->get_int_list("lightcone", "displacements");
  if (disp.empty())
    for (int x = 1; x <= nsites / 2; ++x) disp.push_back(x);
  const double thr = ctx.manifest->get_double("lightcone", "threshold", 1e-3);
  const double r0 = ctx.manifest->get_double("lightcone", "r0", 1.0);

  LocalOperator a = LocalOperator::pauli(lat, lat.index_site(0), 1);
  LocalOperator b = a;
  LightConeProfile prof = lightcone_profile(eng, a, b, times, disp, thr, r0);
  LRCertificate cert = make_certificate(ctx.model, *ctx.manifest);

  json samples = json::array();
  bool dominated = true;
  double worst_ratio = 0.0;
  for (const auto& s : prof.samples) {
    samples.push_back({{"t", s.t}, {"x", s.x}, {"dist", s.dist}, {"comm_norm", s.comm_norm}});
    const double env_val = lrb_envelope(cert, 1.0, 1.0, 1, 1, s.dist, s.t);
    if (s.comm_norm > env_val) dominated = false;
    if (env_val > 0) worst_ratio = std::max(worst_ratio, s.comm_norm / env_val);
  }
  env.payload["samples"] = samples;
  env.payload["v_emp"] = prof.v_emp;
  env.payload["threshold"] = prof.threshold;
  env.payload["r0"] = prof.r0;
  env.payload["fit"] = {{"rate", prof.fit_rate},
                        {"logc", prof.fit_logc},
                        {"usable_samples", prof.usable_fit_samples}};
  env.payload["certificate"] = {{"v", cert.v_star}, {"lambda", cert.lambda_star}};

  verdict(env, "empirical_velocity_bounded", prof.v_emp <= cert.v_star,
          "v_emp = " + num(prof.v_emp) + " <= v_star = " + num(cert.v_star));
  verdict(env, "LRB_envelope_dominates", dominated,
          "worst sample/envelope ratio = " + num(worst_ratio));
}

void cmd_arveson(Context& ctx, ResultEnvelope& env) {
  EvolutionEngine& eng = ctx.sector_engine();
  const Lattice& lat = ctx.model.lat;
  if (eng.dim() > (int64_t{1} << 12))
    throw DomainError("arveson: dense filtering capped at 2^12 states; lower N");
  JointSpectrum js = momentum_sectors(eng);

  const double e0 = ctx.manifest->get_double("filter", "E0", js.gap * 1.25);
  const double we = ctx.manifest->get_double("filter", "wE", js.gap * 0.55);
  const double p0 = ctx.manifest->get_double("filter", "p0", 0.0);
  const double wp = ctx.manifest->get_double("filter", "wp", kPi / 2);
  FilterFunction f = FilterFunction::product(e0, we, p0, wp);

  const int site = ctx.manifest->get_int("arveson", "site", 0);
  const int axis = ctx.manifest->get_int("arveson", "axis", 1);
  LocalOperator a = LocalOperator::pauli(lat, lat.index_site(site), axis);

  LocalOperator af = smear(a, f, eng);
  ArvesonEstimate est = arveson_spectrum(af, eng);
  ArvesonEstimate raw = arveson_spectrum(a, eng);

  json bins = json::array();
  for (const auto& b : est.bins)
    bins.push_back({{"dE", b.de_bin * est.resolution},
                    {"dp_index", b.dp_flat},
                    {"weight", b.weight}});
  env.payload["bins"] = bins;
  env.payload["resolution"] = est.resolution;
  env.payload["threshold"] = est.threshold;
  env.payload["filter"] = {{"E0", e0}, {"wE", we}, {"p0", p0}, {"wp", wp}, {"shape", "bump"}};

  // containment of the filtered spectrum in the window and in the raw spectrum
  bool contained = true;
  for (const auto& b : est.bins) {
    const double de = b.de_bin * est.resolution;
    const auto dp = js.grid.point(b.dp_flat);
    if (f.eval(de, dp) == 0.0 && std::abs(de) > 2 * est.resolution) contained = false;
  }
  verdict(env, "transfer_contained_in_window", contained,
          "bin-level containment, slack 2 energy bins");
  ArvesonEstimate adj = arveson_spectrum(af.adjoint(), eng);
  verdict(env, "adjoint_reflection", adj.same_bins(est.negated()),
          "Sp_{A*} = -Sp_A at bin level");
  verdict(env, "spatial_marginal_full", raw.covers_all_dp(int(js.grid.num_points())),
          "local operator reaches every momentum transfer");
}

void cmd_scatter(Context& ctx, ResultEnvelope& env) {
  EvolutionEngine& eng = ctx.sector_engine();
  JointSpectrum js = momentum_sectors(eng);
  const int nsites = int(ctx.model.lat.num_sites());
  const double lo = ctx.manifest->get_double("massshell", "e_lo", 0.75 * js.gap);
  const double hi = ctx.manifest->get_double("massshell", "e_hi", 1.75 * js.gap);
  MassShell shell = extract_mass_shell(js, lo, hi);
  group_velocity(shell);
  if (!shell.condition_c)
    throw DomainError("scatter: extracted shell fails the dispersion condition (flat band?)");

  const int k1 = ctx.manifest->get_int("scatter", "p1_index", std::max(1, nsites / 4));
  const int k2 = ctx.manifest->get_int("scatter", "p2_index", nsites - std::max(1, nsites / 4));
  const double wp = ctx.manifest->get_double("scatter", "wp", 2.5 * 2.0 * kPi / nsites);
  const double we = ctx.manifest->get_double("scatter", "wE", 0.45 * js.gap);
  std::vector<double> tgrid = ctx.manifest->get_list("scatter", "times");
  if (tgrid.empty()) tgrid = {2.0, 4.0, 6.0, 8.0};

  EigvecCache cache(js.data);
  LocalOperator seed =
      LocalOperator::pauli(ctx.model.lat, ctx.model.lat.index_site(0), 1);
  CreationOperator b1 = make_creation_operator(seed, shell, js, cache, k1, we, wp);
  CreationOperator b2 = make_creation_operator(seed, shell, js, cache, k2, we, wp);
  WavePacket g1 = WavePacket::from_shell(shell, js.grid.point(k1)[0], wp, 0.0);
  WavePacket g2 = WavePacket::from_shell(shell, js.grid.point(k2)[0], wp, 0.0);
  HrContext c1(cache, b1), c2(cache, b2);

  // single-particle time invariance across the grid
  SparseEigenState om;
  om.amp = {{js.data->ground_global(), 1.0}};
  SparseEigenState ref = c1.apply(g1, 0.0, om);
  double invariance = 0.0;
  for (double t : tgrid) {
    SparseEigenState cur = c1.apply(g1, t, om);
    cx d2 = overlap(cur, cur) + overlap(ref, ref) - overlap(cur, ref) - overlap(ref, cur);
    invariance = std::max(invariance, std::sqrt(std::max(0.0, d2.real())));
  }

  std::vector<HrContext*> ops = {&c1, &c2};
  std::vector<const WavePacket*> pks = {&g1, &g2};
  json times = json::array(), dev = json::array(), ovl = json::array();
  std::vector<double> devs;
  for (double t : tgrid) {
    FockReport fr = fock_factorization_check(ops, pks, ops, pks, t);
    times.push_back(t);
    dev.push_back(fr.deviation);
    ovl.push_back(std::abs(fr.lhs));
    devs.push_back(fr.deviation);
  }
  SMatrixEstimate sm = s_matrix_element(ops, pks, ops, pks, tgrid);

  env.payload["times"] = times;
  env.payload["permanent_deviation"] = dev;
  env.payload["overlap_abs"] = ovl;
  env.payload["single_particle_invariance"] = invariance;
  json smj;
  smj["times"] = sm.times;
  json ovls = json::array();
  for (size_t i = 0; i < sm.overlaps.size(); ++i) {
    const double denom = sm.norm_in[i] * sm.norm_out[i];
    ovls.push_back({{"re", sm.overlaps[i].real()},
                    {"im", sm.overlaps[i].imag()},
                    {"normalized_abs", denom > 0 ? std::abs(sm.overlaps[i]) / denom : 0.0}});
  }
  smj["overlaps"] = ovls;
  smj["extrapolated_re"] = sm.extrapolated.real();
  smj["extrapolated_im"] = sm.extrapolated.imag();
  smj["error_bar"] = sm.error_bar;
  smj["finite_time_estimate"] = true;
  smj["truncated"] = sm.truncated;
  env.payload["smatrix"] = smj;

  // packet worldline for plotting
  json wl = json::array();
  for (double t : tgrid) {
    auto prof = g1.position_profile(t);
    json absrow = json::array();
    for (const cx& z : prof) absrow.push_back(std::abs(z));
    wl.push_back({{"t", t}, {"abs", absrow}});
  }
  env.payload["worldline"] = wl;

  verdict(env, "single_particle_time_invariance", invariance <= 1e-8,
          "max deviation = " + num(invariance) + ", tolerance 1e-8");
  bool smax_ok = true;
  for (const auto& o : smj["overlaps"])
    if (o.at("normalized_abs").get<double>() > 1.0 + 1e-6) smax_ok = false;
  verdict(env, "smatrix_contraction", smax_ok, "|S| <= 1 + 1e-6 at every grid time");
  bool decreasing = true;
  for (size_t i = 1; i < devs.size(); ++i)
    if (devs[i] > devs[i - 1]) decreasing = false;
  report(env, "permanent_deviation_trend",
         std::string(decreasing ? "monotone decreasing" : "non-monotone") +
             ", final = " + num(devs.empty() ? 0.0 : devs.back()));
}

void cmd_gapflow(Context& ctx, ResultEnvelope& env) {
  std::vector<int> sizes = ctx.manifest->get_int_list("gapflow", "sizes");
  if (sizes.empty()) sizes = {8, 10, 12};
  const double floor = ctx.manifest->get_double("gapflow", "floor", 0.5);
  GapFlow gf = gap_flow(ctx.model.phi, sizes, floor);
  env.payload["sizes"] = gf.sizes;
  env.payload["gaps"] = gf.gaps;
  env.payload["extrapolated"] = gf.extrapolated;
  env.payload["floor"] = gf.floor;
  env.payload["monotone_trend"] = gf.monotone_trend;
  verdict(env, "gap_above_floor", gf.pass,
          "min gap = " + num(*std::min_element(gf.gaps.begin(), gf.gaps.end())) +
              " > floor = " + num(floor));
}

std::string csv_for(const std::string& command, const ResultEnvelope& env) {
  std::ostringstream ss;
  ss.precision(17);
  if (command == "lightcone") {
    ss << "t,x,comm_norm\n";
    for (const auto& s : env.payload.at("samples"))
      ss << s.at("t").get<double>() << "," << s.at("x").get<int>() << ","
         << s.at("comm_norm").get<double>() << "\n";
    return ss.str();
  }
  if (command == "massshell") {
    ss << "p,sigma,dsigma,isolation\n";
    for (const auto& r : env.payload.at("band"))
      ss << r.at("p").get<double>() << "," << r.at("sigma").get<double>() << ","
         << r.at("dsigma_interp").get<double>() << "," << r.at("isolation").get<double>()
         << "\n";
    return ss.str();
  }
  if (command == "scatter") {
    ss << "t,permanent_deviation,overlap_abs\n";
    const auto& t = env.payload.at("times");
    for (size_t i = 0; i < t.size(); ++i)
      ss << t[i].get<double>() << "," << env.payload.at("permanent_deviation")[i].get<double>()
         << "," << env.payload.at("overlap_abs")[i].get<double>() << "\n";
    return ss.str();
  }
  return "";
}

}  // namespace

RunOutcome run_command(const std::string& command, const Manifest& manifest,
                       const RunOptions& opt) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw DomainError("unknown command: " + command);

  std::filesystem::create_directories(opt.out_dir);
  Cache cache(opt.out_dir, opt.no_cache);
  const std::string hash = manifest.hash();

  if (command == "all") {
    RunOutcome agg;
    agg.envelope.command = "all";
    agg.envelope.config_hash = hash;
    const std::vector<std::string> order = {"certify",  "spectrum", "massshell", "lightcone",
                                            "arveson",  "scatter",  "gapflow"};
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& sub : order) {
      RunOutcome oc = run_command(sub, manifest, opt);
      for (const auto& v : oc.envelope.verdicts)
        agg.envelope.verdicts.push_back({sub + "." + v.name, v.status, v.details});
      for (const auto& f : oc.files) agg.files.push_back(f);
      agg.envelope.payload[sub] = {{"wall_ms", oc.envelope.wall_ms},
                                   {"from_cache", oc.from_cache}};
    }
    agg.envelope.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    agg.exit_code = agg.envelope.any_fail() ? 1 : 0;
    const std::string path = opt.out_dir + "/all-" + hash.substr(0, 8) + ".json";
    write_text_file(path, agg.envelope.to_json().dump(2) + "\n");
    agg.files.push_back(path);
    return agg;
  }

  const std::string cache_key = hash + "-" + command;
  if (auto hit = cache.lookup(cache_key)) {
    RunOutcome oc;
    oc.envelope = ResultEnvelope::from_json(*hit);
    oc.from_cache = true;
    oc.exit_code = oc.envelope.any_fail() ? 1 : 0;
    const std::string path = opt.out_dir + "/" + command + "-" + hash.substr(0, 8) + ".json";
    write_text_file(path, hit->dump(2) + "\n");
    oc.files.push_back(path);
    return oc;
  }

  Context ctx;
  ctx.manifest = &manifest;
  ctx.model = read_model(manifest);

  RunOutcome oc;
  oc.envelope.command = command;
  oc.envelope.config_hash = hash;
  oc.envelope.metric = ctx.model.metric == Metric::LInf ? "linf" : "l1";
  const auto t0 = std::chrono::steady_clock::now();
  if (command == "certify") cmd_certify(ctx, oc.envelope);
  else if (command == "spectrum") cmd_spectrum(ctx, oc.envelope);
  else if (command == "massshell") cmd_massshell(ctx, oc.envelope);
  else if (command == "lightcone") cmd_lightcone(ctx, oc.envelope);
  else if (command == "arveson") cmd_arveson(ctx, oc.envelope);
  else if (command == "scatter") cmd_scatter(ctx, oc.envelope);
  else if (command == "gapflow") cmd_gapflow(ctx, oc.envelope);
  oc.envelope.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const json out = oc.envelope.to_json();
  cache.store(cache_key, out);
  const std::string path = opt.out_dir + "/" + command + "-" + hash.substr(0, 8) + ".json";
  write_text_file(path, out.dump(2) + "\n");
  oc.files.push_back(path);
  const std::string csv = csv_for(command, oc.envelope);
  if (!csv.empty()) {
    const std::string cpath = opt.out_dir + "/" + command + "-" + hash.substr(0, 8) + ".csv";
    write_text_file(cpath, csv);
    oc.files.push_back(cpath);
  }
  if (opt.plot) {
    std::vector<std::pair<std::string, std::string>> kinds;
    if (command == "massshell") kinds.push_back({"dispersion", "-dispersion"});
    if (command == "lightcone") kinds.push_back({"lightcone", "-cone"});
    if (command == "scatter") {
      kinds.push_back({"packet", "-packet"});
      kinds.push_back({"overlap", "-overlap"});
    }
    for (const auto& [kind, suffix] : kinds) {
      const std::string spath =
          opt.out_dir + "/" + command + "-" + hash.substr(0, 8) + suffix + ".svg";
      write_text_file(spath, render_svg(kind, kind == "overlap" || kind == "packet"
                                                  ? oc.envelope.payload
                                                  : oc.envelope.payload));
      oc.files.push_back(spath);
    }
  }
  oc.exit_code = oc.envelope.any_fail() ? 1 : 0;
  return oc;
}

void plot_result_file(const std::string& result_path, const std::string& kind,
                      const std::string& svg_path) {
  const nlohmann::json j = nlohmann::json::parse(read_text_file(result_path));
  ResultEnvelope env = ResultEnvelope::from_json(j);
  write_text_file(svg_path, render_svg(kind, env.payload));
}

}  // namespace hrlab
