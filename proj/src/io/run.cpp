#include "hope/io/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "hope/errors.hpp"
#include "hope/hope_engine.hpp"
#include "hope/io/config.hpp"
#include "hope/io/output.hpp"
#include "hope/oracle.hpp"
#include "hope/scattering.hpp"

#ifndef HOPE_VERSION
#define HOPE_VERSION "unknown"
#endif

namespace hope::io {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// JSON has no NaN or infinity; such values become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Context {
  RunConfig cfg;
  DiscretizationPtr disc;
  EnvelopeField env;
  json manifest;
  json timings = json::object();
};

json config_echo(const RunConfig& c) {
  json e = json::object();
  for (const auto& [k, v] : c.echo) e[k] = v;
  return e;
}

void describe_discretization(Context& ctx) {
  const Discretization& d = *ctx.disc;
  json breaks = json::array();
  for (const auto& el : d.z().elements()) breaks.push_back({el.a, el.b, el.last - el.first});
  ctx.manifest["grid"] = {{"P", ctx.cfg.P},       {"Q", ctx.cfg.Q},   {"Nz", d.Nz()},
                          {"Mx", d.Mx()},         {"My", d.My()},     {"elements", breaks},
                          {"modes", d.num_modes()}, {"auto_zgrid", ctx.cfg.auto_zgrid}};
  ctx.manifest["diagnostics"]["wood_margin"] = num(d.modes().wood_margin());
  ctx.manifest["diagnostics"]["min_abs_eps0"] = num(ctx.env.min_abs_eps0);
  ctx.manifest["diagnostics"]["max_abs_ratio"] = num(ctx.env.max_abs_ratio);
  ctx.manifest["diagnostics"]["face_mismatch"] = num(ctx.env.face_mismatch);
  ctx.manifest["diagnostics"]["laminar"] = ctx.env.laminar;
}

void setup_solver_context(Context& ctx) {
  const auto t0 = Clock::now();
  ctx.disc = Discretization::create(ctx.cfg.wave, ctx.cfg.P, ctx.cfg.Q, ctx.cfg.zgrid_spec(),
                                    ctx.cfg.wood_tol);
  ctx.env = sample_envelope(ctx.cfg.envelope, ctx.disc);
  describe_discretization(ctx);
  ctx.timings["setup_s"] = seconds_since(t0);
}

TaylorSeries expand(Context& ctx, int L) {
  const auto t0 = Clock::now();
  HopeOptions opts;
  opts.solver = ctx.cfg.solver;
  opts.iter = ctx.cfg.iter;
  const OrderSolver solver(ctx.disc, opts.solver);
  TaylorSeries s = compute_expansion(ctx.env, L, solver, opts);
  ctx.timings["expansion_s"] = seconds_since(t0);
  json& diag = ctx.manifest["diagnostics"];
  diag["max_condition"] = num(s.max_condition);
  diag["worst_mode"] = {s.worst_p, s.worst_q};
  json orders = json::array();
  for (int l = 0; l <= s.L(); ++l)
    orders.push_back({{"ell", l},
                      {"xnorm", num(s.xnorms[l])},
                      {"residual", num(s.residuals[l])},
                      {"rhs_norm", num(s.rhs_norms[l])},
                      {"divergence_defect", num(s.divergence_defects[l])},
                      {"iterations", s.iterations[l]}});
  ctx.manifest["orders"] = orders;
  return s;
}

void write_series(OutputDir& out, const TaylorSeries& s) {
  std::vector<std::vector<double>> rows;
  for (int l = 0; l <= s.L(); ++l)
    rows.push_back({double(l), s.xnorms[l], s.residuals[l], s.rhs_norms[l],
                    s.divergence_defects[l], double(s.iterations[l])});
  out.write_csv("xnorms.csv",
                {"ell", "xnorm", "residual", "rhs_norm", "divergence_defect", "iterations"}, rows);
}

void append_efficiencies(std::vector<std::vector<double>>& rows, double method,
                         const Efficiencies& e) {
  for (const auto& r : e.reflected)
    rows.push_back({method, 0.0, double(r.p), double(r.q), r.efficiency});
  for (const auto& t : e.transmitted)
    rows.push_back({method, 1.0, double(t.p), double(t.q), t.efficiency});
}

json efficiency_summary(const Efficiencies& e) {
  return {{"R_total", num(e.R_total)},
          {"T_total", num(e.T_total)},
          {"energy_defect", num(e.energy_defect)},
          {"specular_R", num(e.specular_R)},
          {"specular_T", num(e.specular_T)}};
}

int cmd_solve(Context& ctx, OutputDir& out) {
  setup_solver_context(ctx);
  const RunConfig& c = ctx.cfg;
  const TaylorSeries s = expand(ctx, c.L);
  write_series(out, s);
  const VectorFieldCoeffs Et = taylor_sum(s, c.delta, c.L);
  PadeReport pr;
  const VectorFieldCoeffs Ep = pade_sum(s, c.delta, c.pade_L, c.pade_M, &pr);
  const Efficiencies et = efficiencies(Et), ep = efficiencies(Ep);
  std::vector<std::vector<double>> rows;
  append_efficiencies(rows, 0.0, et);
  append_efficiencies(rows, 1.0, ep);
  out.write_csv("efficiencies.csv", {"method", "side", "p", "q", "efficiency"}, rows);
  const double scat = scattered_energy(Et);
  ctx.manifest["result"] = {{"delta", c.delta},
                            {"taylor", efficiency_summary(et)},
                            {"pade", efficiency_summary(ep)},
                            {"pade_order", {c.pade_L, c.pade_M}},
                            {"pade_near_poles", pr.near_poles},
                            {"pade_reduced", pr.reduced},
                            {"scattered_energy", num(scat)}};
  std::printf("orders 0..%d, delta %.17g\n", c.L, c.delta);
  std::printf("taylor  R %.17g  T %.17g  defect %.3e\n", et.R_total, et.T_total,
              et.energy_defect);
  std::printf("pade    R %.17g  T %.17g  defect %.3e  near poles %zu\n", ep.R_total,
              ep.T_total, ep.energy_defect, pr.near_poles);
  std::printf("scattered energy %.3e\n", scat);
  return 0;
}

int cmd_converge(Context& ctx, OutputDir& out) {
  setup_solver_context(ctx);
  const RunConfig& c = ctx.cfg;
  const TaylorSeries s = expand(ctx, c.L);
  write_series(out, s);
  const int hi = c.growth_hi < 0 ? c.L : c.growth_hi;
  const GrowthEstimate g = estimate_growth(s, c.growth_lo, hi);
  double dmax = 0.0;
  for (double d : c.deltas) dmax = std::max(dmax, std::abs(d));
  const ReferenceKind ref =
      g.B_hat * dmax < 1.0 ? ReferenceKind::taylor_full : ReferenceKind::pade_diagonal;
  const auto t0 = Clock::now();
  const ErrorTable t = convergence_study(s, ctx.env, c.deltas, c.Ls, ref);
  std::vector<std::vector<double>> rows, slopes;
  for (std::size_t i = 0; i < t.deltas.size(); ++i) {
    for (std::size_t j = 0; j < t.Ls.size(); ++j)
      rows.push_back({t.deltas[i], double(t.Ls[j]), t.err[i][j]});
    slopes.push_back({t.deltas[i], t.slopes[i], t.predicted[i]});
  }
  out.write_csv("errors.csv", {"delta", "L", "xnorm_error"}, rows);
  out.write_csv("slopes.csv", {"delta", "slope", "log_B_hat_delta"}, slopes);

  // Laminar media also get reflectance errors against the transfer-matrix oracle.
  if (ctx.env.laminar) {
    std::vector<std::vector<double>> rr;
    for (double d : t.deltas) {
      const OracleReflectance o =
          laminar_reflectance(c.envelope, c.envelope.rho0 + d, c.wave, c.oracle_layers);
      for (int L : t.Ls)
        rr.push_back({d, double(L), std::abs(efficiencies(taylor_sum(s, d, L)).specular_R - o.R),
                      o.R});
    }
    out.write_csv("errors_oracle.csv", {"delta", "L", "reflectance_error", "oracle_R"}, rr);
  }
  ctx.timings["study_s"] = seconds_since(t0);
  ctx.manifest["result"] = {{"reference", t.reference},
                            {"B_hat", num(g.B_hat)},
                            {"K_hat", num(g.K_hat)},
                            {"growth_window", {g.lo, g.hi}}};
  std::printf("B_hat %.6g  K_hat %.6g  reference %s\n", g.B_hat, g.K_hat, t.reference.c_str());
  for (std::size_t i = 0; i < t.deltas.size(); ++i)
    std::printf("delta %-8.4g slope %-12.6g log(B_hat delta) %.6g\n", t.deltas[i], t.slopes[i],
                t.predicted[i]);
  return 0;
}

int cmd_continue(Context& ctx, OutputDir& out) {
  setup_solver_context(ctx);
  const RunConfig& c = ctx.cfg;
  const TaylorSeries s = expand(ctx, c.L);
  write_series(out, s);
  std::vector<std::vector<double>> rows;
  std::size_t poles = 0;
  for (int k = 0; k < c.sweep_steps; ++k) {
    const double d = c.sweep_steps == 1
                         ? c.sweep_min
                         : c.sweep_min + (c.sweep_max - c.sweep_min) * k / (c.sweep_steps - 1);
    const Efficiencies et = efficiencies(taylor_sum(s, d, c.L));
    PadeReport pr;
    const Efficiencies ep = efficiencies(pade_sum(s, d, c.pade_L, c.pade_M, &pr));
    poles += pr.near_poles;
    double ro = kNaN, to = kNaN;
    if (ctx.env.laminar) {
      const OracleReflectance o =
          laminar_reflectance(c.envelope, c.envelope.rho0 + d, c.wave, c.oracle_layers);
      ro = o.R;
      to = o.T;
    }
    rows.push_back({d, et.specular_R, ep.specular_R, ro, et.R_total, ep.R_total, ep.T_total,
                    to, ep.energy_defect, double(pr.near_poles)});
    std::printf("delta %-8.4g taylor %-22.17g pade %-22.17g oracle %.17g\n", d, et.specular_R,
                ep.specular_R, ro);
  }
  out.write_csv("continue.csv",
                {"delta", "R00_taylor", "R00_pade", "R_oracle", "R_taylor", "R_pade", "T_pade",
                 "T_oracle", "energy_defect_pade", "pade_near_poles"},
                rows);
  ctx.manifest["result"] = {{"pade_order", {c.pade_L, c.pade_M}},
                            {"near_poles_total", poles},
                            {"oracle", ctx.env.laminar ? "transfer-matrix" : "none"}};
  return 0;
}

int cmd_envelope_plot(Context& ctx, OutputDir& out) {
  const RunConfig& c = ctx.cfg;
  const double rho = c.envelope.rho0 + c.delta;
  const EnvelopeSlice sl = envelope_slice(c.envelope, c.wave.d_x, c.plot_y, c.plot_zlo,
                                          c.plot_zhi, c.plot_nx, c.plot_nz, rho);
  std::vector<std::vector<double>> e, v;
  const std::size_t nz = sl.z.size();
  double emin = 1e300, emax = -1e300;
  for (std::size_t i = 0; i < sl.x.size(); ++i)
    for (std::size_t k = 0; k < nz; ++k) {
      const double ev = sl.E[i * nz + k];
      e.push_back({sl.x[i], sl.z[k], ev});
      v.push_back({sl.x[i], sl.z[k], sl.eps_v[i * nz + k]});
      emin = std::min(emin, ev);
      emax = std::max(emax, ev);
    }
  out.write_csv("envelope_E.csv", {"x", "z", "E"}, e);
  out.write_csv("envelope_eps.csv", {"x", "z", "eps_v"}, v);
  ctx.manifest["result"] = {{"rho", rho},
                            {"nx", sl.x.size()},
                            {"nz", nz},
                            {"E_min", emin},
                            {"E_max", emax},
                            {"kind", c.envelope.kind_name()}};
  std::printf("envelope %s on %zu x %zu grid, E in [%.6g, %.6g]\n",
              c.envelope.kind_name().c_str(), sl.x.size(), nz, emin, emax);
  return 0;
}

int cmd_oracle(Context& ctx, OutputDir& out) {
  const RunConfig& c = ctx.cfg;
  if (!c.envelope.is_laminar()) throw ConfigError("oracle needs a laminar envelope");
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < c.sweep_steps; ++k) {
    const double d = c.sweep_steps == 1
                         ? c.sweep_min
                         : c.sweep_min + (c.sweep_max - c.sweep_min) * k / (c.sweep_steps - 1);
    const OracleReflectance o =
        laminar_reflectance(c.envelope, c.envelope.rho0 + d, c.wave, c.oracle_layers);
    rows.push_back({d, o.R, o.T, o.R_coarse, o.R_fine, o.richardson_gap});
    std::printf("delta %-8.4g R %.17g T %.17g\n", d, o.R, o.T);
  }
  out.write_csv("oracle.csv", {"delta", "R", "T", "R_coarse", "R_fine", "richardson_gap"}, rows);
  ctx.manifest["result"] = {{"layers", c.oracle_layers}, {"extrapolation", "richardson"}};
  return 0;
}

}  // namespace

std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HOPE_OUT_DIR"); env && *env) return env;
  return "hope_out";
}

int run(const CliOptions& opts) {
  static const std::map<std::string, int (*)(Context&, OutputDir&)> commands = {
      {"solve", cmd_solve},
      {"converge", cmd_converge},
      {"continue", cmd_continue},
      {"envelope-plot", cmd_envelope_plot},
      {"oracle", cmd_oracle}};
  try {
    const auto it = commands.find(opts.subcommand);
    if (it == commands.end()) throw ConfigError("unknown subcommand: " + opts.subcommand);
#ifdef _OPENMP
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    Context ctx;
    ctx.cfg = load_config(opts.config_path);
    OutputDir out(resolve_out_dir(opts.out_dir));
    ctx.manifest = {{"version", HOPE_VERSION},
                    {"subcommand", opts.subcommand},
                    {"config_path", opts.config_path},
                    {"config", config_echo(ctx.cfg)},
                    {"threads", threads},
                    {"seed", opts.seed}};
    ctx.manifest["diagnostics"] = json::object();
    const auto t0 = Clock::now();
    const int status = it->second(ctx, out);
    ctx.timings["total_s"] = seconds_since(t0);
    ctx.manifest["timings"] = ctx.timings;
    out.write_manifest(ctx.manifest);
    return status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::failure);
  }
}

}  // namespace hope::io
