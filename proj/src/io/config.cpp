#include "hope/io/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "hope/errors.hpp"

namespace hope::io {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kKnown = {
    "wave.k0", "wave.theta", "wave.phi_inc", "wave.te", "wave.tm", "wave.te_phase",
    "wave.tm_phase", "wave.d_x", "wave.d_y", "wave.h", "wave.eps_u", "wave.eps_w",
    "wave.eps_bar",
    "envelope.kind", "envelope.eps_prime", "envelope.a", "envelope.b", "envelope.d",
    "envelope.g", "envelope.w", "envelope.rho0", "envelope.value",
    "grid.P", "grid.Q", "grid.Nz", "grid.zgrid", "grid.wood_tol",
    "run.L", "run.delta", "run.pade_L", "run.pade_M", "run.deltas", "run.Ls",
    "run.sweep_min", "run.sweep_max", "run.sweep_steps", "run.growth_lo", "run.growth_hi",
    "run.oracle_layers", "run.plot_nx", "run.plot_nz", "run.plot_y", "run.plot_zlo",
    "run.plot_zhi", "run.res_guard", "run.res_tol", "run.cond_limit", "run.verify_residual",
    "run.iter_tol", "run.max_iter", "run.krylov", "run.restart"};

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  std::istringstream in(*v);
  T out{};
  in >> std::boolalpha >> out;
  if (in.fail() || !(in >> std::ws).eof())
    throw ConfigError("cannot parse '" + key + "' = '" + *v + "'");
  return out;
}

template <class T>
std::vector<T> get_list(const pt::ptree& tree, const std::string& key, std::vector<T> fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  std::vector<T> out;
  std::string item;
  std::istringstream in(*v);
  while (std::getline(in, item, ',')) {
    std::istringstream one(item);
    T x{};
    one >> x;
    if (one.fail() || !(one >> std::ws).eof())
      throw ConfigError("cannot parse list '" + key + "' = '" + *v + "'");
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError("empty list '" + key + "'");
  return out;
}

}  // namespace

ZGridSpec RunConfig::zgrid_spec() const {
  if (auto_zgrid) return suggest_zgrid(envelope, wave.h, Nz);
  ZGridSpec z;
  z.nodes = Nz;
  return z;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key outside a section: " + section);
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!kKnown.count(full)) throw ConfigError("unknown config key: " + full);
      c.echo.emplace_back(full, value.data());
    }
  }

  WaveConfig& w = c.wave;
  w.k0 = get(tree, "wave.k0", w.k0);
  w.theta = get(tree, "wave.theta", w.theta);
  w.phi_inc = get(tree, "wave.phi_inc", w.phi_inc);
  w.d_x = get(tree, "wave.d_x", w.d_x);
  w.d_y = get(tree, "wave.d_y", w.d_y);
  w.h = get(tree, "wave.h", w.h);
  w.eps_u = get(tree, "wave.eps_u", w.eps_u);
  w.eps_w = get(tree, "wave.eps_w", w.eps_w);
  w.eps_bar = get(tree, "wave.eps_bar", w.eps_bar);
  const double te = get(tree, "wave.te", 1.0), tm = get(tree, "wave.tm", 0.0);
  const double te_ph = get(tree, "wave.te_phase", 0.0), tm_ph = get(tree, "wave.tm_phase", 0.0);
  const double mag = std::hypot(te, tm);
  if (!(mag > 0.0)) throw ConfigError("polarization amplitudes te, tm are both zero");
  // Amplitudes are normalized so that |A| = 1.
  w.A = WaveConfig::polarization(w.theta, w.phi_inc, std::polar(te / mag, te_ph),
                                 std::polar(tm / mag, tm_ph));
  w.validate();

  const std::string kind = get<std::string>(tree, "envelope.kind", "zero");
  const double eps_prime = get(tree, "envelope.eps_prime", 2.25);
  const double sharp = get(tree, "envelope.w", 50.0);
  if (kind == "laminar") {
    c.envelope = laminar_profile(eps_prime, get(tree, "envelope.a", -0.25),
                                 get(tree, "envelope.b", 0.25), sharp, w.eps_bar);
  } else if (kind == "slab_with_gap") {
    c.envelope = slab_with_gap(eps_prime, get(tree, "envelope.d", 0.25),
                               get(tree, "envelope.g", 0.1), sharp);
  } else if (kind == "constant") {
    c.envelope = constant_envelope(get(tree, "envelope.value", 1.0), w.eps_bar);
  } else if (kind == "zero") {
    c.envelope = constant_envelope(0.0, w.eps_bar);
  } else {
    throw ConfigError("unknown envelope kind: " + kind);
  }
  c.envelope.rho0 = get(tree, "envelope.rho0", 0.0);

  c.P = get(tree, "grid.P", c.P);
  c.Q = get(tree, "grid.Q", c.Q);
  c.Nz = get(tree, "grid.Nz", c.Nz);
  const std::string zg = get<std::string>(tree, "grid.zgrid", "auto");
  if (zg != "auto" && zg != "uniform") throw ConfigError("grid.zgrid must be auto or uniform");
  c.auto_zgrid = zg == "auto";
  c.wood_tol = get(tree, "grid.wood_tol", c.wood_tol);
  if (c.P < 0 || c.Q < 0) throw ConfigError("grid.P and grid.Q must be nonnegative");
  if (c.Nz < 4) throw ConfigError("grid.Nz must be at least 4");

  c.L = get(tree, "run.L", c.L);
  c.delta = get(tree, "run.delta", c.delta);
  c.pade_L = get(tree, "run.pade_L", c.pade_L);
  c.pade_M = get(tree, "run.pade_M", c.pade_M);
  c.deltas = get_list(tree, "run.deltas", c.deltas);
  c.Ls = get_list(tree, "run.Ls", c.Ls);
  c.sweep_min = get(tree, "run.sweep_min", c.sweep_min);
  c.sweep_max = get(tree, "run.sweep_max", c.sweep_max);
  c.sweep_steps = get(tree, "run.sweep_steps", c.sweep_steps);
  c.growth_lo = get(tree, "run.growth_lo", c.growth_lo);
  c.growth_hi = get(tree, "run.growth_hi", c.growth_hi);
  c.oracle_layers = get(tree, "run.oracle_layers", c.oracle_layers);
  c.plot_nx = get(tree, "run.plot_nx", c.plot_nx);
  c.plot_nz = get(tree, "run.plot_nz", c.plot_nz);
  c.plot_y = get(tree, "run.plot_y", c.plot_y);
  c.plot_zlo = get(tree, "run.plot_zlo", -w.h);
  c.plot_zhi = get(tree, "run.plot_zhi", w.h);
  c.solver.res_guard = get(tree, "run.res_guard", c.solver.res_guard);
  c.solver.res_tol = get(tree, "run.res_tol", c.solver.res_tol);
  c.solver.cond_limit = get(tree, "run.cond_limit", c.solver.cond_limit);
  c.solver.verify_residual = get(tree, "run.verify_residual", c.solver.verify_residual);
  c.iter.iter_tol = get(tree, "run.iter_tol", c.iter.iter_tol);
  c.iter.max_iter = get(tree, "run.max_iter", c.iter.max_iter);
  c.iter.krylov = get(tree, "run.krylov", c.iter.krylov);
  c.iter.restart = get(tree, "run.restart", c.iter.restart);
  if (c.L < 0) throw ConfigError("run.L must be nonnegative");
  if (c.pade_L + c.pade_M > c.L) throw ConfigError("run.pade_L + run.pade_M exceeds run.L");
  if (c.sweep_steps < 1) throw ConfigError("run.sweep_steps must be positive");
  if (c.oracle_layers < 1) throw ConfigError("run.oracle_layers must be positive");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hope::io
