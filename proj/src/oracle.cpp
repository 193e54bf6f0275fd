#include "hope/oracle.hpp"

#include <cmath>

#include "hope/errors.hpp"

namespace hope {

void LayerStack::validate() const {
  if (interfaces.size() != eps_layers.size() + 1)
    throw ConfigError("layer stack needs one more interface than layers");
  for (std::size_t i = 0; i + 1 < interfaces.size(); ++i)
    if (!(interfaces[i] > interfaces[i + 1]))
      throw ConfigError("layer interfaces must decrease strictly");
  for (double e : eps_layers)
    if (!(e > 0.0)) throw ConfigError("layer permittivity must be positive");
  if (!(eps_top > 0.0) || !(eps_bottom > 0.0))
    throw ConfigError("half-space permittivity must be positive");
}

namespace {

cplx kz_of(double eps, double k0, double kt) {
  cplx g = std::sqrt(cplx(eps * k0 * k0 - kt * kt));
  if (g.imag() < 0.0) g = -g;
  return g;
}

struct Amplitudes {
  cplx r, t;
  double R, T;
};

// eta(eps, kz): tangential H / tangential E for a downgoing wave.
template <class Eta>
Amplitudes characteristic(const LayerStack& s, double k0, double kt, Eta eta) {
  cplx m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;
  for (std::size_t j = 0; j < s.num_layers(); ++j) {
    const double t = s.interfaces[j] - s.interfaces[j + 1];
    if (t <= 0.0) continue;
    const cplx kz = kz_of(s.eps_layers[j], k0, kt);
    const cplx e = eta(s.eps_layers[j], kz);
    const cplx c = std::cos(kz * t), sn = std::sin(kz * t);
    const cplx a11 = c, a12 = -kI * sn / e, a21 = -kI * e * sn, a22 = c;
    const cplx n11 = m11 * a11 + m12 * a21, n12 = m11 * a12 + m12 * a22;
    const cplx n21 = m21 * a11 + m22 * a21, n22 = m21 * a12 + m22 * a22;
    m11 = n11;
    m12 = n12;
    m21 = n21;
    m22 = n22;
  }
  const cplx e0 = eta(s.eps_top, kz_of(s.eps_top, k0, kt));
  const cplx es = eta(s.eps_bottom, kz_of(s.eps_bottom, k0, kt));
  const cplx den = e0 * m11 + e0 * es * m12 + m21 + es * m22;
  Amplitudes a;
  a.r = (e0 * m11 + e0 * es * m12 - m21 - es * m22) / den;
  a.t = 2.0 * e0 / den;
  a.R = std::norm(a.r);
  a.T = e0.real() > 0.0 ? es.real() / e0.real() * std::norm(a.t) : 0.0;
  return a;
}

}  // namespace

TransferResult transfer_matrix(const LayerStack& stack, const WaveConfig& cfg) {
  stack.validate();
  const double k0 = cfg.k0;
  const double kt = std::hypot(cfg.alpha(), cfg.beta());
  if (std::abs(kz_of(stack.eps_top, k0, kt)) < kDefaultWoodTol ||
      std::abs(kz_of(stack.eps_bottom, k0, kt)) < kDefaultWoodTol)
    throw WoodAnomalyError(0, 0, 'u', 0.0);
  const Amplitudes te = characteristic(stack, k0, kt, [k0](double, cplx kz) { return kz / k0; });
  const Amplitudes tm =
      characteristic(stack, k0, kt, [k0](double eps, cplx kz) { return eps * k0 / kz; });
  TransferResult r;
  r.r_te = te.r;
  r.t_te = te.t;
  r.r_tm = tm.r;
  r.t_tm = tm.t;
  r.R_te = te.R;
  r.T_te = te.T;
  r.R_tm = tm.R;
  r.T_tm = tm.T;
  const double ws = std::norm(dot(WaveConfig::te_direction(cfg.theta, cfg.phi_inc), cfg.A));
  const double wp = std::norm(dot(WaveConfig::tm_direction(cfg.theta, cfg.phi_inc), cfg.A));
  const double wt = ws + wp;
  r.R = (ws * te.R + wp * tm.R) / wt;
  r.T = (ws * te.T + wp * tm.T) / wt;
  return r;
}

LayerStack laminar_sample(const EnvelopeSpec& spec, double rho, const WaveConfig& cfg,
                          int n_layers) {
  if (n_layers < 1) throw ConfigError("laminar_sample needs at least one layer");
  if (!spec.is_laminar()) throw ConfigError("envelope is not laminar");
  LayerStack s;
  s.eps_top = cfg.eps_u;
  s.eps_bottom = cfg.eps_w;
  const double h = cfg.h, dz = 2.0 * h / n_layers;
  s.interfaces.push_back(h);
  for (int j = 0; j < n_layers; ++j) {
    const double zm = h - (j + 0.5) * dz;
    const double eps = cfg.eps_bar * (1.0 - rho * spec.profile(zm));
    const double lower = j + 1 == n_layers ? -h : h - (j + 1) * dz;
    if (!s.eps_layers.empty() && s.eps_layers.back() == eps) {
      s.interfaces.back() = lower;
    } else {
      s.eps_layers.push_back(eps);
      s.interfaces.push_back(lower);
    }
  }
  return s;
}

LayerStack laminar_sample(const EnvelopeField& env, double rho, int n_layers) {
  if (!env.laminar) throw ConfigError("envelope is not laminar");
  return laminar_sample(env.spec, rho, env.disc->config(), n_layers);
}

OracleReflectance laminar_reflectance(const EnvelopeSpec& spec, double rho,
                                      const WaveConfig& cfg, int n_layers) {
  const TransferResult a = transfer_matrix(laminar_sample(spec, rho, cfg, n_layers), cfg);
  const TransferResult b = transfer_matrix(laminar_sample(spec, rho, cfg, 2 * n_layers), cfg);
  OracleReflectance o;
  o.R_coarse = a.R;
  o.R_fine = b.R;
  o.R = (4.0 * b.R - a.R) / 3.0;
  o.T = (4.0 * b.T - a.T) / 3.0;
  o.richardson_gap = std::abs(b.R - a.R);
  return o;
}

}  // namespace hope
