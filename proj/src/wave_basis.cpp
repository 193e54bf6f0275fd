#include "hope/wave_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hope/errors.hpp"

namespace hope {

double WaveConfig::k_u() const { return std::sqrt(eps_u) * k0; }

double WaveConfig::alpha() const {
  return k_u() * std::sin(theta) * std::cos(phi_inc);
}

double WaveConfig::beta() const {
  return k_u() * std::sin(theta) * std::sin(phi_inc);
}

double WaveConfig::gamma_inc() const { return k_u() * std::cos(theta); }

Vec3c WaveConfig::kappa() const {
  return {cplx{alpha()}, cplx{beta()}, cplx{-gamma_inc()}};
}

Vec3c WaveConfig::B() const {
  Vec3c b = cross(kappa(), A);
  for (auto& c : b) c /= omega_mu0();
  return b;
}

Vec3c WaveConfig::te_direction(double /*theta*/, double phi_inc) {
  return {cplx{-std::sin(phi_inc)}, cplx{std::cos(phi_inc)}, cplx{0.0}};
}

Vec3c WaveConfig::tm_direction(double theta, double phi_inc) {
  const Vec3c khat{cplx{std::sin(theta) * std::cos(phi_inc)},
                   cplx{std::sin(theta) * std::sin(phi_inc)},
                   cplx{-std::cos(theta)}};
  return cross(khat, te_direction(theta, phi_inc));
}

Vec3c WaveConfig::polarization(double theta, double phi_inc, cplx te, cplx tm) {
  const Vec3c s = te_direction(theta, phi_inc);
  const Vec3c p = tm_direction(theta, phi_inc);
  Vec3c a{};
  for (int i = 0; i < 3; ++i) a[i] = te * s[i] + tm * p[i];
  const double n = std::sqrt(norm2(a));
  if (n == 0.0) throw ConfigError("polarization amplitudes are both zero");
  for (auto& c : a) c /= n;
  return a;
}

void WaveConfig::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(std::isfinite(k0) && k0 > 0.0, "k0 must be positive");
  require(eps_u > 0.0 && eps_w > 0.0 && eps_bar > 0.0,
          "eps_u, eps_w and eps_bar must be positive");
  require(d_x > 0.0 && d_y > 0.0 && h > 0.0, "d_x, d_y and h must be positive");
  require(theta >= 0.0 && theta < kPi / 2.0, "theta must lie in [0, pi/2)");
  require(std::abs(std::sqrt(norm2(A)) - 1.0) <= 1e-12,
          "polarization A must have unit norm");
  const Vec3c kap = kappa();
  require(std::abs(dot(A, kap)) <= 1e-12 * std::max(1.0, k_u()),
          "polarization A must be transverse to the incidence direction");
}

cplx vertical_wavenumber(double eps, double k0, double alpha_p, double beta_q) {
  const double s = eps * k0 * k0 - alpha_p * alpha_p - beta_q * beta_q;
  if (s >= 0.0) return {std::sqrt(s), 0.0};
  return {0.0, std::sqrt(-s)};
}

double ModeGrid::wood_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gamma_u.size(); ++i) {
    m = std::min({m, std::abs(gamma_u[i]), std::abs(gamma_w[i])});
  }
  return m;
}

ModeGrid build_mode_grid(const WaveConfig& cfg, int P, int Q, double wood_tol) {
  cfg.validate();
  if (P < 0 || Q < 0) throw ConfigError("truncation half-widths P, Q must be >= 0");

  ModeGrid g;
  g.P = P;
  g.Q = Q;
  g.alpha.resize(g.num_p());
  g.beta.resize(g.num_q());
  for (int p = -P; p <= P; ++p)
    g.alpha[p + P] = cfg.alpha() + (2.0 * kPi / cfg.d_x) * p;
  for (int q = -Q; q <= Q; ++q)
    g.beta[q + Q] = cfg.beta() + (2.0 * kPi / cfg.d_y) * q;

  g.gamma_u.resize(g.num_modes());
  g.gamma_w.resize(g.num_modes());
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const double a = g.alpha_of(m);
    const double b = g.beta_of(m);
    g.gamma_u[m] = vertical_wavenumber(cfg.eps_u, cfg.k0, a, b);
    g.gamma_w[m] = vertical_wavenumber(cfg.eps_w, cfg.k0, a, b);
    if (std::abs(g.gamma_u[m]) < wood_tol)
      throw WoodAnomalyError(g.p_of(m), g.q_of(m), 'u', std::abs(g.gamma_u[m]));
    if (std::abs(g.gamma_w[m]) < wood_tol)
      throw WoodAnomalyError(g.p_of(m), g.q_of(m), 'w', std::abs(g.gamma_w[m]));
    if (cfg.eps_u * cfg.k0 * cfg.k0 - a * a - b * b > 0.0) g.propagating_u.push_back(m);
    if (cfg.eps_w * cfg.k0 * cfg.k0 - a * a - b * b > 0.0) g.propagating_w.push_back(m);
  }
  return g;
}

Vec3c incident_field_at(const WaveConfig& cfg, double x, double y, double z) {
  const cplx phase =
      std::exp(kI * (cfg.alpha() * x + cfg.beta() * y - cfg.gamma_inc() * z));
  return {cfg.A[0] * phase, cfg.A[1] * phase, cfg.A[2] * phase};
}

}  // namespace hope
