#include "hope/scattering.hpp"

#include <cmath>

namespace hope {

Efficiencies efficiencies(const VectorFieldCoeffs& E) {
  const Discretization& d = *E.disc();
  const WaveConfig& cfg = d.config();
  const ModeGrid& g = d.modes();
  const int top = d.Nz() - 1;
  const double g_inc = cfg.gamma_inc();
  const double a_inc = norm2(cfg.A);
  const cplx ph = std::exp(-kI * g_inc * cfg.h);
  const std::size_t m00 = g.index(0, 0);

  Efficiencies out;
  for (std::size_t m : g.propagating_u) {
    const double a = g.alpha_of(m), b = g.beta_of(m), gm = g.gamma_u[m].real();
    cplx ux = E.at(0, m, top), uy = E.at(1, m, top);
    if (m == m00) {
      ux -= cfg.A[0] * ph;
      uy -= cfg.A[1] * ph;
    }
    const Vec3c u{ux, uy, -(a * ux + b * uy) / gm};
    const double eff = gm * norm2(u) / (g_inc * a_inc);
    out.reflected.push_back({g.p_of(m), g.q_of(m), eff, u});
    out.R_total += eff;
    if (m == m00) out.specular_R = eff;
  }
  for (std::size_t m : g.propagating_w) {
    const double a = g.alpha_of(m), b = g.beta_of(m), gm = g.gamma_w[m].real();
    const cplx wx = E.at(0, m, 0), wy = E.at(1, m, 0);
    const Vec3c w{wx, wy, (a * wx + b * wy) / gm};
    const double eff = gm * norm2(w) / (g_inc * a_inc);
    out.transmitted.push_back({g.p_of(m), g.q_of(m), eff, w});
    out.T_total += eff;
    if (m == m00) out.specular_T = eff;
  }
  out.energy_defect = 1.0 - out.R_total - out.T_total;
  return out;
}

double scattered_energy(const VectorFieldCoeffs& E_total) {
  const Discretization& d = *E_total.disc();
  const WaveConfig& cfg = d.config();
  const ModeGrid& g = d.modes();
  const VectorFieldCoeffs S = E_total - incident_field(E_total.disc());
  const int top = d.Nz() - 1;
  double acc = 0.0;
  for (std::size_t m : g.propagating_u) {
    const double a = g.alpha_of(m), b = g.beta_of(m), gm = g.gamma_u[m].real();
    const cplx ux = S.at(0, m, top), uy = S.at(1, m, top);
    acc += gm * norm2(Vec3c{ux, uy, -(a * ux + b * uy) / gm});
  }
  for (std::size_t m : g.propagating_w) {
    const double a = g.alpha_of(m), b = g.beta_of(m), gm = g.gamma_w[m].real();
    const cplx wx = S.at(0, m, 0), wy = S.at(1, m, 0);
    acc += gm * norm2(Vec3c{wx, wy, (a * wx + b * wy) / gm});
  }
  return acc / (cfg.gamma_inc() * norm2(cfg.A));
}

}  // namespace hope
