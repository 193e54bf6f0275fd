#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "hope/capacity.hpp"
#include "hope/field.hpp"
#include "hope/order_solver.hpp"

namespace hope::testing {

// Entire manufactured field: on each listed mode, component c has the
// z-profile amp[c] * exp(s[c] z). F, Q and R are derived in closed form so
// the order problem has this field as its exact solution.
struct Manufactured {
  VectorFieldCoeffs E;
  OrderProblem prob;
};

inline Manufactured manufactured(const DiscretizationPtr& disc,
                                 const std::vector<std::pair<int, int>>& modes,
                                 const std::array<cplx, 3>& s, const std::array<cplx, 3>& amp) {
  const WaveConfig& cfg = disc->config();
  const ModeGrid& g = disc->modes();
  const double ek2 = cfg.eps_bar * cfg.k0 * cfg.k0;
  Manufactured out{VectorFieldCoeffs(disc), OrderProblem::homogeneous(disc, 1)};
  const auto& z = disc->z().nodes();
  for (auto [p, q] : modes) {
    const std::size_t m = g.index(p, q);
    const double a = g.alpha_of(m), b = g.beta_of(m), kp2 = a * a + b * b;
    auto v = [&](int c, double zz, int der) {
      return amp[c] * std::pow(s[c], der) * std::exp(s[c] * zz);
    };
    for (int iz = 0; iz < disc->Nz(); ++iz) {
      const double zz = z[iz];
      const cplx div = kI * a * v(0, zz, 0) + kI * b * v(1, zz, 0) + v(2, zz, 1);
      const cplx ddiv = kI * a * v(0, zz, 1) + kI * b * v(1, zz, 1) + v(2, zz, 2);
      // curl curl E = grad div E - Laplacian E
      const cplx cc[3] = {kI * a * div - (v(0, zz, 2) - kp2 * v(0, zz, 0)),
                          kI * b * div - (v(1, zz, 2) - kp2 * v(1, zz, 0)),
                          ddiv - (v(2, zz, 2) - kp2 * v(2, zz, 0))};
      for (int c = 0; c < 3; ++c) {
        out.E.at(c, m, iz) = v(c, zz, 0);
        out.prob.F.at(c, m, iz) = (cc[c] - ek2 * v(c, zz, 0)) / ek2;
      }
    }
    for (Face f : {Face::upper, Face::lower}) {
      const double zz = f == Face::upper ? cfg.h : -cfg.h;
      const double sg = f == Face::upper ? 1.0 : -1.0;
      const Mat2c M = capacity_multiplier(f, p, q, cfg, g) * (kI * cfg.omega_mu0());
      const cplx ex = v(0, zz, 0), ey = v(1, zz, 0), ez = v(2, zz, 0);
      const cplx bx = sg * (v(0, zz, 1) - kI * a * ez) - (M(0, 0) * ex + M(0, 1) * ey);
      const cplx by = sg * (v(1, zz, 1) - kI * b * ez) - (M(1, 0) * ex + M(1, 1) * ey);
      (f == Face::upper ? out.prob.Q_data : out.prob.R_data).coeffs[m] = {bx, by};
    }
  }
  return out;
}

// A generic oblique configuration with both polarizations present.
inline WaveConfig oblique_config(double k0 = 1.3, double eps = 1.5) {
  WaveConfig c;
  c.k0 = k0;
  c.theta = 0.3;
  c.phi_inc = 0.2;
  c.A = WaveConfig::polarization(c.theta, c.phi_inc, 0.6, cplx(0.0, 0.8));
  c.eps_u = c.eps_w = c.eps_bar = eps;
  c.h = 1.0;
  return c;
}

}  // namespace hope::testing
