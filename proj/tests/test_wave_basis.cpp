#include <gtest/gtest.h>

#include <cmath>

#include "hope/errors.hpp"
#include "hope/wave_basis.hpp"

using namespace hope;

TEST(WaveBasis, NormalIncidenceHasZeroTangentialWavenumbers) {
  WaveConfig c;
  c.theta = 0.0;
  c.phi_inc = 0.7;
  EXPECT_DOUBLE_EQ(c.alpha(), 0.0);
  EXPECT_DOUBLE_EQ(c.beta(), 0.0);
}

TEST(WaveBasis, LatticeShift) {
  WaveConfig c;
  c.k0 = 1.0;
  c.d_x = 2.0 * kPi;
  c.theta = std::asin(0.1);
  c.A = WaveConfig::polarization(c.theta, c.phi_inc, 1.0, 0.0);
  const ModeGrid g = build_mode_grid(c, 2, 0);
  EXPECT_NEAR(c.alpha(), 0.1, 1e-15);
  EXPECT_NEAR(g.alpha[2 + g.P], 2.1, 1e-14);
}

TEST(WaveBasis, EvanescentBranch) {
  const cplx g = vertical_wavenumber(1.0, 1.0, 2.0, 0.0);
  EXPECT_NEAR(g.real(), 0.0, 1e-15);
  EXPECT_NEAR(g.imag(), std::sqrt(3.0), 1e-14);
}

TEST(WaveBasis, WoodAnomalyIsRejectedWithMode) {
  WaveConfig c;
  c.k0 = 1.0;
  c.d_x = 2.0 * kPi;  // alpha_1 = 1 = k0
  try {
    build_mode_grid(c, 1, 0);
    FAIL() << "expected a Wood anomaly";
  } catch (const WoodAnomalyError& e) {
    EXPECT_EQ(std::abs(e.p()), 1);
    EXPECT_EQ(e.q(), 0);
    EXPECT_EQ(e.exit_code(), ExitCode::wood_anomaly);
  }
}

TEST(WaveBasis, BranchConsistencyAndPartition) {
  WaveConfig c;
  c.k0 = 2.3;
  c.theta = 0.4;
  c.phi_inc = 0.9;
  c.eps_u = 1.3;
  c.eps_w = 2.1;
  c.eps_bar = 1.3;
  c.d_x = 3.1;
  c.d_y = 2.7;
  c.A = WaveConfig::polarization(c.theta, c.phi_inc, 1.0, 0.0);
  const ModeGrid g = build_mode_grid(c, 4, 3);
  std::size_t prop_u = 0, prop_w = 0;
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const double a = g.alpha_of(m), b = g.beta_of(m);
    for (auto [eps, gam] : {std::pair{c.eps_u, g.gamma_u[m]}, std::pair{c.eps_w, g.gamma_w[m]}}) {
      const cplx target = eps * c.k0 * c.k0 - a * a - b * b;
      EXPECT_LE(std::abs(gam * gam - target), 1e-12 * std::max(1.0, std::abs(target)));
      EXPECT_GE(gam.imag(), 0.0);
    }
    if (g.gamma_u[m].imag() == 0.0) ++prop_u;
    if (g.gamma_w[m].imag() == 0.0) ++prop_w;
  }
  EXPECT_EQ(prop_u, g.propagating_u.size());
  EXPECT_EQ(prop_w, g.propagating_w.size());
  for (std::size_t m : g.propagating_u) EXPECT_GT(g.gamma_u[m].real(), 0.0);
  EXPECT_GE(g.wood_margin(), kDefaultWoodTol);
}

TEST(WaveBasis, IndexRoundTrip) {
  WaveConfig c;
  c.k0 = 0.7;
  const ModeGrid g = build_mode_grid(c, 3, 2);
  for (int p = -3; p <= 3; ++p)
    for (int q = -2; q <= 2; ++q) {
      const std::size_t m = g.index(p, q);
      EXPECT_EQ(g.p_of(m), p);
      EXPECT_EQ(g.q_of(m), q);
    }
}

TEST(WaveBasis, IncidentFieldExamples) {
  WaveConfig c;
  const Vec3c e0 = incident_field_at(c, 0.0, 0.0, 0.0);
  EXPECT_NEAR(std::abs(e0[0] - 1.0), 0.0, 1e-15);
  const Vec3c e1 = incident_field_at(c, 0.0, 0.0, kPi);
  EXPECT_NEAR(std::abs(e1[0] + 1.0), 0.0, 1e-15);
  EXPECT_EQ(std::abs(e1[1]) + std::abs(e1[2]), 0.0);

  c.theta = kPi / 4;
  const Vec3c kap = c.kappa();
  EXPECT_NEAR(kap[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(std::abs(kap[1]), 0.0, 1e-15);
  EXPECT_NEAR(kap[2].real(), -std::sqrt(0.5), 1e-15);
}

TEST(WaveBasis, IncidentFieldIsQuasiperiodic) {
  WaveConfig c;
  c.k0 = 1.7;
  c.theta = 0.5;
  c.phi_inc = 0.3;
  c.d_x = 1.9;
  c.d_y = 2.4;
  c.A = WaveConfig::polarization(c.theta, c.phi_inc, 1.0, 0.0);
  const double x = 0.3, y = -0.4, z = 0.2;
  const Vec3c e = incident_field_at(c, x, y, z);
  const Vec3c ex = incident_field_at(c, x + c.d_x, y, z);
  const Vec3c ey = incident_field_at(c, x, y + c.d_y, z);
  const cplx px = std::exp(kI * c.alpha() * c.d_x), py = std::exp(kI * c.beta() * c.d_y);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(std::abs(ex[i] - px * e[i]), 1e-13);
    EXPECT_LT(std::abs(ey[i] - py * e[i]), 1e-13);
  }
}

TEST(WaveBasis, PolarizationIsTransverseAndUnit) {
  const double th = 0.6, ph = 1.1;
  const Vec3c te = WaveConfig::te_direction(th, ph), tm = WaveConfig::tm_direction(th, ph);
  WaveConfig c;
  c.theta = th;
  c.phi_inc = ph;
  const Vec3c k = c.kappa();
  EXPECT_NEAR(std::abs(dot(te, k)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dot(tm, k)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dot(te, tm)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(te[2]), 0.0, 1e-15);
  const Vec3c A = WaveConfig::polarization(th, ph, 0.6, cplx(0.0, 0.8));
  EXPECT_NEAR(norm2(A), 1.0, 1e-14);
}

TEST(WaveBasis, ValidateRejectsBadInput) {
  WaveConfig c;
  c.h = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  WaveConfig d;
  d.A = {cplx(std::sqrt(0.5)), cplx(0.0), cplx(std::sqrt(0.5))};  // unit but not transverse
  EXPECT_THROW(d.validate(), ConfigError);
}
