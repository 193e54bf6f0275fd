#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hope/capacity.hpp"
#include "hope/errors.hpp"

using namespace hope;

namespace {

double max_diff(const Mat2c& a, const Mat2c& b) { return (a - b).cwiseAbs().maxCoeff(); }

TangentialTrace random_trace(Face f, const ModeGrid& g, std::mt19937& rng) {
  std::normal_distribution<double> n;
  TangentialTrace t = TangentialTrace::zero(f, g);
  for (auto& c : t.coeffs) c = {cplx(n(rng), n(rng)), cplx(n(rng), n(rng))};
  return t;
}

WaveConfig grating_config() {
  WaveConfig c;
  c.k0 = 1.9;
  c.theta = 0.35;
  c.phi_inc = 0.4;
  c.d_x = 2.3;
  c.d_y = 3.1;
  c.eps_u = 1.2;
  c.eps_w = 2.4;
  c.eps_bar = 1.2;
  c.A = WaveConfig::polarization(c.theta, c.phi_inc, 0.8, 0.6);
  return c;
}

}  // namespace

TEST(Capacity, NormalIncidenceMultiplierIsIdentity) {
  WaveConfig c;  // omega mu0 = 1, gamma = 1 at (0, 0)
  const ModeGrid g = build_mode_grid(c, 0, 0);
  EXPECT_LT(max_diff(capacity_multiplier(Face::upper, 0, 0, c, g), Mat2c::Identity()), 1e-15);
  EXPECT_LT(max_diff(capacity_multiplier(Face::lower, 0, 0, c, g), Mat2c::Identity()), 1e-15);
}

TEST(Capacity, ShiftedModeMultiplier) {
  WaveConfig c;
  c.k0 = 1.0;
  c.eps_u = c.eps_w = c.eps_bar = 2.0;  // eps k0^2 = 2
  c.d_x = 2.0 * kPi;                    // alpha_1 = 1, so gamma = 1
  const ModeGrid g = build_mode_grid(c, 1, 0);
  Mat2c expect;
  expect << 2.0, 0.0, 0.0, 1.0;
  EXPECT_LT(max_diff(capacity_multiplier(Face::upper, 1, 0, c, g), expect), 1e-14);
}

TEST(Capacity, OffDiagonalVanishesOnAxes) {
  const WaveConfig c = grating_config();
  const ModeGrid g = build_mode_grid(c, 3, 3);
  for (int p = -3; p <= 3; ++p)
    for (int q = -3; q <= 3; ++q) {
      const std::size_t m = g.index(p, q);
      const Mat2c t = capacity_multiplier(Face::upper, p, q, c, g);
      const double ab = std::abs(g.alpha_of(m) * g.beta_of(m));
      if (ab == 0.0) {
        EXPECT_EQ(std::abs(t(0, 1)), 0.0);
        EXPECT_EQ(std::abs(t(1, 0)), 0.0);
      }
      EXPECT_LT(std::abs(t(0, 1) - t(1, 0)), 1e-14 * std::max(1.0, std::abs(t(0, 1))));
    }
  // beta identically zero at phi_inc = 0 with Q = 0
  WaveConfig c0 = c;
  c0.phi_inc = 0.0;
  c0.A = WaveConfig::polarization(c0.theta, 0.0, 1.0, 0.0);
  const ModeGrid g0 = build_mode_grid(c0, 3, 0);
  for (int p = -3; p <= 3; ++p)
    EXPECT_EQ(std::abs(capacity_multiplier(Face::lower, p, 0, c0, g0)(0, 1)), 0.0);
}

TEST(Capacity, ApplyIsLinearAndDiagonalInModes) {
  const WaveConfig c = grating_config();
  const ModeGrid g = build_mode_grid(c, 2, 3);
  std::mt19937 rng(7);
  for (Face f : {Face::upper, Face::lower}) {
    const TangentialTrace zero = apply_capacity(f, TangentialTrace::zero(f, g), c, g);
    for (const auto& v : zero.coeffs) EXPECT_EQ(std::abs(v[0]) + std::abs(v[1]), 0.0);

    const TangentialTrace U = random_trace(f, g, rng), V = random_trace(f, g, rng);
    TangentialTrace W = U;
    for (std::size_t m = 0; m < W.coeffs.size(); ++m)
      for (int k = 0; k < 2; ++k) W.coeffs[m][k] += V.coeffs[m][k];
    const auto tu = apply_capacity(f, U, c, g), tv = apply_capacity(f, V, c, g),
               tw = apply_capacity(f, W, c, g);
    for (std::size_t m = 0; m < W.coeffs.size(); ++m)
      for (int k = 0; k < 2; ++k)
        EXPECT_LT(std::abs(tw.coeffs[m][k] - tu.coeffs[m][k] - tv.coeffs[m][k]),
                  1e-12 * (1.0 + std::abs(tw.coeffs[m][k])));

    // one-hot trace picks out the mode's multiplier
    TangentialTrace one = TangentialTrace::zero(f, g);
    one.at(g, 1, -2) = {cplx(1.0), cplx(0.0)};
    const auto r = apply_capacity(f, one, c, g);
    const Mat2c t = capacity_multiplier(f, 1, -2, c, g);
    for (std::size_t m = 0; m < r.coeffs.size(); ++m) {
      if (m == g.index(1, -2)) {
        EXPECT_LT(std::abs(r.coeffs[m][0] - t(0, 0)), 1e-14);
        EXPECT_LT(std::abs(r.coeffs[m][1] - t(1, 0)), 1e-14);
      } else {
        EXPECT_EQ(std::abs(r.coeffs[m][0]) + std::abs(r.coeffs[m][1]), 0.0);
      }
    }
  }
}

TEST(Capacity, MismatchedTraceIsRejected) {
  const WaveConfig c = grating_config();
  const ModeGrid g = build_mode_grid(c, 2, 2), g1 = build_mode_grid(c, 1, 1);
  EXPECT_THROW(apply_capacity(Face::upper, TangentialTrace::zero(Face::upper, g1), c, g),
               Error);
}

TEST(Capacity, IncidentForcingAtNormalIncidence) {
  WaveConfig c;
  for (double h : {0.5, 1.0, 1.7}) {
    c.h = h;
    const ModeGrid g = build_mode_grid(c, 0, 0);
    const TangentialTrace phi = incident_trace_phi(c, g);
    EXPECT_LT(std::abs(phi.at(g, 0, 0)[0] - cplx(0.0, -2.0) * std::exp(-kI * h)), 1e-14);
    EXPECT_LT(std::abs(phi.at(g, 0, 0)[1]), 1e-15);
  }
}

TEST(Capacity, IncidentForcingLivesOnSpecularMode) {
  const WaveConfig c = grating_config();
  const ModeGrid g = build_mode_grid(c, 3, 2);
  const TangentialTrace phi = incident_trace_phi(c, g);
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const double mag = std::abs(phi.coeffs[m][0]) + std::abs(phi.coeffs[m][1]);
    if (m == g.index(0, 0))
      EXPECT_GT(mag, 0.1);
    else
      EXPECT_EQ(mag, 0.0);
  }
}

TEST(Capacity, OutgoingWaveConsistency) {
  const WaveConfig c = grating_config();
  const ModeGrid g = build_mode_grid(c, 3, 3);
  std::mt19937 rng(11);
  std::normal_distribution<double> n;
  for (Face f : {Face::upper, Face::lower}) {
    for (std::size_t m = 0; m < g.num_modes(); ++m) {
      const double a = g.alpha_of(m), b = g.beta_of(m);
      const cplx gam = f == Face::upper ? g.gamma_u[m] : g.gamma_w[m];
      // upward wave above, downward below: exp(+/- i gamma (z - z_face))
      const double s = f == Face::upper ? 1.0 : -1.0;
      const cplx ux(n(rng), n(rng)), uy(n(rng), n(rng));
      const cplx uz = -s * (a * ux + b * uy) / gam;
      // (1/(i omega mu0)) curl E x N with N the outward normal
      const cplx cx = s * (s * kI * gam * ux - kI * a * uz);
      const cplx cy = s * (s * kI * gam * uy - kI * b * uz);
      const Mat2c t = capacity_multiplier(f, g.p_of(m), g.q_of(m), c, g);
      const cplx w = kI * c.omega_mu0();
      EXPECT_LT(std::abs(cx / w - (t(0, 0) * ux + t(0, 1) * uy)), 1e-10 * (1.0 + std::abs(cx)));
      EXPECT_LT(std::abs(cy / w - (t(1, 0) * ux + t(1, 1) * uy)), 1e-10 * (1.0 + std::abs(cy)));
    }
  }
}
