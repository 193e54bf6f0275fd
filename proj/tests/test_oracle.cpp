#include <gtest/gtest.h>

#include <cmath>

#include "hope/errors.hpp"
#include "hope/oracle.hpp"

using namespace hope;

namespace {

LayerStack single_layer(double eps, double h, double eps_out = 1.0) {
  LayerStack s;
  s.interfaces = {h, -h};
  s.eps_layers = {eps};
  s.eps_top = s.eps_bottom = eps_out;
  return s;
}

WaveConfig oblique() {
  WaveConfig c;
  c.k0 = 2.2;
  c.theta = 0.5;
  c.phi_inc = 0.3;
  c.A = WaveConfig::polarization(c.theta, c.phi_inc, 0.6, cplx(0.0, 0.8));
  return c;
}

}  // namespace

TEST(Oracle, ZeroContrast) {
  const TransferResult r = transfer_matrix(single_layer(1.0, 0.7), oblique());
  EXPECT_LT(r.R, 1e-15);
  EXPECT_NEAR(r.T, 1.0, 1e-14);
}

TEST(Oracle, FresnelSingleInterface) {
  WaveConfig c;
  c.eps_w = 2.25;
  LayerStack s = single_layer(2.25, 0.4);
  s.eps_bottom = 2.25;
  const TransferResult r = transfer_matrix(s, c);
  EXPECT_NEAR(std::abs(r.r_te), 0.2, 1e-14);
  EXPECT_NEAR(std::abs(r.r_tm), 0.2, 1e-14);
  EXPECT_NEAR(r.R, 0.04, 1e-14);
  EXPECT_NEAR(r.T, 0.96, 1e-14);
}

TEST(Oracle, HalfWaveLayerIsTransparent) {
  WaveConfig c;
  c.k0 = 3.0;
  const double n = 1.5, lambda = 2.0 * kPi / c.k0;
  const double thickness = lambda / (2.0 * n);
  const TransferResult r = transfer_matrix(single_layer(n * n, 0.5 * thickness), c);
  EXPECT_LT(r.R, 1e-12);
  EXPECT_NEAR(r.T, 1.0, 1e-12);
}

TEST(Oracle, EnergyConservationAndReciprocity) {
  LayerStack s;
  s.interfaces = {0.9, 0.3, -0.1, -0.8};
  s.eps_layers = {2.1, 1.3, 3.4};
  s.eps_top = 1.0;
  s.eps_bottom = 1.7;
  WaveConfig c = oblique();
  c.eps_w = 1.7;
  const TransferResult r = transfer_matrix(s, c);
  EXPECT_NEAR(r.R_te + r.T_te, 1.0, 1e-12);
  EXPECT_NEAR(r.R_tm + r.T_tm, 1.0, 1e-12);
  EXPECT_NEAR(r.R + r.T, 1.0, 1e-12);

  // swapping the half-spaces at normal incidence keeps T
  WaveConfig n;
  n.k0 = 2.2;
  n.eps_u = 1.0;
  n.eps_w = 1.7;
  const double T_down = transfer_matrix(s, n).T;
  LayerStack f;
  f.interfaces = {0.8, 0.1, -0.3, -0.9};
  f.eps_layers = {3.4, 1.3, 2.1};
  f.eps_top = 1.7;
  f.eps_bottom = 1.0;
  WaveConfig m;
  m.k0 = 2.2;
  m.eps_u = 1.7;
  m.eps_w = 1.0;
  m.eps_bar = 1.7;
  EXPECT_NEAR(transfer_matrix(f, m).T, T_down, 1e-12);
}

TEST(Oracle, ConstantEnvelopeGivesOneLayer) {
  WaveConfig c;
  c.h = 0.6;
  const LayerStack s = laminar_sample(constant_envelope(0.3), 1.0, c, 50);
  ASSERT_EQ(s.num_layers(), 1u);
  EXPECT_NEAR(s.eps_layers[0], 0.7, 1e-15);
  EXPECT_DOUBLE_EQ(s.interfaces.front(), 0.6);
  EXPECT_DOUBLE_EQ(s.interfaces.back(), -0.6);
}

TEST(Oracle, TanhSlabStaircaseSelfConverges) {
  WaveConfig c;
  c.k0 = 5.0;
  c.h = 0.5;
  const OracleReflectance o = laminar_reflectance(laminar_profile(2.25, -0.25, 0.25, 50.0), 1.0, c);
  EXPECT_LT(o.richardson_gap, 1e-5);
  const OracleReflectance o2 =
      laminar_reflectance(laminar_profile(2.25, -0.25, 0.25, 50.0), 1.0, c, 4000);
  EXPECT_LT(std::abs(o.R - o2.R), 1e-7);
  EXPECT_NEAR(o.R + o.T, 1.0, 1e-12);
}

TEST(Oracle, NonLaminarEnvelopeIsRejected) {
  WaveConfig c;
  c.d_x = c.d_y = 2.0;
  c.h = 0.5;
  ZGridSpec z;
  z.nodes = 17;
  const auto d = Discretization::create(c, 4, 0, z);
  const EnvelopeField env = sample_envelope(slab_with_gap(2.25, 0.25, 0.1, 50.0), d);
  EXPECT_THROW(laminar_sample(env, 1.0, 100), ConfigError);
}

TEST(Oracle, InvalidStackIsRejected) {
  LayerStack s;
  s.interfaces = {0.5, 0.6};
  s.eps_layers = {2.0};
  EXPECT_THROW(s.validate(), ConfigError);
}
