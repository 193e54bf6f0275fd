#include <gtest/gtest.h>

#include <cmath>

#include "hope/errors.hpp"
#include "hope/hope_engine.hpp"
#include "hope/norms.hpp"
#include "hope/oracle.hpp"
#include "hope/order_solver.hpp"
#include "hope/scattering.hpp"
#include "support.hpp"

using namespace hope;
using hope::testing::manufactured;
using hope::testing::oblique_config;

namespace {

DiscretizationPtr oblique_disc(int nz, int P = 2, int Q = 2) {
  ZGridSpec z;
  z.nodes = nz;
  return Discretization::create(oblique_config(), P, Q, z);
}

EnvelopeField zero_env(const DiscretizationPtr& d) {
  return sample_envelope(constant_envelope(0.0, d->config().eps_bar), d);
}

const std::array<cplx, 3> kS{cplx(1.0, 6.0), cplx(-5.0, 2.0), cplx(3.0, -5.5)};
const std::array<cplx, 3> kAmp{cplx(1.0), cplx(0.5, -0.2), cplx(-0.3, 0.4)};

double rel_err(const VectorFieldCoeffs& a, const VectorFieldCoeffs& b, const EnvelopeField& env) {
  return x_norm(a - b, env) / x_norm(b, env);
}

WaveConfig laminar_config() {
  WaveConfig c;
  c.k0 = 5.0;
  c.h = 0.5;
  return c;
}

}  // namespace

TEST(OrderSolver, TrivialConfigurationReturnsIncidentField) {
  const auto d = oblique_disc(48, 4, 4);
  const VectorFieldCoeffs E = solve_order(OrderProblem::incident(d), d);
  EXPECT_LT(rel_err(E, incident_field(d), zero_env(d)), 1e-10);
}

TEST(OrderSolver, ZeroDataGivesZeroField) {
  const auto d = oblique_disc(24);
  const VectorFieldCoeffs E = solve_order(OrderProblem::homogeneous(d, 1), d);
  EXPECT_EQ(E.max_abs(), 0.0);
}

TEST(OrderSolver, ManufacturedSolutionIsSpectral) {
  auto error_at = [](int nz) {
    const auto d = oblique_disc(nz);
    const auto ms = manufactured(d, {{0, 0}, {1, -2}, {-2, 1}}, kS, kAmp);
    return rel_err(solve_order(ms.prob, d), ms.E, zero_env(d));
  };
  const double e16 = error_at(16), e32 = error_at(32), e64 = error_at(64);
  EXPECT_LT(e64, 1e-8);
  EXPECT_GE(e16 / e32, 1e4);
}

TEST(OrderSolver, ManufacturedOnMultiElementGrid) {
  ZGridSpec z;
  z.nodes = 81;
  z.breaks = {-0.3, 0.4};
  const auto d = Discretization::create(oblique_config(), 2, 2, z);
  const auto ms = manufactured(d, {{0, 0}, {2, 2}}, kS, kAmp);
  EXPECT_LT(rel_err(solve_order(ms.prob, d), ms.E, zero_env(d)), 1e-8);
}

TEST(OrderSolver, Linearity) {
  const auto d = oblique_disc(40);
  const auto m1 = manufactured(d, {{0, 0}, {1, 1}}, kS, kAmp);
  const auto m2 = manufactured(d, {{0, 1}, {-1, 0}}, {cplx(2.0, 1.0), cplx(-1.0), cplx(0.5, 3.0)},
                               {cplx(0.2), cplx(1.0, 1.0), cplx(0.0, -0.7)});
  const cplx a(0.7, -1.1), b(-2.0, 0.3);
  OrderProblem p = m1.prob;
  p.F = a * m1.prob.F + b * m2.prob.F;
  for (std::size_t m = 0; m < p.Q_data.coeffs.size(); ++m)
    for (int k = 0; k < 2; ++k) {
      p.Q_data.coeffs[m][k] = a * m1.prob.Q_data.coeffs[m][k] + b * m2.prob.Q_data.coeffs[m][k];
      p.R_data.coeffs[m][k] = a * m1.prob.R_data.coeffs[m][k] + b * m2.prob.R_data.coeffs[m][k];
    }
  const OrderSolver solver(d);
  const VectorFieldCoeffs lhs = solver.solve(p);
  const VectorFieldCoeffs rhs = a * solver.solve(m1.prob) + b * solver.solve(m2.prob);
  EXPECT_LT((lhs - rhs).max_abs(), 1e-11 * rhs.max_abs());
}

TEST(OrderSolver, DivergenceAndResidualReport) {
  const auto d = oblique_disc(48);
  const auto ms = manufactured(d, {{0, 0}, {1, -1}}, kS, kAmp);
  SolveReport rep;
  const VectorFieldCoeffs E = OrderSolver(d).solve(ms.prob, &rep);
  EXPECT_LE(rep.divergence_defect, 1e-8);
  EXPECT_LE(rep.residual, 1e-8 * rep.rhs_norm);
  EXPECT_GT(rep.max_condition, 1.0);
  (void)E;
}

TEST(OrderSolver, ResidualIsExactForManufacturedAndLinearInPerturbation) {
  const auto d = oblique_disc(48);
  const EnvelopeField env = zero_env(d);
  const auto ms = manufactured(d, {{0, 0}, {1, -1}}, kS, kAmp);
  const double r0 = residual_of(ms.E, ms.prob, env);
  EXPECT_LT(r0, 1e-9 * rhs_norm_of(ms.prob, env));

  const auto pert = manufactured(d, {{1, 0}, {-1, 2}}, {cplx(0.5, 1.0), cplx(1.0), cplx(-1.0, 2.0)},
                                 {cplx(1.0), cplx(0.0, 1.0), cplx(0.3)});
  const double r_small = residual_of(ms.E + cplx(1e-4) * pert.E, ms.prob, env);
  const double r_big = residual_of(ms.E + cplx(1e-2) * pert.E, ms.prob, env);
  EXPECT_NEAR(r_big / r_small, 100.0, 1.0);
  const VectorFieldCoeffs zero(d);
  EXPECT_EQ(residual_of(zero, OrderProblem::homogeneous(d, 1), env), 0.0);
}

TEST(OrderSolver, ClosureResonanceIsRejected) {
  WaveConfig c;
  c.h = kPi / 2.0;  // 2 gamma h = pi at (0, 0)
  ZGridSpec z;
  z.nodes = 32;
  const auto d = Discretization::create(c, 0, 0, z);
  try {
    OrderSolver s(d);
    FAIL() << "expected a closure resonance";
  } catch (const ResonanceError& e) {
    EXPECT_EQ(e.p(), 0);
    EXPECT_EQ(e.q(), 0);
    EXPECT_EQ(e.exit_code(), ExitCode::closure_resonance);
  }
}

TEST(OrderSolver, AssembleRhsExamples) {
  const auto d = oblique_disc(12);
  const ModeGrid& g = d->modes();
  VectorFieldCoeffs E(d);
  for (int iz = 0; iz < d->Nz(); ++iz) E.at(0, g.index(0, 1), iz) = cplx(1.0, 2.0);

  EXPECT_EQ(assemble_rhs(E, zero_env(d)).max_abs(), 0.0);

  EnvelopeOptions o;
  o.check_face_limits = false;
  const EnvelopeField one = sample_envelope(constant_envelope(1.0, 1.5), d, o);
  EXPECT_LT((assemble_rhs(E, one) + E).max_abs(), 1e-14);

  // cos(2 pi x / d_x) envelope shifts p by +-1 with half the amplitude
  const double dx = d->config().d_x;
  const EnvelopeSpec cosine = user_sampled(
      [dx](double x, double, double) { return std::cos(2.0 * kPi * x / dx); }, false, 1.5);
  const VectorFieldCoeffs F = assemble_rhs(E, sample_envelope(cosine, d, o));
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const bool hit = g.q_of(m) == 1 && std::abs(g.p_of(m)) == 1;
    const cplx expect = hit ? -0.5 * cplx(1.0, 2.0) : cplx(0.0);
    EXPECT_LT(std::abs(F.at(0, m, 3) - expect), 1e-13);
    EXPECT_EQ(std::abs(F.at(1, m, 3)), 0.0);
  }
}

TEST(VariableBase, ZeroBaseConvergesInOneIteration) {
  const auto d = oblique_disc(24);
  const EnvelopeField env = zero_env(d);
  const OrderSolver solver(d);
  const auto prob = OrderProblem::incident(d);
  IterReport rep;
  const VectorFieldCoeffs E = solve_base_variable(env, prob, solver, {}, &rep);
  EXPECT_EQ(rep.iterations, 1);
  EXPECT_LT((E - solver.solve(prob)).max_abs(), 1e-15);
}

TEST(VariableBase, LowContrastMatchesTransferMatrix) {
  const WaveConfig cfg = laminar_config();
  EnvelopeSpec spec = laminar_profile(1.05, -0.25, 0.25, 50.0);
  spec.rho0 = 1.0;
  const auto d = Discretization::create(cfg, 0, 0, suggest_zgrid(spec, cfg.h, 129));
  const EnvelopeField env = sample_envelope(spec, d);
  const OrderSolver solver(d);
  IterReport rep;
  const VectorFieldCoeffs E = solve_base_variable(env, OrderProblem::incident(d), solver, {}, &rep);
  EXPECT_FALSE(rep.used_krylov);
  const OracleReflectance o = laminar_reflectance(spec, 1.0, cfg);
  const Efficiencies eff = efficiencies(E);
  EXPECT_GT(o.R, 1e-5);
  EXPECT_NEAR(eff.specular_R, o.R, 1e-8);
  EXPECT_NEAR(eff.specular_T, o.T, 1e-8);
}

TEST(VariableBase, AgreesWithSeriesAboutZero) {
  const WaveConfig cfg = laminar_config();
  const EnvelopeSpec spec0 = laminar_profile(1.05, -0.25, 0.25, 50.0);
  const auto d = Discretization::create(cfg, 0, 0, suggest_zgrid(spec0, cfg.h, 129));
  const EnvelopeField env0 = sample_envelope(spec0, d);
  const OrderSolver solver(d);
  const TaylorSeries series = compute_expansion(env0, 12, solver);

  const double rho = 0.5;
  EnvelopeSpec spec = spec0;
  spec.rho0 = rho;
  const EnvelopeField env = sample_envelope(spec, d);
  const VectorFieldCoeffs direct = solve_base_variable(env, OrderProblem::incident(d), solver);
  const VectorFieldCoeffs summed = taylor_sum(series, rho, 12);
  EXPECT_LT(rel_err(summed, direct, env), 1e-7);
}

TEST(VariableBase, KrylovFallbackHandlesStrongContrast) {
  const WaveConfig cfg = laminar_config();
  EnvelopeSpec spec = laminar_profile(2.25, -0.25, 0.25, 50.0);
  spec.rho0 = 1.0;
  const auto d = Discretization::create(cfg, 0, 0, suggest_zgrid(spec, cfg.h, 129));
  const EnvelopeField env = sample_envelope(spec, d);
  const OrderSolver solver(d);
  IterReport rep;
  const VectorFieldCoeffs E = solve_base_variable(env, OrderProblem::incident(d), solver, {}, &rep);
  EXPECT_TRUE(rep.used_krylov);
  const OracleReflectance o = laminar_reflectance(spec, 1.0, cfg);
  EXPECT_NEAR(efficiencies(E).specular_R, o.R, 1e-7);
}

TEST(VariableBase, NonConvergenceCarriesHistory) {
  const WaveConfig cfg = laminar_config();
  EnvelopeSpec spec = laminar_profile(2.25, -0.25, 0.25, 50.0);
  spec.rho0 = 1.0;
  const auto d = Discretization::create(cfg, 0, 0, suggest_zgrid(spec, cfg.h, 65));
  const EnvelopeField env = sample_envelope(spec, d);
  const OrderSolver solver(d);
  IterConfig it;
  it.krylov = false;
  it.max_iter = 5;
  try {
    solve_base_variable(env, OrderProblem::incident(d), solver, it);
    FAIL() << "expected non-convergence";
  } catch (const NonConvergenceError& e) {
    EXPECT_FALSE(e.history().empty());
  }
}
