#include "hope/capacity.hpp"

#include <cmath>

#include "hope/errors.hpp"

namespace hope {

TangentialTrace TangentialTrace::zero(Face face, const ModeGrid& grid) {
  TangentialTrace t;
  t.face = face;
  t.P = grid.P;
  t.Q = grid.Q;
  t.coeffs.assign(grid.num_modes(), {cplx{}, cplx{}});
  return t;
}

Mat2c boundary_multiplier(cplx gamma, double alpha_p, double beta_q) {
  if (gamma == cplx{}) throw ConfigError("capacity multiplier at gamma = 0");
  Mat2c m;
  m(0, 0) = kI * gamma + kI * alpha_p * alpha_p / gamma;
  m(0, 1) = kI * alpha_p * beta_q / gamma;
  m(1, 0) = kI * alpha_p * beta_q / gamma;  // (i beta_q), not (i beta_p)
  m(1, 1) = kI * gamma + kI * beta_q * beta_q / gamma;
  return m;
}

Mat2c capacity_multiplier(Face face, int p, int q, const WaveConfig& cfg,
                          const ModeGrid& grid) {
  if (!grid.contains(p, q)) throw ConfigError("mode outside the lattice");
  const std::size_t m = grid.index(p, q);
  const cplx gamma = face == Face::upper ? grid.gamma_u[m] : grid.gamma_w[m];
  if (std::abs(gamma) == 0.0)
    throw WoodAnomalyError(p, q, face == Face::upper ? 'u' : 'w', 0.0);
  return boundary_multiplier(gamma, grid.alpha_of(m), grid.beta_of(m)) /
         (kI * cfg.omega_mu0());
}

CapacityOperator::CapacityOperator(Face face, const WaveConfig& cfg,
                                   const ModeGrid& grid)
    : face_(face), P_(grid.P), Q_(grid.Q) {
  mats_.reserve(grid.num_modes());
  for (std::size_t m = 0; m < grid.num_modes(); ++m)
    mats_.push_back(capacity_multiplier(face, grid.p_of(m), grid.q_of(m), cfg, grid));
}

TangentialTrace CapacityOperator::apply(const TangentialTrace& U) const {
  if (U.face != face_ || U.P != P_ || U.Q != Q_ || U.coeffs.size() != mats_.size())
    throw ConfigError("trace does not match the capacity operator's face or grid");
  TangentialTrace out = U;
  for (std::size_t m = 0; m < mats_.size(); ++m) {
    const auto& u = U.coeffs[m];
    const Mat2c& t = mats_[m];
    out.coeffs[m] = {t(0, 0) * u[0] + t(0, 1) * u[1], t(1, 0) * u[0] + t(1, 1) * u[1]};
  }
  return out;
}

TangentialTrace apply_capacity(Face face, const TangentialTrace& U,
                               const WaveConfig& cfg, const ModeGrid& grid) {
  if (!U.matches(grid)) throw ConfigError("trace does not match the mode grid");
  return CapacityOperator(face, cfg, grid).apply(U);
}

TangentialTrace incident_trace_phi(const WaveConfig& cfg, const ModeGrid& grid) {
  TangentialTrace phi = TangentialTrace::zero(Face::upper, grid);
  const double a = cfg.alpha();
  const double b = cfg.beta();
  const double g = cfg.gamma_inc();
  const cplx phase = std::exp(-kI * g * cfg.h);
  const Vec3c& A = cfg.A;

  // curl(E_inc) x N_u = (dz Ex - dx Ez, dz Ey - dy Ez)
  const cplx cx = (-kI * g * A[0] - kI * a * A[2]) * phase;
  const cplx cy = (-kI * g * A[1] - kI * b * A[2]) * phase;

  // i omega mu0 T_u applied to the tangential part of E_inc
  const Mat2c t = capacity_multiplier(Face::upper, 0, 0, cfg, grid) * (kI * cfg.omega_mu0());
  const cplx ux = A[0] * phase;
  const cplx uy = A[1] * phase;
  phi.at(grid, 0, 0) = {cx - (t(0, 0) * ux + t(0, 1) * uy),
                        cy - (t(1, 0) * ux + t(1, 1) * uy)};
  return phi;
}

}  // namespace hope
