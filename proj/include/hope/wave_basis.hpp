#pragma once

#include <cstddef>
#include <vector>

#include "hope/types.hpp"

namespace hope {

// Physical setup in units with c0 = mu0 = eps0 = 1, so k0 = omega and
// omega*mu0 = k0.
struct WaveConfig {
  double k0 = 1.0;
  double theta = 0.0;    // polar incidence angle
  double phi_inc = 0.0;  // azimuthal incidence angle
  Vec3c A{cplx{1.0}, cplx{0.0}, cplx{0.0}};
  double d_x = 2.0 * kPi;
  double d_y = 2.0 * kPi;
  double h = 1.0;
  double eps_u = 1.0;
  double eps_w = 1.0;
  double eps_bar = 1.0;

  double omega_mu0() const { return k0; }
  double k_u() const;
  double alpha() const;
  double beta() const;
  double gamma_inc() const;
  Vec3c kappa() const;
  // Incident magnetic amplitude (1/(omega mu0)) kappa x A.
  Vec3c B() const;

  // Throws ConfigError on any violated invariant.
  void validate() const;

  // Unit polarization built from amplitudes along the TE (perpendicular to the
  // plane of incidence) and TM directions.
  static Vec3c polarization(double theta, double phi_inc, cplx te, cplx tm);
  // The TE and TM unit vectors themselves.
  static Vec3c te_direction(double theta, double phi_inc);
  static Vec3c tm_direction(double theta, double phi_inc);
};

// Vertical wavenumber with the Im(gamma) >= 0 branch.
cplx vertical_wavenumber(double eps, double k0, double alpha_p, double beta_q);

struct ModeGrid {
  int P = 0;
  int Q = 0;
  std::vector<double> alpha;   // alpha_p, index p + P
  std::vector<double> beta;    // beta_q, index q + Q
  std::vector<cplx> gamma_u;   // flat mode index
  std::vector<cplx> gamma_w;
  std::vector<std::size_t> propagating_u;
  std::vector<std::size_t> propagating_w;

  int num_p() const { return 2 * P + 1; }
  int num_q() const { return 2 * Q + 1; }
  std::size_t num_modes() const {
    return static_cast<std::size_t>(num_p()) * static_cast<std::size_t>(num_q());
  }
  std::size_t index(int p, int q) const {
    return static_cast<std::size_t>(p + P) * static_cast<std::size_t>(num_q()) +
           static_cast<std::size_t>(q + Q);
  }
  int p_of(std::size_t m) const { return static_cast<int>(m / num_q()) - P; }
  int q_of(std::size_t m) const { return static_cast<int>(m % num_q()) - Q; }
  double alpha_of(std::size_t m) const { return alpha[m / num_q()]; }
  double beta_of(std::size_t m) const { return beta[m % num_q()]; }
  bool contains(int p, int q) const {
    return p >= -P && p <= P && q >= -Q && q <= Q;
  }
  // Smallest |gamma| over both exteriors.
  double wood_margin() const;
};

inline constexpr double kDefaultWoodTol = 1e-8;

ModeGrid build_mode_grid(const WaveConfig& cfg, int P, int Q,
                         double wood_tol = kDefaultWoodTol);

Vec3c incident_field_at(const WaveConfig& cfg, double x, double y, double z);

}  // namespace hope
