#pragma once

#include <vector>

#include "hope/envelope.hpp"
#include "hope/types.hpp"
#include "hope/wave_basis.hpp"

namespace hope {

// Piecewise-constant laminar medium between two half-spaces.
struct LayerStack {
  std::vector<double> interfaces;  // strictly decreasing, size = layers + 1
  std::vector<double> eps_layers;
  double eps_top = 1.0;
  double eps_bottom = 1.0;

  std::size_t num_layers() const { return eps_layers.size(); }
  void validate() const;
};

struct TransferResult {
  cplx r_te{0.0}, t_te{0.0}, r_tm{0.0}, t_tm{0.0};  // tangential-field amplitudes
  double R_te = 0.0, T_te = 0.0, R_tm = 0.0, T_tm = 0.0;
  double R = 0.0, T = 0.0;  // weighted by the TE/TM content of cfg.A
};

// Characteristic-matrix solution at the specular order of cfg.
TransferResult transfer_matrix(const LayerStack& stack, const WaveConfig& cfg);

// Midpoint staircase of eps_bar (1 - rho E(z)) on n_layers equal cells of
// [-h, h]; adjacent equal layers are merged.
LayerStack laminar_sample(const EnvelopeSpec& spec, double rho, const WaveConfig& cfg,
                          int n_layers);
// Guarded form: the sampled field must be laminar.
LayerStack laminar_sample(const EnvelopeField& env, double rho, int n_layers);

struct OracleReflectance {
  double R = 0.0, T = 0.0;      // Richardson-extrapolated
  double R_coarse = 0.0, R_fine = 0.0;
  double richardson_gap = 0.0;  // |R_fine - R_coarse|
};

// Staircases with n and 2n layers combined by Richardson extrapolation
// (the midpoint staircase is second order in the layer width).
OracleReflectance laminar_reflectance(const EnvelopeSpec& spec, double rho, const WaveConfig& cfg,
                                      int n_layers = 2000);

}  // namespace hope
