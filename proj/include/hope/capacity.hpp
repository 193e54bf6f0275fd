#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "hope/types.hpp"
#include "hope/wave_basis.hpp"

namespace hope {

enum class Face { upper, lower };

using Mat2c = Eigen::Matrix2cd;

// Tangential (x, y) data per lattice mode on one of the artificial boundaries.
// Used both for traces of E and for boundary-condition data (phi, Q, R).
struct TangentialTrace {
  Face face = Face::upper;
  int P = 0;
  int Q = 0;
  std::vector<std::array<cplx, 2>> coeffs;

  static TangentialTrace zero(Face face, const ModeGrid& grid);

  std::size_t num_modes() const { return coeffs.size(); }
  bool matches(const ModeGrid& grid) const {
    return P == grid.P && Q == grid.Q && coeffs.size() == grid.num_modes();
  }
  std::array<cplx, 2>& at(const ModeGrid& grid, int p, int q) {
    return coeffs[grid.index(p, q)];
  }
  const std::array<cplx, 2>& at(const ModeGrid& grid, int p, int q) const {
    return coeffs[grid.index(p, q)];
  }
};

// i*omega*mu0 * T for one mode: [[i g + i a^2/g, i a b/g], [i a b/g, i g + i b^2/g]].
Mat2c boundary_multiplier(cplx gamma, double alpha_p, double beta_q);

// T_u (upper) or T_w (lower) restricted to mode (p, q).
Mat2c capacity_multiplier(Face face, int p, int q, const WaveConfig& cfg,
                          const ModeGrid& grid);

// Precomputed per-mode 2x2 multipliers of one capacity operator.
class CapacityOperator {
 public:
  CapacityOperator(Face face, const WaveConfig& cfg, const ModeGrid& grid);

  Face face() const { return face_; }
  const Mat2c& multiplier(std::size_t mode) const { return mats_[mode]; }
  TangentialTrace apply(const TangentialTrace& U) const;

 private:
  Face face_;
  int P_, Q_;
  std::vector<Mat2c> mats_;
};

TangentialTrace apply_capacity(Face face, const TangentialTrace& U,
                               const WaveConfig& cfg, const ModeGrid& grid);

// Boundary forcing of the incident plane wave at z = h.
TangentialTrace incident_trace_phi(const WaveConfig& cfg, const ModeGrid& grid);

}  // namespace hope
