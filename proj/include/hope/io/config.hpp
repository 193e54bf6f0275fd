#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hope/envelope.hpp"
#include "hope/order_solver.hpp"
#include "hope/wave_basis.hpp"
#include "hope/zgrid.hpp"

namespace hope::io {

// Parsed run configuration. Sections: [wave] [envelope] [grid] [run].
struct RunConfig {
  WaveConfig wave;
  EnvelopeSpec envelope;

  int P = 0, Q = 0;
  int Nz = 129;
  bool auto_zgrid = true;  // cluster nodes around envelope transitions
  double wood_tol = kDefaultWoodTol;

  int L = 12;
  double delta = 1.0;
  int pade_L = 6, pade_M = 6;
  std::vector<double> deltas{0.05, 0.1, 0.2};
  std::vector<int> Ls{2, 3, 4, 5, 6, 7, 8, 9, 10};
  double sweep_min = 0.0, sweep_max = 1.0;
  int sweep_steps = 11;
  int growth_lo = 2, growth_hi = -1;  // -1: up to L
  int oracle_layers = 2000;
  int plot_nx = 201, plot_nz = 201;
  double plot_y = 0.0;
  double plot_zlo = -1.0, plot_zhi = 1.0;
  SolverOptions solver;
  IterConfig iter;

  // Every key as read, in file order, for the manifest echo.
  std::vector<std::pair<std::string, std::string>> echo;

  ZGridSpec zgrid_spec() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace hope::io
