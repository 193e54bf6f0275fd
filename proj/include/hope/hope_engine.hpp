#pragma once

#include <string>
#include <vector>

#include "hope/envelope.hpp"
#include "hope/field.hpp"
#include "hope/order_solver.hpp"

namespace hope {

struct HopeOptions {
  SolverOptions solver;
  IterConfig iter;
  double overflow_limit = 1e250;
};

// E_0..E_L of the expansion E = sum_l E_l delta^l about rho0.
struct TaylorSeries {
  DiscretizationPtr disc;
  EnvelopeSpec envelope;
  double rho0 = 0.0;
  std::vector<VectorFieldCoeffs> orders;
  std::vector<double> xnorms;
  std::vector<double> residuals;          // absolute residual per order
  std::vector<double> rhs_norms;
  std::vector<double> divergence_defects;
  std::vector<int> iterations;            // inner iterations (variable base)
  double max_condition = 0.0;
  int worst_p = 0, worst_q = 0;

  int L() const { return static_cast<int>(orders.size()) - 1; }
};

TaylorSeries compute_expansion(const EnvelopeField& env, int L_max, const HopeOptions& opts = {});
// Same, reusing an existing solver (its discretization must match env).
TaylorSeries compute_expansion(const EnvelopeField& env, int L_max, const OrderSolver& solver,
                               const HopeOptions& opts = {});

VectorFieldCoeffs taylor_sum(const TaylorSeries& series, double delta, int L);

struct PadeReport {
  std::size_t entries = 0;
  std::size_t reduced = 0;          // denominator degree dropped
  std::size_t taylor_fallbacks = 0;
  std::size_t near_poles = 0;
};

// Scalar [L/M] Pade per (component, mode, z node).
VectorFieldCoeffs pade_sum(const TaylorSeries& series, double delta, int L, int M,
                           PadeReport* report = nullptr);

enum class GrowthMethod { ratio, root };

struct GrowthEstimate {
  double B_hat = 0.0;
  double K_hat = 0.0;
  int lo = 0, hi = 0;  // window of orders, inclusive
  GrowthMethod method = GrowthMethod::ratio;
};

// Least-squares slope of log norms over [lo, hi] (ratio) or the largest
// l-th root (root). Throws on zero norms in the window.
GrowthEstimate estimate_growth(const std::vector<double>& xnorms, int lo, int hi,
                               GrowthMethod method = GrowthMethod::ratio);
GrowthEstimate estimate_growth(const TaylorSeries& series, int lo, int hi,
                               GrowthMethod method = GrowthMethod::ratio);

enum class ReferenceKind { taylor_full, pade_diagonal };

struct ErrorTable {
  std::vector<double> deltas;
  std::vector<int> Ls;
  std::vector<std::vector<double>> err;  // err[i][j] for deltas[i], Ls[j]
  std::vector<double> slopes;            // fitted d log(err) / dL per delta
  std::vector<double> predicted;         // log(B_hat delta)
  std::string reference;
  GrowthEstimate growth;
};

// X-norm errors of the Taylor partial sums against a self-reference built
// from the full series. Slopes use every L in Ls with nonzero error.
ErrorTable convergence_study(const TaylorSeries& series, const EnvelopeField& env,
                             const std::vector<double>& deltas, const std::vector<int>& Ls,
                             ReferenceKind ref = ReferenceKind::taylor_full);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hope
