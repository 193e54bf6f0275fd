#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hope/capacity.hpp"
#include "hope/envelope.hpp"
#include "hope/field.hpp"

namespace hope {

// One perturbation order: curl curl E - eps0 k0^2 E = eps0 k0^2 F in the slab,
// B_u E = Q_data at z = h, B_w E = R_data at z = -h.
struct OrderProblem {
  VectorFieldCoeffs F;
  TangentialTrace Q_data;
  TangentialTrace R_data;
  int ell = 0;

  // F = 0, Q = R = 0.
  static OrderProblem homogeneous(const DiscretizationPtr& disc, int ell);
  // F = 0, Q = phi, R = 0.
  static OrderProblem incident(const DiscretizationPtr& disc);
};

struct SolverOptions {
  double res_guard = 1e-6;    // reject when |sin(2 gamma h)| falls below this
  double cond_limit = 1e13;   // reject per-mode systems above this condition number
  double res_tol = 1e-8;      // relative residual bound when verification is on
  bool verify_residual = false;
};

struct SolveReport {
  double residual = 0.0;       // residual_of(...)
  double rhs_norm = 0.0;       // ||eps0 k0^2 F||_H(div) + ||Q|| + ||R||
  double divergence_defect = 0.0;  // ||div(E + F)|| / (||E|| + ||F||)
  double max_condition = 0.0;
  int worst_p = 0, worst_q = 0;
};

// B_u E (upper) or B_w E (lower): curl E x N - i omega mu0 T[N x (E x N)].
TangentialTrace boundary_operator(const VectorFieldCoeffs& E, Face face);

// F_ell = -eps_bar (E / eps0) E_prev, as a dealiased product.
VectorFieldCoeffs assemble_rhs(const VectorFieldCoeffs& E_prev, const EnvelopeField& env);

// Sum of the interior (L2), divergence (L2) and boundary (H^{-1/2}(div))
// residuals of the order problem for the envelope's base permittivity.
double residual_of(const VectorFieldCoeffs& E, const OrderProblem& prob, const EnvelopeField& env);
double rhs_norm_of(const OrderProblem& prob, const EnvelopeField& env);

// Constant-base (eps0 = eps_bar) order solver. Each mode reduces to three
// Helmholtz equations
//   -e'' + (alpha_p^2 + beta_q^2 - eps_bar k0^2) e = eps_bar k0^2 F + grad(div F)
// coupled through two capacity rows and one divergence-closure row per face.
// Per-mode factorizations are computed once and reused across orders.
class OrderSolver {
 public:
  explicit OrderSolver(DiscretizationPtr disc, SolverOptions opts = {});

  const DiscretizationPtr& disc() const { return disc_; }
  const SolverOptions& options() const { return opts_; }

  VectorFieldCoeffs solve(const OrderProblem& prob, SolveReport* report = nullptr) const;

  double max_condition() const { return max_cond_; }
  int worst_p() const { return worst_p_; }
  int worst_q() const { return worst_q_; }

 private:
  using Vec6 = Eigen::Matrix<cplx, 6, 1>;
  using Mat6 = Eigen::Matrix<cplx, 6, 6>;
  struct ModeSystem {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd h_top;  // homogeneous solution, 1 at z = h, 0 at z = -h
    Eigen::VectorXd h_bot;
    Eigen::PartialPivLU<Mat6> bc_lu;
    Mat2c m_up, m_lo;       // i omega mu0 T_u, i omega mu0 T_w
    double cond = 0.0;
  };

  Vec6 boundary_rows(std::size_t mode, const ModeSystem& sys, const Eigen::VectorXcd& ex,
                     const Eigen::VectorXcd& ey, const Eigen::VectorXcd& ez) const;

  DiscretizationPtr disc_;
  SolverOptions opts_;
  std::vector<ModeSystem> systems_;
  double max_cond_ = 0.0;
  int worst_p_ = 0, worst_q_ = 0;
};

// Convenience: builds a solver for one solve.
VectorFieldCoeffs solve_order(const OrderProblem& prob, const DiscretizationPtr& disc,
                              const SolverOptions& opts = {});

struct IterConfig {
  double iter_tol = 1e-10;
  int max_iter = 200;
  bool krylov = true;     // fall back to GMRES when the fixed point stalls
  int restart = 40;
};

struct IterReport {
  int iterations = 0;
  bool used_krylov = false;
  std::vector<double> history;  // relative updates (fixed point) or residuals (GMRES)
};

// Order problem with a nonconstant base eps0 = eps_bar (1 - rho0 E), solved by
// iterating the constant-base inverse:
//   Lbar E_new = eps_bar k0^2 [ (eps0/eps_bar) F - rho0 E E_old ].
VectorFieldCoeffs solve_base_variable(const EnvelopeField& env, const OrderProblem& prob,
                                      const OrderSolver& solver, const IterConfig& iter = {},
                                      IterReport* report = nullptr);

}  // namespace hope
