#include "hope/order_solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "hope/errors.hpp"
#include "hope/norms.hpp"

namespace hope {

OrderProblem OrderProblem::homogeneous(const DiscretizationPtr& disc, int ell) {
  OrderProblem p;
  p.F = VectorFieldCoeffs(disc);
  p.Q_data = TangentialTrace::zero(Face::upper, disc->modes());
  p.R_data = TangentialTrace::zero(Face::lower, disc->modes());
  p.ell = ell;
  return p;
}

OrderProblem OrderProblem::incident(const DiscretizationPtr& disc) {
  OrderProblem p = homogeneous(disc, 0);
  p.Q_data = incident_trace_phi(disc->config(), disc->modes());
  return p;
}

TangentialTrace boundary_operator(const VectorFieldCoeffs& E, Face face) {
  const Discretization& d = *E.disc();
  const ModeGrid& g = d.modes();
  const int N = d.Nz();
  const int iz = face == Face::upper ? N - 1 : 0;
  const Eigen::RowVectorXd row =
      face == Face::upper ? d.z().top_derivative_row() : d.z().bottom_derivative_row();
  const double sign = face == Face::upper ? 1.0 : -1.0;
  const CapacityOperator cap(face, d.config(), g);
  TangentialTrace out = TangentialTrace::zero(face, g);
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const double a = g.alpha_of(m), b = g.beta_of(m);
    cplx dzx = 0.0, dzy = 0.0;
    for (int j = 0; j < N; ++j) {
      dzx += row(j) * E.at(0, m, j);
      dzy += row(j) * E.at(1, m, j);
    }
    const cplx ex = E.at(0, m, iz), ey = E.at(1, m, iz), ez = E.at(2, m, iz);
    // CapacityOperator stores T; the boundary rows use i omega mu0 T.
    const Mat2c M = cap.multiplier(m) * (kI * d.config().omega_mu0());
    out.coeffs[m][0] = sign * (dzx - kI * a * ez) - (M(0, 0) * ex + M(0, 1) * ey);
    out.coeffs[m][1] = sign * (dzy - kI * b * ez) - (M(1, 0) * ex + M(1, 1) * ey);
  }
  return out;
}

VectorFieldCoeffs assemble_rhs(const VectorFieldCoeffs& E_prev, const EnvelopeField& env) {
  if (env.zero) return VectorFieldCoeffs(E_prev.disc());
  VectorFieldCoeffs F = multiply(env.ratio_product, E_prev);
  F *= -env.eps_bar;
  return F;
}

double residual_of(const VectorFieldCoeffs& E, const OrderProblem& prob,
                   const EnvelopeField& env) {
  const Discretization& d = *E.disc();
  const VectorFieldCoeffs src = eps0_k2_times(E + prob.F, env);
  const VectorFieldCoeffs r = curl_of(curl_of(E)) - src;
  const double vol = l2_norm(r);
  const double dv = l2_norm(div_of(src));
  TangentialTrace bu = boundary_operator(E, Face::upper);
  TangentialTrace bw = boundary_operator(E, Face::lower);
  for (std::size_t m = 0; m < bu.coeffs.size(); ++m)
    for (int c = 0; c < 2; ++c) {
      bu.coeffs[m][c] -= prob.Q_data.coeffs[m][c];
      bw.coeffs[m][c] -= prob.R_data.coeffs[m][c];
    }
  return vol + dv + hmh_div_norm(bu, d.config(), d.modes()) +
         hmh_div_norm(bw, d.config(), d.modes());
}

double rhs_norm_of(const OrderProblem& prob, const EnvelopeField& env) {
  const Discretization& d = *prob.F.disc();
  return hdiv_norm(eps0_k2_times(prob.F, env)) +
         hmh_div_norm(prob.Q_data, d.config(), d.modes()) +
         hmh_div_norm(prob.R_data, d.config(), d.modes());
}

OrderSolver::OrderSolver(DiscretizationPtr disc, SolverOptions opts)
    : disc_(std::move(disc)), opts_(opts) {
  const Discretization& d = *disc_;
  const WaveConfig& cfg = d.config();
  const ModeGrid& g = d.modes();
  const int N = d.Nz();
  const double ek2 = cfg.eps_bar * cfg.k0 * cfg.k0;

  // Divergence-closure resonance: div(E + F) solves a scalar Helmholtz problem
  // with homogeneous Dirichlet data, singular when 2 gamma h is a multiple of pi.
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const double a = g.alpha_of(m), b = g.beta_of(m);
    const double g2 = ek2 - a * a - b * b;
    if (g2 <= 0.0) continue;
    const double s = std::sin(2.0 * std::sqrt(g2) * cfg.h);
    if (std::abs(s) < opts_.res_guard) throw ResonanceError(g.p_of(m), g.q_of(m), s);
  }

  systems_.resize(g.num_modes());
  const CapacityOperator cap_u(Face::upper, cfg, g), cap_w(Face::lower, cfg, g);
  const double wmu = cfg.omega_mu0();

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(g.num_modes()); ++mi) {
    const std::size_t m = static_cast<std::size_t>(mi);
    ModeSystem& sys = systems_[m];
    const double a = g.alpha_of(m), b = g.beta_of(m);
    sys.lu.compute(d.z().helmholtz_system(a * a + b * b - ek2));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e(N - 1) = 1.0;
    sys.h_top = sys.lu.solve(e);
    e.setZero();
    e(0) = 1.0;
    sys.h_bot = sys.lu.solve(e);
    sys.m_up = cap_u.multiplier(m) * (kI * wmu);
    sys.m_lo = cap_w.multiplier(m) * (kI * wmu);

    Mat6 G;
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(N);
    const Eigen::VectorXcd ht = sys.h_top.cast<cplx>(), hb = sys.h_bot.cast<cplx>();
    for (int c = 0; c < 3; ++c) {
      G.col(c) = boundary_rows(m, sys, c == 0 ? ht : zero, c == 1 ? ht : zero,
                               c == 2 ? ht : zero);
      G.col(3 + c) = boundary_rows(m, sys, c == 0 ? hb : zero, c == 1 ? hb : zero,
                                   c == 2 ? hb : zero);
    }
    sys.bc_lu.compute(G);
    Eigen::JacobiSVD<Mat6> svd(G);
    const auto& sv = svd.singularValues();
    const double smin = sv(5);
    const double cond_bc = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    const double rc = sys.lu.rcond();
    const double cond_lu = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    sys.cond = std::max(cond_bc, cond_lu);
  }

  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    if (!(systems_[m].cond <= max_cond_)) {
      max_cond_ = systems_[m].cond;
      worst_p_ = g.p_of(m);
      worst_q_ = g.q_of(m);
    }
  }
  if (!(max_cond_ <= opts_.cond_limit)) throw SingularModeError(worst_p_, worst_q_, max_cond_);
}

OrderSolver::Vec6 OrderSolver::boundary_rows(std::size_t m, const ModeSystem& sys,
                                             const Eigen::VectorXcd& ex,
                                             const Eigen::VectorXcd& ey,
                                             const Eigen::VectorXcd& ez) const {
  const Discretization& d = *disc_;
  const int N = d.Nz();
  const double a = d.modes().alpha_of(m), b = d.modes().beta_of(m);
  const Eigen::RowVectorXd top = d.z().top_derivative_row();
  const Eigen::RowVectorXd bot = d.z().bottom_derivative_row();
  const cplx tx = top.cast<cplx>() * ex, ty = top.cast<cplx>() * ey, tz = top.cast<cplx>() * ez;
  const cplx bx = bot.cast<cplx>() * ex, by = bot.cast<cplx>() * ey, bz = bot.cast<cplx>() * ez;
  const int t = N - 1;
  Vec6 r;
  r(0) = tx - kI * a * ez(t) - (sys.m_up(0, 0) * ex(t) + sys.m_up(0, 1) * ey(t));
  r(1) = ty - kI * b * ez(t) - (sys.m_up(1, 0) * ex(t) + sys.m_up(1, 1) * ey(t));
  r(2) = kI * a * ex(t) + kI * b * ey(t) + tz;
  r(3) = -(bx - kI * a * ez(0)) - (sys.m_lo(0, 0) * ex(0) + sys.m_lo(0, 1) * ey(0));
  r(4) = -(by - kI * b * ez(0)) - (sys.m_lo(1, 0) * ex(0) + sys.m_lo(1, 1) * ey(0));
  r(5) = kI * a * ex(0) + kI * b * ey(0) + bz;
  return r;
}

VectorFieldCoeffs OrderSolver::solve(const OrderProblem& prob, SolveReport* report) const {
  const Discretization& d = *disc_;
  const ModeGrid& g = d.modes();
  const int N = d.Nz();
  if (prob.F.disc().get() != disc_.get() && !(prob.F.disc() && prob.F.disc()->Nz() == N &&
                                                 prob.F.disc()->num_modes() == g.num_modes()))
    throw ConfigError("order problem source does not match the solver discretization");
  if (!prob.Q_data.matches(g) || !prob.R_data.matches(g))
    throw ConfigError("order problem boundary data does not match the mode grid");

  const WaveConfig& cfg = d.config();
  const double ek2 = cfg.eps_bar * cfg.k0 * cfg.k0;
  const ScalarField divF = div_of(prob.F);
  const VectorFieldCoeffs gdivF = grad_of(divF);
  VectorFieldCoeffs E(disc_);

  // Interface rows (C1 continuity) and face rows carry zero right-hand side.
  std::vector<char> interior(N, 1);
  interior[0] = interior[N - 1] = 0;
  for (const auto& el : d.z().elements())
    if (el.last != N - 1) interior[el.last] = 0;

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(g.num_modes()); ++mi) {
    const std::size_t m = static_cast<std::size_t>(mi);
    const ModeSystem& sys = systems_[m];
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(N, 6);
    for (int c = 0; c < 3; ++c)
      for (int j = 0; j < N; ++j) {
        if (!interior[j]) continue;
        const cplx v = ek2 * prob.F.at(c, m, j) + gdivF.at(c, m, j);
        rhs(j, 2 * c) = v.real();
        rhs(j, 2 * c + 1) = v.imag();
      }
    const Eigen::MatrixXd sol = sys.lu.solve(rhs);
    Eigen::VectorXcd part[3];
    for (int c = 0; c < 3; ++c) {
      part[c].resize(N);
      part[c].real() = sol.col(2 * c);
      part[c].imag() = sol.col(2 * c + 1);
    }
    Vec6 target;
    target(0) = prob.Q_data.coeffs[m][0];
    target(1) = prob.Q_data.coeffs[m][1];
    target(2) = -divF.at(m, N - 1);
    target(3) = prob.R_data.coeffs[m][0];
    target(4) = prob.R_data.coeffs[m][1];
    target(5) = -divF.at(m, 0);
    const Vec6 u = sys.bc_lu.solve(target - boundary_rows(m, sys, part[0], part[1], part[2]));
    for (int c = 0; c < 3; ++c)
      for (int j = 0; j < N; ++j)
        E.at(c, m, j) = part[c](j) + u(c) * sys.h_top(j) + u(3 + c) * sys.h_bot(j);
  }

  if (report || opts_.verify_residual) {
    EnvelopeField flat;
    flat.disc = disc_;
    flat.eps_bar = cfg.eps_bar;
    flat.rho0 = 0.0;
    flat.zero = true;
    SolveReport rep;
    rep.residual = residual_of(E, prob, flat);
    rep.rhs_norm = rhs_norm_of(prob, flat);
    const double denom = l2_norm(E) + l2_norm(prob.F);
    rep.divergence_defect = denom > 0.0 ? l2_norm(div_of(E + prob.F)) / denom : 0.0;
    rep.max_condition = max_cond_;
    rep.worst_p = worst_p_;
    rep.worst_q = worst_q_;
    if (opts_.verify_residual && rep.residual > opts_.res_tol * rep.rhs_norm)
      throw SolverError("order " + std::to_string(prob.ell) + ": residual " +
                        std::to_string(rep.residual) + " exceeds tolerance");
    if (report) *report = rep;
  }
  return E;
}

VectorFieldCoeffs solve_order(const OrderProblem& prob, const DiscretizationPtr& disc,
                              const SolverOptions& opts) {
  return OrderSolver(disc, opts).solve(prob);
}

namespace {

Eigen::VectorXcd flatten(const VectorFieldCoeffs& f) {
  const std::size_t n = f.comp(0).size();
  Eigen::VectorXcd v(3 * n);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n; ++i) v(c * n + i) = f.comp(c)[i];
  return v;
}

VectorFieldCoeffs unflatten(const Eigen::VectorXcd& v, const DiscretizationPtr& disc) {
  VectorFieldCoeffs f(disc);
  const std::size_t n = f.comp(0).size();
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n; ++i) f.comp(c)[i] = v(c * n + i);
  return f;
}

// Restarted GMRES with modified Gram-Schmidt and Givens rotations.
Eigen::VectorXcd gmres(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& A,
                       const Eigen::VectorXcd& b, Eigen::VectorXcd x, int restart, int max_it,
                       double tol, std::vector<double>& history, bool& converged) {
  const double bnorm = b.norm();
  converged = false;
  if (bnorm == 0.0) {
    converged = true;
    return Eigen::VectorXcd::Zero(b.size());
  }
  int total = 0;
  while (total < max_it) {
    Eigen::VectorXcd r = b - A(x);
    double beta = r.norm();
    history.push_back(beta / bnorm);
    if (beta <= tol * bnorm) {
      converged = true;
      return x;
    }
    const int m = restart;
    std::vector<Eigen::VectorXcd> V;
    V.push_back(r / beta);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
    std::vector<cplx> cs(m), sn(m);
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(m + 1);
    s(0) = beta;
    int k = 0;
    for (; k < m && total < max_it; ++k, ++total) {
      Eigen::VectorXcd w = A(V[k]);
      for (int j = 0; j <= k; ++j) {
        H(j, k) = V[j].dot(w);
        w -= H(j, k) * V[j];
      }
      const double wn = w.norm();
      H(k + 1, k) = wn;
      for (int j = 0; j < k; ++j) {
        const cplx t = std::conj(cs[j]) * H(j, k) + std::conj(sn[j]) * H(j + 1, k);
        H(j + 1, k) = -sn[j] * H(j, k) + cs[j] * H(j + 1, k);
        H(j, k) = t;
      }
      const double den = std::hypot(std::abs(H(k, k)), std::abs(H(k + 1, k)));
      cs[k] = den > 0.0 ? H(k, k) / den : cplx(1.0);
      sn[k] = den > 0.0 ? H(k + 1, k) / den : cplx(0.0);
      H(k, k) = std::conj(cs[k]) * H(k, k) + std::conj(sn[k]) * H(k + 1, k);
      H(k + 1, k) = 0.0;
      s(k + 1) = -sn[k] * s(k);
      s(k) = std::conj(cs[k]) * s(k);
      const double res = std::abs(s(k + 1));
      history.push_back(res / bnorm);
      if (res <= tol * bnorm || wn == 0.0) {
        ++k;
        ++total;
        break;
      }
      V.push_back(w / wn);
    }
    Eigen::VectorXcd y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(s.head(k));
    for (int j = 0; j < k; ++j) x += y(j) * V[j];
  }
  const double fin = (b - A(x)).norm() / bnorm;
  history.push_back(fin);
  converged = fin <= tol;
  return x;
}

}  // namespace

VectorFieldCoeffs solve_base_variable(const EnvelopeField& env, const OrderProblem& prob,
                                      const OrderSolver& solver, const IterConfig& iter,
                                      IterReport* report) {
  IterReport rep;
  const DiscretizationPtr& disc = solver.disc();
  if (env.rho0 == 0.0 || env.zero) {
    VectorFieldCoeffs E = solver.solve(prob);
    rep.iterations = 1;
    rep.history.push_back(0.0);
    if (report) *report = rep;
    return E;
  }
  // (eps0 / eps_bar) F = (1 - rho0 E) F
  VectorFieldCoeffs Fs = prob.F;
  Fs.axpy(-env.rho0, multiply(env.envelope_product, prob.F));
  OrderProblem p = prob;
  p.F = Fs;
  VectorFieldCoeffs E = solver.solve(p);  // iterate from the constant-base answer

  bool diverging = false;
  int rises = 0;
  for (int n = 1; n <= iter.max_iter; ++n) {
    p.F = Fs;
    p.F.axpy(-env.rho0, multiply(env.envelope_product, E));
    VectorFieldCoeffs En = solver.solve(p);
    const double nn = l2_norm(En);
    const double upd = nn > 0.0 ? l2_norm(En - E) / nn : 0.0;
    rep.history.push_back(upd);
    rep.iterations = n;
    E = std::move(En);
    if (upd < iter.iter_tol) {
      if (report) *report = rep;
      return E;
    }
    if (n >= 2 && upd > rep.history[n - 2]) {
      if (++rises >= 3) {
        diverging = true;
        break;
      }
    } else {
      rises = 0;
    }
  }
  if (!iter.krylov)
    throw NonConvergenceError(diverging ? "fixed-point iteration diverges"
                                        : "fixed-point iteration did not converge",
                              rep.history);

  // (I + rho0 S0 E) x = S(F_s, Q, R), with S0 the zero-data inverse.
  rep.used_krylov = true;
  OrderProblem p0 = OrderProblem::homogeneous(disc, prob.ell);
  p.F = Fs;
  const Eigen::VectorXcd b = flatten(solver.solve(p));
  auto op = [&](const Eigen::VectorXcd& x) {
    const VectorFieldCoeffs X = unflatten(x, disc);
    p0.F = multiply(env.envelope_product, X);
    p0.F *= -env.rho0;
    return Eigen::VectorXcd(x - flatten(solver.solve(p0)));
  };
  bool ok = false;
  const Eigen::VectorXcd x =
      gmres(op, b, flatten(E), iter.restart, iter.max_iter, iter.iter_tol, rep.history, ok);
  rep.iterations += static_cast<int>(rep.history.size());
  if (!ok) throw NonConvergenceError("GMRES did not converge", rep.history);
  if (report) *report = rep;
  return unflatten(x, disc);
}

}  // namespace hope
