#include "hope/hope_engine.hpp"

#include <cmath>
#include <string>

#include "hope/errors.hpp"
#include "hope/norms.hpp"
#include "hope/pade.hpp"

namespace hope {

TaylorSeries compute_expansion(const EnvelopeField& env, int L_max, const HopeOptions& opts) {
  const OrderSolver solver(env.disc, opts.solver);
  return compute_expansion(env, L_max, solver, opts);
}

TaylorSeries compute_expansion(const EnvelopeField& env, int L_max, const OrderSolver& solver,
                               const HopeOptions& opts) {
  if (L_max < 0) throw ConfigError("L_max must be nonnegative");
  if (env.disc.get() != solver.disc().get())
    throw ConfigError("envelope and solver use different discretizations");
  TaylorSeries s;
  s.disc = env.disc;
  s.envelope = env.spec;
  s.rho0 = env.rho0;
  s.max_condition = solver.max_condition();
  s.worst_p = solver.worst_p();
  s.worst_q = solver.worst_q();

  OrderProblem prob = OrderProblem::incident(env.disc);
  for (int ell = 0; ell <= L_max; ++ell) {
    if (ell > 0) {
      prob = OrderProblem::homogeneous(env.disc, ell);
      prob.F = assemble_rhs(s.orders.back(), env);
    }
    IterReport it;
    VectorFieldCoeffs E = solve_base_variable(env, prob, solver, opts.iter, &it);
    const double xn = x_norm(E, env);
    if (!std::isfinite(xn) || xn > opts.overflow_limit)
      throw SolverError("X-norm overflow at order " + std::to_string(ell));
    s.residuals.push_back(residual_of(E, prob, env));
    s.rhs_norms.push_back(rhs_norm_of(prob, env));
    const double denom = l2_norm(E) + l2_norm(prob.F);
    s.divergence_defects.push_back(denom > 0.0 ? l2_norm(div_of(E + prob.F)) / denom : 0.0);
    s.iterations.push_back(it.iterations);
    s.xnorms.push_back(xn);
    s.orders.push_back(std::move(E));
  }
  return s;
}

VectorFieldCoeffs taylor_sum(const TaylorSeries& series, double delta, int L) {
  if (L < 0 || L > series.L()) throw ConfigError("taylor_sum: L outside the series");
  // Horner from the top order.
  VectorFieldCoeffs acc = series.orders[L];
  for (int ell = L - 1; ell >= 0; --ell) {
    acc *= delta;
    acc += series.orders[ell];
  }
  return acc;
}

VectorFieldCoeffs pade_sum(const TaylorSeries& series, double delta, int L, int M,
                           PadeReport* report) {
  if (L < 0 || M < 0 || L + M > series.L())
    throw ConfigError("pade_sum: need L + M + 1 orders");
  VectorFieldCoeffs out(series.disc);
  const std::size_t n = out.comp(0).size();
  std::size_t reduced = 0, fallbacks = 0, poles = 0;
  for (int c = 0; c < 3; ++c) {
#pragma omp parallel for reduction(+ : reduced, fallbacks, poles) schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      std::vector<cplx> coeffs(L + M + 1);
      bool all_zero = true;
      for (int ell = 0; ell <= L + M; ++ell) {
        coeffs[ell] = series.orders[ell].comp(c)[i];
        if (coeffs[ell] != cplx(0.0)) all_zero = false;
      }
      if (all_zero) continue;
      const PadeApprox pa = pade_fit(coeffs, L, M);
      const PadeValue v = pade_eval(pa, delta);
      out.comp(c)[i] = v.value;
      reduced += pa.reduced() ? 1 : 0;
      fallbacks += v.taylor_fallback ? 1 : 0;
      poles += v.near_pole ? 1 : 0;
    }
  }
  if (report) {
    report->entries = 3 * n;
    report->reduced = reduced;
    report->taylor_fallbacks = fallbacks;
    report->near_poles = poles;
  }
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

GrowthEstimate estimate_growth(const std::vector<double>& xnorms, int lo, int hi,
                               GrowthMethod method) {
  if (lo < 0 || hi >= static_cast<int>(xnorms.size()) || hi - lo + 1 < 3)
    throw ConfigError("growth window needs at least 3 orders inside the series");
  for (int l = lo; l <= hi; ++l)
    if (!(xnorms[l] > 0.0)) throw SolverError("zero norm at order " + std::to_string(l));
  GrowthEstimate g;
  g.lo = lo;
  g.hi = hi;
  g.method = method;
  if (method == GrowthMethod::ratio) {
    std::vector<double> x, y;
    for (int l = lo; l <= hi; ++l) {
      x.push_back(l);
      y.push_back(std::log(xnorms[l]));
    }
    const double slope = fit_slope(x, y);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= x.size();
    my /= x.size();
    g.B_hat = std::exp(slope);
    g.K_hat = std::exp(my - slope * mx);
  } else {
    double B = 0.0;
    for (int l = std::max(lo, 1); l <= hi; ++l) B = std::max(B, std::pow(xnorms[l], 1.0 / l));
    g.B_hat = B;
    double K = 0.0;
    for (int l = lo; l <= hi; ++l) K = std::max(K, xnorms[l] / std::pow(B, l));
    g.K_hat = K;
  }
  return g;
}

GrowthEstimate estimate_growth(const TaylorSeries& series, int lo, int hi, GrowthMethod method) {
  return estimate_growth(series.xnorms, lo, hi, method);
}

ErrorTable convergence_study(const TaylorSeries& series, const EnvelopeField& env,
                             const std::vector<double>& deltas, const std::vector<int>& Ls,
                             ReferenceKind ref) {
  ErrorTable t;
  t.deltas = deltas;
  t.Ls = Ls;
  const int Lmax = series.L();
  for (int L : Ls)
    if (L < 0 || L > Lmax) throw ConfigError("convergence_study: L outside the series");
  t.reference = ref == ReferenceKind::taylor_full
                    ? "taylor-L" + std::to_string(Lmax)
                    : "pade-[" + std::to_string(Lmax / 2) + "/" + std::to_string(Lmax / 2) + "]";
  t.growth = estimate_growth(series, std::min(2, Lmax - 2), Lmax);
  for (double delta : deltas) {
    std::vector<double> row, x, y;
    VectorFieldCoeffs r;
    if (ref == ReferenceKind::pade_diagonal) r = pade_sum(series, delta, Lmax / 2, Lmax / 2);
    for (int L : Ls) {
      // Against the full Taylor sum the error is the tail itself; summing it
      // directly avoids cancellation once it drops below round-off of E.
      double e = 0.0;
      if (ref == ReferenceKind::taylor_full) {
        if (L < Lmax) {
          VectorFieldCoeffs tail = series.orders[Lmax];
          for (int ell = Lmax - 1; ell > L; --ell) {
            tail *= delta;
            tail += series.orders[ell];
          }
          tail *= std::pow(delta, L + 1);
          e = x_norm(tail, env);
        }
      } else {
        e = x_norm(taylor_sum(series, delta, L) - r, env);
      }
      row.push_back(e);
      if (e > 0.0) {
        x.push_back(L);
        y.push_back(std::log(e));
      }
    }
    t.err.push_back(row);
    t.slopes.push_back(fit_slope(x, y));
    t.predicted.push_back(delta > 0.0 ? std::log(t.growth.B_hat * delta) : 0.0);
  }
  return t;
}

}  // namespace hope
