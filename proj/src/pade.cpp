#include "hope/pade.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hope {

namespace {

// Scale so the rescaled coefficients neither grow nor decay on average.
double series_scale(std::span<const cplx> c) {
  int first = -1, last = -1;
  for (int n = 0; n < static_cast<int>(c.size()); ++n) {
    if (std::abs(c[n]) > 0.0) {
      if (first < 0) first = n;
      last = n;
    }
  }
  if (first < 0 || last == first) return 1.0;
  const double r = std::pow(std::abs(c[first]) / std::abs(c[last]), 1.0 / (last - first));
  return std::isfinite(r) && r > 0.0 ? r : 1.0;
}

}  // namespace

PadeApprox pade_fit(std::span<const cplx> c, int L, int M, double rank_tol) {
  if (L < 0 || M < 0 || static_cast<int>(c.size()) < L + M + 1)
    throw std::invalid_argument("pade_fit: need L + M + 1 coefficients");
  PadeApprox pa;
  pa.L = L;
  pa.M_requested = M;
  pa.scale = series_scale(c.subspan(0, L + M + 1));
  std::vector<cplx> s(L + M + 1);
  double pw = 1.0;
  for (int n = 0; n <= L + M; ++n, pw *= pa.scale) s[n] = c[n] * pw;
  auto coef = [&](int k) { return k < 0 ? cplx(0.0) : s[k]; };

  int m = M;
  Eigen::VectorXcd q;
  while (m > 0) {
    // sum_{j=0..m} q_j s_{L+i-j} = 0 for i = 1..m, q_0 = 1
    Eigen::MatrixXcd A(m, m);
    Eigen::VectorXcd rhs(m);
    for (int i = 1; i <= m; ++i) {
      rhs(i - 1) = -coef(L + i);
      for (int j = 1; j <= m; ++j) A(i - 1, j - 1) = coef(L + i - j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    qr.setThreshold(rank_tol);
    if (A.norm() > 0.0 && qr.rank() == m) {
      q = qr.solve(rhs);
      if (q.allFinite()) break;
    }
    --m;
  }
  pa.M = m;
  pa.den.assign(m + 1, cplx(0.0));
  pa.den[0] = 1.0;
  for (int j = 1; j <= m; ++j) pa.den[j] = q(j - 1);
  pa.num.assign(L + 1, cplx(0.0));
  for (int i = 0; i <= L; ++i)
    for (int j = 0; j <= std::min(i, m); ++j) pa.num[i] += pa.den[j] * coef(i - j);
  return pa;
}

PadeValue pade_eval(const PadeApprox& pa, cplx delta, double pole_tol) {
  const cplx t = delta / pa.scale;
  PadeValue out;
  cplx p = 0.0, q = 0.0;
  for (int i = static_cast<int>(pa.num.size()) - 1; i >= 0; --i) p = p * t + pa.num[i];
  double qmag = 0.0, tp = 1.0;
  for (int j = static_cast<int>(pa.den.size()) - 1; j >= 0; --j) q = q * t + pa.den[j];
  for (const cplx& dj : pa.den) {
    qmag += std::abs(dj) * tp;
    tp *= std::abs(t);
  }
  out.taylor_fallback = pa.M == 0 && pa.M_requested > 0;
  out.near_pole = std::abs(q) < pole_tol * qmag;
  out.value = p / q;
  return out;
}

PadeValue pade_value(std::span<const cplx> c, int L, int M, cplx delta) {
  bool all_zero = true;
  for (int n = 0; n <= L + M && n < static_cast<int>(c.size()); ++n)
    if (c[n] != cplx(0.0)) all_zero = false;
  if (all_zero) return {};
  return pade_eval(pade_fit(c, L, M), delta);
}

}  // namespace hope
