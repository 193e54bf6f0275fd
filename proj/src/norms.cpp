#include "hope/norms.hpp"

#include <cmath>

#include "hope/errors.hpp"

namespace hope {

namespace {

double weighted_sum_sq(const std::vector<cplx>& data, const Discretization& d) {
  const auto& w = d.z().weights();
  const int nz = d.Nz();
  double total = 0.0;
  for (std::size_t m = 0; m < d.num_modes(); ++m) {
    double acc = 0.0;
    for (int iz = 0; iz < nz; ++iz) acc += w[iz] * std::norm(data[m * nz + iz]);
    total += acc;
  }
  return total * d.config().d_x * d.config().d_y;
}

double l2_sq(const VectorFieldCoeffs& f) {
  const Discretization& d = *f.disc();
  return weighted_sum_sq(f.comp(0), d) + weighted_sum_sq(f.comp(1), d) +
         weighted_sum_sq(f.comp(2), d);
}

}  // namespace

double l2_norm(const VectorFieldCoeffs& f) { return std::sqrt(l2_sq(f)); }

double l2_norm(const ScalarField& f) { return std::sqrt(weighted_sum_sq(f.data(), *f.disc())); }

double hcurl_norm(const VectorFieldCoeffs& f) {
  return std::sqrt(l2_sq(f) + l2_sq(curl_of(f)));
}

double hdiv_norm(const VectorFieldCoeffs& f) {
  const ScalarField dv = div_of(f);
  return std::sqrt(l2_sq(f) + weighted_sum_sq(dv.data(), *f.disc()));
}

VectorFieldCoeffs eps0_k2_times(const VectorFieldCoeffs& f, const EnvelopeField& env) {
  const double k2 = f.disc()->config().k0 * f.disc()->config().k0;
  if (env.rho0 == 0.0 || env.zero) return (env.eps_bar * k2) * f;
  VectorFieldCoeffs v = multiply(env.eps0_product, f);
  v *= k2;
  return v;
}

double x_norm(const VectorFieldCoeffs& f, const EnvelopeField& env) {
  const double hc = hcurl_norm(f);
  const double hd = hdiv_norm(eps0_k2_times(f, env));
  return std::sqrt(hc * hc + hd * hd);
}

double hmh_div_norm(const TangentialTrace& t, const WaveConfig& cfg, const ModeGrid& grid) {
  if (!t.matches(grid)) throw ConfigError("trace does not match the mode grid");
  double acc = 0.0;
  for (std::size_t m = 0; m < grid.num_modes(); ++m) {
    const double a = grid.alpha_of(m), b = grid.beta_of(m);
    const auto& u = t.coeffs[m];
    acc += (std::norm(u[0]) + std::norm(u[1]) + std::norm(a * u[0] + b * u[1])) /
           std::sqrt(1.0 + a * a + b * b);
  }
  return std::sqrt(cfg.d_x * cfg.d_y * acc);
}

double hmh_curl_norm(const TangentialTrace& t, const WaveConfig& cfg, const ModeGrid& grid) {
  if (!t.matches(grid)) throw ConfigError("trace does not match the mode grid");
  double acc = 0.0;
  for (std::size_t m = 0; m < grid.num_modes(); ++m) {
    const double a = grid.alpha_of(m), b = grid.beta_of(m);
    const auto& u = t.coeffs[m];
    acc += (std::norm(u[0]) + std::norm(u[1]) + std::norm(a * u[1] - b * u[0])) /
           std::sqrt(1.0 + a * a + b * b);
  }
  return std::sqrt(cfg.d_x * cfg.d_y * acc);
}

NormReport norms(const VectorFieldCoeffs& f, const EnvelopeField& env) {
  const Discretization& d = *f.disc();
  NormReport r;
  const double l2s = l2_sq(f);
  r.l2 = std::sqrt(l2s);
  r.hcurl = std::sqrt(l2s + l2_sq(curl_of(f)));
  r.hdiv_eps = hdiv_norm(eps0_k2_times(f, env));
  r.x_norm = std::sqrt(r.hcurl * r.hcurl + r.hdiv_eps * r.hdiv_eps);
  const TangentialTrace up = tangential_trace(f, Face::upper);
  const TangentialTrace lo = tangential_trace(f, Face::lower);
  r.hmh_div_upper = hmh_div_norm(up, d.config(), d.modes());
  r.hmh_div_lower = hmh_div_norm(lo, d.config(), d.modes());
  r.hmh_curl_upper = hmh_curl_norm(up, d.config(), d.modes());
  r.hmh_curl_lower = hmh_curl_norm(lo, d.config(), d.modes());
  return r;
}

int trusted_z_order(const ZGrid& z) {
  const double dnorm = z.D().cwiseAbs().rowwise().sum().maxCoeff();
  // roundoff growth ~ eps * ||D||^s kept below 1e-6
  if (dnorm <= 1.0) return 1 << 20;
  return static_cast<int>(std::floor(10.0 / std::log10(dnorm)));
}

DerivativeNorm scaled_derivative_norm(const VectorFieldCoeffs& f, int r, int t, int s,
                                      const EnvelopeField& env) {
  if (r < 0 || t < 0 || s < 0) throw ConfigError("derivative orders must be nonnegative");
  const Discretization& d = *f.disc();
  const ModeGrid& g = d.modes();
  VectorFieldCoeffs g_f = f;
  for (int k = 0; k < s; ++k) g_f = dz_of(g_f);
  const int nz = d.Nz();
  const double fact = std::tgamma(static_cast<double>(r + t + s) + 1.0);
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const cplx mult = std::pow(kI * g.alpha_of(m), r) * std::pow(kI * g.beta_of(m), t) / fact;
    for (int c = 0; c < 3; ++c)
      for (int iz = 0; iz < nz; ++iz) g_f.at(c, m, iz) *= mult;
  }
  DerivativeNorm out;
  out.value = x_norm(g_f, env);
  out.z_order_trusted = s <= trusted_z_order(d.z());
  return out;
}

LemmaSums lemma_S_sums(int s) {
  if (s < 0) throw ConfigError("convolution sums require s >= 0");
  const double s1 = s + 1.0;
  auto single = [](int n) {
    const double n1 = n + 1.0;
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double a = n - j + 1.0, b = j + 1.0;
      acc += (n1 * n1) / (a * a * b * b);
    }
    return acc;
  };
  LemmaSums out;
  out.single_sum = single(s);
  // inner sum over r equals single(j) / (j+1)^2
  for (int j = 0; j <= s; ++j) {
    const double a = s - j + 1.0, b = j + 1.0;
    out.double_sum += (s1 * s1) / (a * a) * single(j) / (b * b);
  }
  return out;
}

std::vector<LemmaSums> lemma_S_sweep(int s_max) {
  if (s_max < 0) throw ConfigError("convolution sums require s >= 0");
  std::vector<LemmaSums> out(static_cast<std::size_t>(s_max) + 1);
  std::vector<double> inner(out.size());  // single(j) / (j+1)^2
  for (int s = 0; s <= s_max; ++s) {
    const double s1 = s + 1.0;
    double single = 0.0, dbl = 0.0;
    for (int j = 0; j <= s; ++j) {
      const double a = s - j + 1.0, b = j + 1.0;
      const double term = (s1 * s1) / (a * a * b * b);
      single += term;
      if (j < s) dbl += (s1 * s1) / (a * a) * inner[j];
    }
    inner[s] = single / (s1 * s1);
    dbl += single;  // j = s term: (s+1)^2 * single(s) / (s+1)^2
    out[s] = {single, dbl};
  }
  return out;
}

}  // namespace hope
