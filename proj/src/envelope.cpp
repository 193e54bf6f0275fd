#include "hope/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hope/errors.hpp"

namespace hope {

double phi_ab(double z, double a, double b, double w) {
  return 0.5 * (std::tanh(w * (z - a)) - std::tanh(w * (z - b)));
}

double EnvelopeSpec::evaluate(double x, double y, double z, double d_x) const {
  switch (kind) {
    case EnvelopeKind::laminar_profile:
      return amplitude() * phi_ab(z, a, b, w);
    case EnvelopeKind::slab_with_gap: {
      // wrap into the primary cell [-d_x/2, d_x/2)
      const double xw = x - d_x * std::floor(x / d_x + 0.5);
      return amplitude() * phi_ab(z, -d, d, w) * (1.0 - phi_ab(xw, -g, g, w));
    }
    case EnvelopeKind::user_sampled:
      if (!fn) throw ConfigError("user-sampled envelope has no sampling function");
      return fn(x, y, z);
  }
  return 0.0;
}

double EnvelopeSpec::profile(double z) const {
  if (!is_laminar()) throw ConfigError("envelope is not laminar (depends on x or y)");
  return evaluate(0.0, 0.0, z, 1.0);
}

bool EnvelopeSpec::is_laminar() const {
  switch (kind) {
    case EnvelopeKind::laminar_profile:
      return true;
    case EnvelopeKind::slab_with_gap:
      return false;
    case EnvelopeKind::user_sampled:
      return declared_laminar;
  }
  return false;
}

std::vector<std::pair<double, double>> EnvelopeSpec::z_transitions() const {
  switch (kind) {
    case EnvelopeKind::laminar_profile:
      return {{a, w}, {b, w}};
    case EnvelopeKind::slab_with_gap:
      return {{-d, w}, {d, w}};
    case EnvelopeKind::user_sampled:
      return {};
  }
  return {};
}

std::string EnvelopeSpec::kind_name() const {
  switch (kind) {
    case EnvelopeKind::laminar_profile:
      return "laminar-profile";
    case EnvelopeKind::slab_with_gap:
      return "slab-with-gap";
    case EnvelopeKind::user_sampled:
      return "user-sampled";
  }
  return "unknown";
}

EnvelopeSpec laminar_profile(double eps_prime, double a, double b, double w, double eps_bar) {
  if (!(a < b) || !(w > 0.0)) throw ConfigError("laminar profile needs a < b and w > 0");
  EnvelopeSpec s;
  s.kind = EnvelopeKind::laminar_profile;
  s.eps_bar = eps_bar;
  s.eps_prime = eps_prime;
  s.a = a;
  s.b = b;
  s.w = w;
  s.label = "laminar-profile";
  return s;
}

EnvelopeSpec slab_with_gap(double eps_prime, double d, double g, double w) {
  if (!(d > 0.0) || !(g > 0.0) || !(w > 0.0))
    throw ConfigError("slab with gap needs d, g, w > 0");
  EnvelopeSpec s;
  s.kind = EnvelopeKind::slab_with_gap;
  s.eps_bar = 1.0;
  s.eps_prime = eps_prime;
  s.d = d;
  s.g = g;
  s.w = w;
  s.rho0 = 0.0;
  s.label = "slab-with-gap";
  return s;
}

EnvelopeSpec user_sampled(std::function<double(double, double, double)> fn, bool laminar,
                          double eps_bar, std::string label) {
  EnvelopeSpec s;
  s.kind = EnvelopeKind::user_sampled;
  s.fn = std::move(fn);
  s.declared_laminar = laminar;
  s.eps_bar = eps_bar;
  s.label = std::move(label);
  return s;
}

EnvelopeSpec constant_envelope(double value, double eps_bar) {
  return user_sampled([value](double, double, double) { return value; }, true, eps_bar,
                      value == 0.0 ? "zero" : "constant");
}

ZGridSpec suggest_zgrid(const EnvelopeSpec& spec, double h, int nodes) {
  constexpr double kHalfWidth = 2.5;  // in units of 1/w
  std::vector<std::pair<double, double>> spans;
  for (auto [c, w] : spec.z_transitions()) {
    const double r = kHalfWidth / w;
    double lo = std::max(c - r, -h);
    double hi = std::min(c + r, h);
    if (hi - lo > 0.5 * h) continue;  // smooth relative to the slab
    if (hi <= -h || lo >= h) continue;
    spans.push_back({lo, hi});
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, s.second);
    else
      merged.push_back(s);
  }

  // Cover [-h, h] with alternating plain and transition segments.
  struct Segment {
    double lo, hi;
    bool transition;
  };
  std::vector<Segment> segs;
  const double min_len = 1e-3 * h;
  double cursor = -h;
  for (const auto& [lo, hi] : merged) {
    if (lo - cursor > min_len) segs.push_back({cursor, lo, false});
    segs.push_back({lo - cursor > min_len ? lo : cursor, hi, true});
    cursor = hi;
  }
  if (h - cursor > min_len) segs.push_back({cursor, h, false});
  else if (!segs.empty()) segs.back().hi = h;

  ZGridSpec out;
  out.nodes = nodes;
  if (segs.size() <= 1) return out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i > 0) out.breaks.push_back(segs[i].lo);
    const double len = segs[i].hi - segs[i].lo;
    out.weights.push_back(segs[i].transition ? 2.2 : 0.6 + 1.6 * std::sqrt(len / (2.0 * h)));
  }
  return out;
}

namespace {

std::vector<double> sample_grid(const EnvelopeSpec& spec, const Discretization& disc, int nx,
                                int ny) {
  const auto& z = disc.z().nodes();
  const int nz = disc.Nz();
  std::vector<double> s(static_cast<std::size_t>(nx) * ny * nz);
  const double dx = disc.config().d_x;
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix < nx; ++ix) {
    const double x = disc.x_at(ix, nx);
    for (int iy = 0; iy < ny; ++iy) {
      const double y = disc.y_at(iy, ny);
      const std::size_t base = (static_cast<std::size_t>(ix) * ny + iy) * nz;
      for (int iz = 0; iz < nz; ++iz) s[base + iz] = spec.evaluate(x, y, z[iz], dx);
    }
  }
  return s;
}

}  // namespace

EnvelopeField sample_envelope(const EnvelopeSpec& spec, const DiscretizationPtr& disc,
                              const EnvelopeOptions& opts) {
  const WaveConfig& cfg = disc->config();
  if (std::abs(spec.eps_bar - cfg.eps_bar) > 1e-12 * cfg.eps_bar)
    throw ConfigError("envelope reference permittivity differs from the wave config eps_bar");
  if (spec.kind == EnvelopeKind::slab_with_gap && !(2.0 * spec.g < cfg.d_x))
    throw ConfigError("gap wider than the period cell");

  EnvelopeField env;
  env.disc = disc;
  env.spec = spec;
  env.rho0 = spec.rho0;
  env.eps_bar = cfg.eps_bar;
  const int mx = disc->Mx(), my = disc->My(), nz = disc->Nz();
  env.E_samples = sample_grid(spec, *disc, mx, my);

  const std::size_t n = env.E_samples.size();
  env.eps0_samples.resize(n);
  env.ratio_samples.resize(n);
  env.min_abs_eps0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    env.eps0_samples[i] = env.eps_bar * (1.0 - env.rho0 * env.E_samples[i]);
    env.min_abs_eps0 = std::min(env.min_abs_eps0, std::abs(env.eps0_samples[i]));
  }
  if (!(env.min_abs_eps0 > opts.eps0_floor_rel * env.eps_bar)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "base permittivity nearly vanishes: min |eps0| = %.3e",
                  env.min_abs_eps0);
    throw ConfigError(buf);
  }
  for (std::size_t i = 0; i < n; ++i) {
    env.ratio_samples[i] = env.E_samples[i] / env.eps0_samples[i];
    env.max_abs_ratio = std::max(env.max_abs_ratio, std::abs(env.ratio_samples[i]));
  }

  env.zero = std::all_of(env.E_samples.begin(), env.E_samples.end(),
                         [](double v) { return v == 0.0; });

  env.laminar = true;
  for (int ix = 0; ix < mx && env.laminar; ++ix)
    for (int iy = 0; iy < my && env.laminar; ++iy)
      for (int iz = 0; iz < nz; ++iz) {
        const double v = env.E_samples[(static_cast<std::size_t>(ix) * my + iy) * nz + iz];
        if (std::abs(v - env.E_samples[iz]) > 1e-10) {
          env.laminar = false;
          break;
        }
      }

  // Face compatibility: eps_v must approach the exterior values for every rho,
  // so both eps0 and eps_bar * E are checked.
  for (int ix = 0; ix < mx; ++ix)
    for (int iy = 0; iy < my; ++iy) {
      const std::size_t base = (static_cast<std::size_t>(ix) * my + iy) * nz;
      const std::size_t top = base + nz - 1;
      env.face_mismatch = std::max({env.face_mismatch,
                                    std::abs(env.eps0_samples[top] - cfg.eps_u),
                                    std::abs(env.eps0_samples[base] - cfg.eps_w),
                                    std::abs(env.eps_bar * env.E_samples[top]),
                                    std::abs(env.eps_bar * env.E_samples[base])});
    }
  if (opts.check_face_limits && env.face_mismatch > opts.limit_tol) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "permittivity does not meet the exterior values at the faces "
                  "(mismatch %.3e > %.1e)",
                  env.face_mismatch, opts.limit_tol);
    throw ConfigError(buf);
  }

  // Band-limited multipliers from an oversampled grid.
  if (env.laminar) {
    env.envelope_product = env.E_samples;
    env.ratio_product = env.ratio_samples;
  } else {
    const int fx = std::max(mx, opts.oversample * disc->modes().num_p());
    const int fy = std::max(my, opts.oversample * disc->modes().num_q());
    std::vector<double> fine = sample_grid(spec, *disc, fx, fy);
    env.envelope_product = band_limit(fine, fx, fy, nz, *disc);
    for (auto& v : fine) v = v / (env.eps_bar * (1.0 - env.rho0 * v));
    env.ratio_product = band_limit(fine, fx, fy, nz, *disc);
  }
  env.eps0_product.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    env.eps0_product[i] = env.eps_bar * (1.0 - env.rho0 * env.envelope_product[i]);
  return env;
}

EnvelopeSlice envelope_slice(const EnvelopeSpec& spec, double d_x, double y, double z_lo,
                             double z_hi, int nx, int nz, double rho) {
  if (nx < 2 || nz < 2) throw ConfigError("slice needs at least 2 x 2 points");
  EnvelopeSlice s;
  for (int k = 0; k < nz; ++k) s.z.push_back(z_lo + (z_hi - z_lo) * k / (nz - 1));
  for (int i = 0; i < nx; ++i) {
    const double x = -0.5 * d_x + d_x * i / (nx - 1);
    s.x.push_back(x);
    for (int k = 0; k < nz; ++k) {
      const double e = spec.evaluate(x, y, s.z[k], d_x);
      s.E.push_back(e);
      s.eps_v.push_back(spec.eps_bar * (1.0 - rho * e));
    }
  }
  return s;
}

}  // namespace hope
