#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hope/field.hpp"

namespace hope {

// Smoothed indicator of (a, b): (tanh(w (z - a)) - tanh(w (z - b))) / 2.
double phi_ab(double z, double a, double b, double w);

enum class EnvelopeKind { laminar_profile, slab_with_gap, user_sampled };

// Description of the permittivity envelope: eps_v = eps_bar (1 - rho E).
struct EnvelopeSpec {
  EnvelopeKind kind = EnvelopeKind::user_sampled;
  double eps_bar = 1.0;    // reference permittivity the amplitude refers to
  double eps_prime = 1.0;  // material permittivity of the slab
  // laminar profile: Phi_{a,b}(z)
  double a = 0.0, b = 0.0;
  // slab with gap: Phi_{-d,d}(z) (1 - Phi_{-g,g}(x))
  double d = 0.0, g = 0.0;
  double w = 1.0;  // tanh sharpness
  double rho0 = 0.0;
  // user-sampled: arbitrary callable E(x, y, z); `laminar` declares z-only dependence
  std::function<double(double, double, double)> fn;
  bool declared_laminar = false;
  std::string label = "user";

  // (eps_bar - eps_prime) / eps_bar
  double amplitude() const { return (eps_bar - eps_prime) / eps_bar; }

  // Envelope value; x is wrapped into [-d_x/2, d_x/2) for the gap factor.
  double evaluate(double x, double y, double z, double d_x) const;
  // z-only profile for laminar kinds; throws for slab-with-gap.
  double profile(double z) const;
  bool is_laminar() const;
  // Sharp transitions in z as (center, sharpness) pairs.
  std::vector<std::pair<double, double>> z_transitions() const;
  std::string kind_name() const;
};

EnvelopeSpec laminar_profile(double eps_prime, double a, double b, double w,
                             double eps_bar = 1.0);
EnvelopeSpec slab_with_gap(double eps_prime, double d, double g, double w);
EnvelopeSpec user_sampled(std::function<double(double, double, double)> fn, bool laminar,
                          double eps_bar = 1.0, std::string label = "user");
EnvelopeSpec constant_envelope(double value, double eps_bar = 1.0);

// Element breaks and weights that cluster z nodes around the envelope's
// transitions (half-width 2.5/w, twice the node density of plain elements).
ZGridSpec suggest_zgrid(const EnvelopeSpec& spec, double h, int nodes);

struct EnvelopeOptions {
  double eps0_floor_rel = 1e-6;     // min |eps0| >= floor * eps_bar
  double limit_tol = 1e-6;          // face compatibility eps_v -> eps_u, eps_w
  bool check_face_limits = true;
  int oversample = 16;              // fine-grid factor used to band-limit the envelope
};

// Envelope sampled on the padded product grid of a discretization.
struct EnvelopeField {
  DiscretizationPtr disc;
  EnvelopeSpec spec;
  double rho0 = 0.0;
  double eps_bar = 1.0;
  // Pointwise samples, layout (ix * My + iy) * Nz + iz.
  std::vector<double> E_samples;
  std::vector<double> eps0_samples;
  std::vector<double> ratio_samples;
  // Band-limited (|p| <= P, |q| <= Q) versions used for dealiased products.
  std::vector<double> envelope_product;
  std::vector<double> eps0_product;
  std::vector<double> ratio_product;
  double min_abs_eps0 = 0.0;
  double max_abs_ratio = 0.0;
  double face_mismatch = 0.0;  // worst |eps_v(face) - eps_exterior| over rho in {rho0}
  bool laminar = false;        // samples constant in x, y to 1e-10
  bool zero = false;           // E identically zero on the grid

  std::size_t size() const { return E_samples.size(); }
};

EnvelopeField sample_envelope(const EnvelopeSpec& spec, const DiscretizationPtr& disc,
                              const EnvelopeOptions& opts = {});

// Contour data over the cell [-d_x/2, d_x/2] x [z_lo, z_hi] at fixed y.
// x and z are the axes; E and eps_v = eps_bar (1 - rho E) are stored
// x-major, index i * z.size() + k.
struct EnvelopeSlice {
  std::vector<double> x, z, E, eps_v;
};
EnvelopeSlice envelope_slice(const EnvelopeSpec& spec, double d_x, double y, double z_lo,
                             double z_hi, int nx, int nz, double rho);

}  // namespace hope
