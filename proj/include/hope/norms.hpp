#pragma once

#include <utility>
#include <vector>

#include "hope/capacity.hpp"
#include "hope/envelope.hpp"
#include "hope/field.hpp"

namespace hope {

struct NormReport {
  double l2 = 0.0;
  double hcurl = 0.0;
  double hdiv_eps = 0.0;  // ||eps0 k0^2 u||_{H(div)}
  double x_norm = 0.0;
  double hmh_div_upper = 0.0;
  double hmh_div_lower = 0.0;
  double hmh_curl_upper = 0.0;
  double hmh_curl_lower = 0.0;
};

// Volume norms by Parseval in (x, y) and Clenshaw-Curtis quadrature in z.
double l2_norm(const VectorFieldCoeffs& f);
double l2_norm(const ScalarField& f);
double hcurl_norm(const VectorFieldCoeffs& f);
double hdiv_norm(const VectorFieldCoeffs& f);
// ||u||_X with the base permittivity taken from the envelope.
double x_norm(const VectorFieldCoeffs& f, const EnvelopeField& env);
// eps0 k0^2 u, using the band-limited base permittivity.
VectorFieldCoeffs eps0_k2_times(const VectorFieldCoeffs& f, const EnvelopeField& env);

// Trace norms on a face, weighted by 1/sqrt(1 + alpha_p^2 + beta_q^2).
double hmh_div_norm(const TangentialTrace& t, const WaveConfig& cfg, const ModeGrid& grid);
double hmh_curl_norm(const TangentialTrace& t, const WaveConfig& cfg, const ModeGrid& grid);

NormReport norms(const VectorFieldCoeffs& f, const EnvelopeField& env);

struct DerivativeNorm {
  double value = 0.0;
  bool z_order_trusted = true;  // false when repeated z differentiation amplifies roundoff
};

// || d_x^r d_y^t d_z^s f / (r+t+s)! ||_X.
DerivativeNorm scaled_derivative_norm(const VectorFieldCoeffs& f, int r, int t, int s,
                                      const EnvelopeField& env);

// Largest z-derivative order considered trustworthy on this grid.
int trusted_z_order(const ZGrid& z);

struct LemmaSums {
  double single_sum = 0.0;
  double double_sum = 0.0;
};

// sum_j (s+1)^2 / ((s-j+1)^2 (j+1)^2) and the corresponding double sum.
LemmaSums lemma_S_sums(int s);
// All s in [0, s_max] in O(s_max^2).
std::vector<LemmaSums> lemma_S_sweep(int s_max);

}  // namespace hope
