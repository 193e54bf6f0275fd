#pragma once

#include <span>
#include <vector>

#include "hope/types.hpp"

namespace hope {

// [L/M] rational approximant p(d)/q(d) of a scalar power series, q(0) = 1.
// Coefficients are stored for the rescaled variable d / scale.
struct PadeApprox {
  std::vector<cplx> num;
  std::vector<cplx> den;
  int L = 0;
  int M = 0;            // effective denominator degree after rank reduction
  int M_requested = 0;
  double scale = 1.0;

  bool reduced() const { return M < M_requested; }
};

// Builds the approximant from c[0..L+M]. The Toeplitz system is solved by
// column-pivoted QR; when it is rank deficient the denominator degree drops
// until it is not (M = 0 is the Taylor polynomial).
PadeApprox pade_fit(std::span<const cplx> c, int L, int M, double rank_tol = 1e-13);

struct PadeValue {
  cplx value{0.0};
  bool taylor_fallback = false;  // denominator degenerate, Taylor sum used
  bool near_pole = false;        // |q(delta)| small relative to its terms
};

PadeValue pade_eval(const PadeApprox& pa, cplx delta, double pole_tol = 1e-6);
PadeValue pade_value(std::span<const cplx> c, int L, int M, cplx delta);

}  // namespace hope
