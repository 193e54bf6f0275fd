#pragma once

#include <array>
#include <memory>
#include <vector>

#include "hope/capacity.hpp"
#include "hope/types.hpp"
#include "hope/wave_basis.hpp"
#include "hope/zgrid.hpp"

namespace hope {

// Everything a field needs to know about its discretization: the wave setup,
// the quasiperiodic mode lattice, the vertical collocation grid and the
// 3/2-padded physical grid used for products.
class Discretization {
 public:
  static std::shared_ptr<const Discretization> create(const WaveConfig& cfg, int P, int Q,
                                                      const ZGridSpec& zspec,
                                                      double wood_tol = kDefaultWoodTol);

  const WaveConfig& config() const { return cfg_; }
  const ModeGrid& modes() const { return modes_; }
  const ZGrid& z() const { return z_; }
  int Nz() const { return z_.size(); }
  std::size_t num_modes() const { return modes_.num_modes(); }
  std::size_t coeff_size() const { return num_modes() * static_cast<std::size_t>(Nz()); }

  // Padded physical grid: Mx = ceil(3 (2P+1) / 2), likewise My.
  int Mx() const { return Mx_; }
  int My() const { return My_; }
  double x_at(int ix, int nx) const { return cfg_.d_x * ix / nx; }
  double y_at(int iy, int ny) const { return cfg_.d_y * iy / ny; }

 private:
  Discretization(const WaveConfig& cfg, ModeGrid modes, ZGrid z);
  WaveConfig cfg_;
  ModeGrid modes_;
  ZGrid z_;
  int Mx_, My_;
};

using DiscretizationPtr = std::shared_ptr<const Discretization>;

// Scalar field: Fourier coefficient per mode times nodal values in z.
// Flat layout: mode * Nz + iz.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(DiscretizationPtr disc);

  const DiscretizationPtr& disc() const { return disc_; }
  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }
  cplx& at(std::size_t mode, int iz) { return data_[mode * nz_ + iz]; }
  const cplx& at(std::size_t mode, int iz) const { return data_[mode * nz_ + iz]; }

 private:
  DiscretizationPtr disc_;
  std::size_t nz_ = 0;
  std::vector<cplx> data_;
};

// One vector field E: three components, each Fourier in (x, y) per
// quasiperiodic mode (the u-hat_{p,q}) and nodal in z.
class VectorFieldCoeffs {
 public:
  VectorFieldCoeffs() = default;
  explicit VectorFieldCoeffs(DiscretizationPtr disc);

  const DiscretizationPtr& disc() const { return disc_; }
  bool compatible(const VectorFieldCoeffs& other) const;

  std::vector<cplx>& comp(int c) { return comps_[c]; }
  const std::vector<cplx>& comp(int c) const { return comps_[c]; }
  cplx& at(int c, std::size_t mode, int iz) { return comps_[c][mode * nz_ + iz]; }
  const cplx& at(int c, std::size_t mode, int iz) const { return comps_[c][mode * nz_ + iz]; }

  VectorFieldCoeffs& operator+=(const VectorFieldCoeffs& o);
  VectorFieldCoeffs& operator-=(const VectorFieldCoeffs& o);
  VectorFieldCoeffs& operator*=(cplx s);
  // this += s * o
  VectorFieldCoeffs& axpy(cplx s, const VectorFieldCoeffs& o);

  double max_abs() const;

 private:
  DiscretizationPtr disc_;
  std::size_t nz_ = 0;
  std::array<std::vector<cplx>, 3> comps_;
};

VectorFieldCoeffs operator+(VectorFieldCoeffs a, const VectorFieldCoeffs& b);
VectorFieldCoeffs operator-(VectorFieldCoeffs a, const VectorFieldCoeffs& b);
VectorFieldCoeffs operator*(cplx s, VectorFieldCoeffs a);

// Physical samples on an nx x ny grid over one period cell, all z nodes.
// Flat layout: (ix * ny + iy) * Nz + iz.
struct PhysicalScalar {
  int nx = 0, ny = 0, nz = 0;
  std::vector<cplx> values;
};

struct PhysicalVector {
  int nx = 0, ny = 0, nz = 0;
  std::array<std::vector<cplx>, 3> comps;
};

// Transforms include the quasiperiodic phase exp(i alpha x + i beta y), so the
// stored coefficients are the u-hat_{p,q}. Requires nx >= 2P+1, ny >= 2Q+1.
PhysicalScalar to_physical(const ScalarField& f, int nx, int ny);
ScalarField from_physical(const PhysicalScalar& s, const DiscretizationPtr& disc);
PhysicalVector to_physical(const VectorFieldCoeffs& f, int nx, int ny);
VectorFieldCoeffs from_physical(const PhysicalVector& s, const DiscretizationPtr& disc);

// Periodic (no phase) forward transform of real samples on an nx x ny grid,
// truncated to the lattice and resampled on the padded grid. Used to build
// band-limited multipliers for products.
std::vector<double> band_limit(const std::vector<double>& samples, int nx, int ny, int nz,
                               const Discretization& disc);

// Dealiased product m(x,y,z) * f where m is a real multiplier sampled on the
// padded (Mx, My) grid. The result keeps the retained modes only.
VectorFieldCoeffs multiply(const std::vector<double>& multiplier, const VectorFieldCoeffs& f);
ScalarField multiply(const std::vector<double>& multiplier, const ScalarField& f);

// Spectral differential operators: x and y by (i alpha_p, i beta_q), z by the
// collocation matrix.
VectorFieldCoeffs curl_of(const VectorFieldCoeffs& f);
ScalarField div_of(const VectorFieldCoeffs& f);
VectorFieldCoeffs grad_of(const ScalarField& s);
VectorFieldCoeffs dz_of(const VectorFieldCoeffs& f);
ScalarField dz_of(const ScalarField& s);

// Tangential (x, y) trace at a face.
TangentialTrace tangential_trace(const VectorFieldCoeffs& f, Face face);

// Physical-space values of one mode sum at a point (x, y, z node).
Vec3c evaluate_at(const VectorFieldCoeffs& f, double x, double y, int iz);

// Coefficient field of the incident plane wave on every z node.
VectorFieldCoeffs incident_field(const DiscretizationPtr& disc);

}  // namespace hope
