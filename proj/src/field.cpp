#include "hope/field.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "hope/errors.hpp"

namespace hope {

// ---------------------------------------------------------------------------
// Discretization

Discretization::Discretization(const WaveConfig& cfg, ModeGrid modes, ZGrid z)
    : cfg_(cfg),
      modes_(std::move(modes)),
      z_(std::move(z)),
      Mx_((3 * modes_.num_p() + 1) / 2),
      My_((3 * modes_.num_q() + 1) / 2) {}

std::shared_ptr<const Discretization> Discretization::create(const WaveConfig& cfg, int P,
                                                             int Q, const ZGridSpec& zspec,
                                                             double wood_tol) {
  ModeGrid modes = build_mode_grid(cfg, P, Q, wood_tol);
  ZGrid z(cfg.h, zspec);
  return std::shared_ptr<const Discretization>(
      new Discretization(cfg, std::move(modes), std::move(z)));
}

// ---------------------------------------------------------------------------
// Containers

ScalarField::ScalarField(DiscretizationPtr disc)
    : disc_(std::move(disc)),
      nz_(static_cast<std::size_t>(disc_->Nz())),
      data_(disc_->coeff_size()) {}

VectorFieldCoeffs::VectorFieldCoeffs(DiscretizationPtr disc)
    : disc_(std::move(disc)), nz_(static_cast<std::size_t>(disc_->Nz())) {
  for (auto& c : comps_) c.assign(disc_->coeff_size(), cplx{});
}

bool VectorFieldCoeffs::compatible(const VectorFieldCoeffs& other) const {
  if (!disc_ || !other.disc_) return false;
  if (disc_ == other.disc_) return true;
  return disc_->num_modes() == other.disc_->num_modes() && disc_->Nz() == other.disc_->Nz();
}

namespace {

void require_compatible(const VectorFieldCoeffs& a, const VectorFieldCoeffs& b) {
  if (!a.compatible(b)) throw ConfigError("field shapes do not match");
}

}  // namespace

VectorFieldCoeffs& VectorFieldCoeffs::operator+=(const VectorFieldCoeffs& o) {
  require_compatible(*this, o);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < comps_[c].size(); ++i) comps_[c][i] += o.comps_[c][i];
  return *this;
}

VectorFieldCoeffs& VectorFieldCoeffs::operator-=(const VectorFieldCoeffs& o) {
  require_compatible(*this, o);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < comps_[c].size(); ++i) comps_[c][i] -= o.comps_[c][i];
  return *this;
}

VectorFieldCoeffs& VectorFieldCoeffs::operator*=(cplx s) {
  for (auto& comp : comps_)
    for (auto& v : comp) v *= s;
  return *this;
}

VectorFieldCoeffs& VectorFieldCoeffs::axpy(cplx s, const VectorFieldCoeffs& o) {
  require_compatible(*this, o);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < comps_[c].size(); ++i) comps_[c][i] += s * o.comps_[c][i];
  return *this;
}

double VectorFieldCoeffs::max_abs() const {
  double m = 0.0;
  for (const auto& comp : comps_)
    for (const auto& v : comp) m = std::max(m, std::abs(v));
  return m;
}

VectorFieldCoeffs operator+(VectorFieldCoeffs a, const VectorFieldCoeffs& b) { return a += b; }
VectorFieldCoeffs operator-(VectorFieldCoeffs a, const VectorFieldCoeffs& b) { return a -= b; }
VectorFieldCoeffs operator*(cplx s, VectorFieldCoeffs a) { return a *= s; }

// ---------------------------------------------------------------------------
// FFT plumbing

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place batched 2D DFT over (nx, ny) with nz interleaved transforms.
void fft2_batched(std::vector<cplx>& buf, int nx, int ny, int nz, int sign) {
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    const int n[2] = {nx, ny};
    plan = fftw_plan_many_dft(2, n, nz, data, nullptr, nz, 1, data, nullptr, nz, 1, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

void check_physical_dims(const Discretization& d, int nx, int ny) {
  if (nx < d.modes().num_p() || ny < d.modes().num_q())
    throw ConfigError("physical grid too coarse for the mode lattice");
}

std::vector<cplx> spectral_to_physical(const std::vector<cplx>& coeffs, const Discretization& d,
                                       int nx, int ny, bool phase) {
  check_physical_dims(d, nx, ny);
  const int nz = d.Nz();
  const ModeGrid& g = d.modes();
  std::vector<cplx> buf(static_cast<std::size_t>(nx) * ny * nz);
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const int ix = wrap(g.p_of(m), nx);
    const int iy = wrap(g.q_of(m), ny);
    const std::size_t base = (static_cast<std::size_t>(ix) * ny + iy) * nz;
    for (int iz = 0; iz < nz; ++iz) buf[base + iz] = coeffs[m * nz + iz];
  }
  fft2_batched(buf, nx, ny, nz, FFTW_BACKWARD);
  if (phase) {
    const WaveConfig& cfg = d.config();
    for (int ix = 0; ix < nx; ++ix) {
      for (int iy = 0; iy < ny; ++iy) {
        const cplx ph =
            std::exp(kI * (cfg.alpha() * d.x_at(ix, nx) + cfg.beta() * d.y_at(iy, ny)));
        const std::size_t base = (static_cast<std::size_t>(ix) * ny + iy) * nz;
        for (int iz = 0; iz < nz; ++iz) buf[base + iz] *= ph;
      }
    }
  }
  return buf;
}

std::vector<cplx> physical_to_spectral(std::vector<cplx> buf, const Discretization& d, int nx,
                                       int ny, bool phase) {
  check_physical_dims(d, nx, ny);
  const int nz = d.Nz();
  if (buf.size() != static_cast<std::size_t>(nx) * ny * nz)
    throw ConfigError("physical sample array has the wrong size");
  if (phase) {
    const WaveConfig& cfg = d.config();
    for (int ix = 0; ix < nx; ++ix) {
      for (int iy = 0; iy < ny; ++iy) {
        const cplx ph =
            std::exp(-kI * (cfg.alpha() * d.x_at(ix, nx) + cfg.beta() * d.y_at(iy, ny)));
        const std::size_t base = (static_cast<std::size_t>(ix) * ny + iy) * nz;
        for (int iz = 0; iz < nz; ++iz) buf[base + iz] *= ph;
      }
    }
  }
  fft2_batched(buf, nx, ny, nz, FFTW_FORWARD);
  const double scale = 1.0 / (static_cast<double>(nx) * ny);
  const ModeGrid& g = d.modes();
  std::vector<cplx> coeffs(d.coeff_size());
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const int ix = wrap(g.p_of(m), nx);
    const int iy = wrap(g.q_of(m), ny);
    const std::size_t base = (static_cast<std::size_t>(ix) * ny + iy) * nz;
    for (int iz = 0; iz < nz; ++iz) coeffs[m * nz + iz] = buf[base + iz] * scale;
  }
  return coeffs;
}

}  // namespace

PhysicalScalar to_physical(const ScalarField& f, int nx, int ny) {
  const Discretization& d = *f.disc();
  return {nx, ny, d.Nz(), spectral_to_physical(f.data(), d, nx, ny, true)};
}

ScalarField from_physical(const PhysicalScalar& s, const DiscretizationPtr& disc) {
  if (s.nz != disc->Nz()) throw ConfigError("z resolution mismatch");
  ScalarField f(disc);
  f.data() = physical_to_spectral(s.values, *disc, s.nx, s.ny, true);
  return f;
}

PhysicalVector to_physical(const VectorFieldCoeffs& f, int nx, int ny) {
  const Discretization& d = *f.disc();
  PhysicalVector out{nx, ny, d.Nz(), {}};
  for (int c = 0; c < 3; ++c) out.comps[c] = spectral_to_physical(f.comp(c), d, nx, ny, true);
  return out;
}

VectorFieldCoeffs from_physical(const PhysicalVector& s, const DiscretizationPtr& disc) {
  if (s.nz != disc->Nz()) throw ConfigError("z resolution mismatch");
  VectorFieldCoeffs f(disc);
  for (int c = 0; c < 3; ++c)
    f.comp(c) = physical_to_spectral(s.comps[c], *disc, s.nx, s.ny, true);
  return f;
}

std::vector<double> band_limit(const std::vector<double>& samples, int nx, int ny, int nz,
                               const Discretization& disc) {
  if (nz != disc.Nz()) throw ConfigError("z resolution mismatch");
  std::vector<cplx> buf(samples.begin(), samples.end());
  const auto coeffs = physical_to_spectral(std::move(buf), disc, nx, ny, false);
  const auto phys = spectral_to_physical(coeffs, disc, disc.Mx(), disc.My(), false);
  std::vector<double> out(phys.size());
  for (std::size_t i = 0; i < phys.size(); ++i) out[i] = phys[i].real();
  return out;
}

VectorFieldCoeffs multiply(const std::vector<double>& multiplier, const VectorFieldCoeffs& f) {
  const Discretization& d = *f.disc();
  const int mx = d.Mx(), my = d.My();
  if (multiplier.size() != static_cast<std::size_t>(mx) * my * d.Nz())
    throw ConfigError("multiplier is not sampled on the padded grid");
  VectorFieldCoeffs out(f.disc());
  for (int c = 0; c < 3; ++c) {
    auto phys = spectral_to_physical(f.comp(c), d, mx, my, false);
    for (std::size_t i = 0; i < phys.size(); ++i) phys[i] *= multiplier[i];
    out.comp(c) = physical_to_spectral(std::move(phys), d, mx, my, false);
  }
  return out;
}

ScalarField multiply(const std::vector<double>& multiplier, const ScalarField& f) {
  const Discretization& d = *f.disc();
  const int mx = d.Mx(), my = d.My();
  if (multiplier.size() != static_cast<std::size_t>(mx) * my * d.Nz())
    throw ConfigError("multiplier is not sampled on the padded grid");
  auto phys = spectral_to_physical(f.data(), d, mx, my, false);
  for (std::size_t i = 0; i < phys.size(); ++i) phys[i] *= multiplier[i];
  ScalarField out(f.disc());
  out.data() = physical_to_spectral(std::move(phys), d, mx, my, false);
  return out;
}

// ---------------------------------------------------------------------------
// Differential operators

namespace {

void apply_dz(const Discretization& d, const std::vector<cplx>& in, std::vector<cplx>& out) {
  const int nz = d.Nz();
  const auto nm = static_cast<Eigen::Index>(d.num_modes());
  Eigen::Map<const Eigen::MatrixXcd> src(in.data(), nz, nm);
  Eigen::Map<Eigen::MatrixXcd> dst(out.data(), nz, nm);
  const Eigen::MatrixXd& D = d.z().D();
  Eigen::MatrixXd re = src.real();
  Eigen::MatrixXd im = src.imag();
  Eigen::MatrixXd dre = D * re;
  Eigen::MatrixXd dim = D * im;
  dst.real() = dre;
  dst.imag() = dim;
}

}  // namespace

VectorFieldCoeffs dz_of(const VectorFieldCoeffs& f) {
  VectorFieldCoeffs out(f.disc());
  for (int c = 0; c < 3; ++c) apply_dz(*f.disc(), f.comp(c), out.comp(c));
  return out;
}

ScalarField dz_of(const ScalarField& s) {
  ScalarField out(s.disc());
  apply_dz(*s.disc(), s.data(), out.data());
  return out;
}

VectorFieldCoeffs curl_of(const VectorFieldCoeffs& f) {
  const Discretization& d = *f.disc();
  const ModeGrid& g = d.modes();
  const int nz = d.Nz();
  const VectorFieldCoeffs fz = dz_of(f);
  VectorFieldCoeffs out(f.disc());
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const cplx ia = kI * g.alpha_of(m);
    const cplx ib = kI * g.beta_of(m);
    for (int iz = 0; iz < nz; ++iz) {
      out.at(0, m, iz) = ib * f.at(2, m, iz) - fz.at(1, m, iz);
      out.at(1, m, iz) = fz.at(0, m, iz) - ia * f.at(2, m, iz);
      out.at(2, m, iz) = ia * f.at(1, m, iz) - ib * f.at(0, m, iz);
    }
  }
  return out;
}

ScalarField div_of(const VectorFieldCoeffs& f) {
  const Discretization& d = *f.disc();
  const ModeGrid& g = d.modes();
  const int nz = d.Nz();
  ScalarField dzz(f.disc());
  apply_dz(d, f.comp(2), dzz.data());
  ScalarField out(f.disc());
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const cplx ia = kI * g.alpha_of(m);
    const cplx ib = kI * g.beta_of(m);
    for (int iz = 0; iz < nz; ++iz)
      out.at(m, iz) = ia * f.at(0, m, iz) + ib * f.at(1, m, iz) + dzz.at(m, iz);
  }
  return out;
}

VectorFieldCoeffs grad_of(const ScalarField& s) {
  const Discretization& d = *s.disc();
  const ModeGrid& g = d.modes();
  const int nz = d.Nz();
  const ScalarField sz = dz_of(s);
  VectorFieldCoeffs out(s.disc());
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const cplx ia = kI * g.alpha_of(m);
    const cplx ib = kI * g.beta_of(m);
    for (int iz = 0; iz < nz; ++iz) {
      out.at(0, m, iz) = ia * s.at(m, iz);
      out.at(1, m, iz) = ib * s.at(m, iz);
      out.at(2, m, iz) = sz.at(m, iz);
    }
  }
  return out;
}

TangentialTrace tangential_trace(const VectorFieldCoeffs& f, Face face) {
  const Discretization& d = *f.disc();
  TangentialTrace t = TangentialTrace::zero(face, d.modes());
  const int iz = face == Face::upper ? d.Nz() - 1 : 0;
  for (std::size_t m = 0; m < d.num_modes(); ++m) t.coeffs[m] = {f.at(0, m, iz), f.at(1, m, iz)};
  return t;
}

Vec3c evaluate_at(const VectorFieldCoeffs& f, double x, double y, int iz) {
  const ModeGrid& g = f.disc()->modes();
  Vec3c v{};
  for (std::size_t m = 0; m < g.num_modes(); ++m) {
    const cplx ph = std::exp(kI * (g.alpha_of(m) * x + g.beta_of(m) * y));
    for (int c = 0; c < 3; ++c) v[c] += f.at(c, m, iz) * ph;
  }
  return v;
}

VectorFieldCoeffs incident_field(const DiscretizationPtr& disc) {
  VectorFieldCoeffs e(disc);
  const WaveConfig& cfg = disc->config();
  const std::size_t m0 = disc->modes().index(0, 0);
  const auto& z = disc->z().nodes();
  for (int iz = 0; iz < disc->Nz(); ++iz) {
    const cplx ph = std::exp(-kI * cfg.gamma_inc() * z[iz]);
    for (int c = 0; c < 3; ++c) e.at(c, m0, iz) = cfg.A[c] * ph;
  }
  return e;
}

}  // namespace hope
