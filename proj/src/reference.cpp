#include "dwell/reference.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dwell/coherent.hpp"
#include "dwell/errors.hpp"

namespace dwell {

namespace {
double potential_value(double x, PotentialKind kind, const WellParams& w) {
  switch (kind) {
    case PotentialKind::plain: return potential_plain(x, w);
    case PotentialKind::ordered: return potential_ordered(x, w);
    case PotentialKind::harmonic: return 0.5 * x * x;
    case PotentialKind::free_particle: return 0.0;
  }
  return 0.0;
}

double grid_norm(const std::vector<cplx>& psi, double dx) {
  double s = 0.0;
  for (const cplx& v : psi) s += std::norm(v);
  return s * dx;
}

void validate_grid(const SpatialGrid& g) {
  if (!(g.L > 0.0)) throw ConfigError("spatial grid: L must be > 0");
  if (g.N < 2 || (g.N & (g.N - 1)) != 0)
    throw ConfigError("spatial grid: N must be a power of two >= 2");
}
}  // namespace

ReferenceState init_gaussian(double q, double p, SpatialGrid grid) {
  validate_grid(grid);
  const cplx z = label_from_qp(q, p);
  const double tail = std::pow(std::numbers::pi, -0.25) *
                      std::exp(-0.5 * std::pow(grid.L - std::abs(q), 2.0));
  if (tail > 1e-12) {
    std::ostringstream msg;
    msg << "init_gaussian: tail at the grid edge is " << tail
        << " (> 1e-12); enlarge L";
    throw NumericalError(msg.str());
  }
  ReferenceState s;
  s.grid = grid;
  s.psi.resize(grid.N);
  for (int j = 0; j < grid.N; ++j)
    s.psi[j] = position_amplitude(grid.x(j), z);
  const double n = std::sqrt(grid_norm(s.psi, grid.dx()));
  for (cplx& v : s.psi) v /= n;
  return s;
}

cplx grid_inner(const ReferenceState& a, const ReferenceState& b) {
  cplx s(0.0, 0.0);
  for (int j = 0; j < a.grid.N; ++j) s += std::conj(a.psi[j]) * b.psi[j];
  return s * a.grid.dx();
}

struct SplitPropagator::Impl {
  std::vector<double> v;        // potential on the grid
  std::vector<double> k2half;   // k^2/2
  std::vector<cplx> buf;
  fftw_plan fwd = nullptr, bwd = nullptr;

  mutable double cached_dt = 0.0;
  mutable bool cached_imag = false;
  mutable bool cache_valid = false;
  mutable std::vector<cplx> kin_half, pot_full;

  void rebuild_phases(double dt, bool imag) const {
    const std::size_t n = v.size();
    kin_half.resize(n);
    pot_full.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (imag) {
        kin_half[j] = std::exp(-0.5 * k2half[j] * dt);
        pot_full[j] = std::exp(-v[j] * dt);
      } else {
        kin_half[j] = std::exp(cplx(0.0, -0.5 * k2half[j] * dt));
        pot_full[j] = std::exp(cplx(0.0, -v[j] * dt));
      }
    }
    cached_dt = dt;
    cached_imag = imag;
    cache_valid = true;
  }

  // half kinetic, full potential, half kinetic; FFT normalization folded
  // into the second inverse transform
  void strang(std::vector<cplx>& psi, double dt, bool imag) const {
    if (!cache_valid || dt != cached_dt || imag != cached_imag)
      rebuild_phases(dt, imag);
    const std::size_t n = psi.size();
    const double inv_n = 1.0 / static_cast<double>(n);

    auto* in = reinterpret_cast<fftw_complex*>(buf.data());
    std::copy(psi.begin(), psi.end(), buf.begin());
    fftw_execute_dft(fwd, in, in);
    for (std::size_t j = 0; j < n; ++j) buf[j] *= kin_half[j] * inv_n;
    fftw_execute_dft(bwd, in, in);
    for (std::size_t j = 0; j < n; ++j) buf[j] *= pot_full[j];
    fftw_execute_dft(fwd, in, in);
    for (std::size_t j = 0; j < n; ++j) buf[j] *= kin_half[j] * inv_n;
    fftw_execute_dft(bwd, in, in);
    std::copy(buf.begin(), buf.end(), psi.begin());
  }
};

SplitPropagator::SplitPropagator(SpatialGrid grid, PotentialKind kind,
                                 WellParams params)
    : impl_(std::make_unique<Impl>()), grid_(grid) {
  validate_grid(grid);
  const int n = grid.N;
  impl_->v.resize(n);
  impl_->k2half.resize(n);
  const double dk = std::numbers::pi / grid.L;  // 2*pi / (2L)
  for (int j = 0; j < n; ++j) {
    impl_->v[j] = potential_value(grid.x(j), kind, params);
    const int m = j < n / 2 ? j : j - n;  // FFT frequency ordering
    const double k = m * dk;
    impl_->k2half[j] = 0.5 * k * k;
  }
  impl_->buf.resize(n);
  auto* b = reinterpret_cast<fftw_complex*>(impl_->buf.data());
  impl_->fwd = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

SplitPropagator::~SplitPropagator() {
  if (impl_) {
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->bwd);
  }
}

void SplitPropagator::step(ReferenceState& s, double dt) const {
  impl_->strang(s.psi, dt, /*imag=*/false);
  s.t += dt;
}

void SplitPropagator::step_imaginary(ReferenceState& s, double dtau) const {
  impl_->strang(s.psi, dtau, /*imag=*/true);
  const double n = std::sqrt(grid_norm(s.psi, s.grid.dx()));
  for (cplx& v : s.psi) v /= n;
}

double SplitPropagator::energy(const ReferenceState& s) const {
  const std::size_t n = s.psi.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  auto* b = reinterpret_cast<fftw_complex*>(impl_->buf.data());
  std::copy(s.psi.begin(), s.psi.end(), impl_->buf.begin());
  fftw_execute_dft(impl_->fwd, b, b);
  for (std::size_t j = 0; j < n; ++j)
    impl_->buf[j] *= impl_->k2half[j] * inv_n;
  fftw_execute_dft(impl_->bwd, b, b);  // buf = T psi
  cplx e(0.0, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    e += std::conj(s.psi[j]) * (impl_->buf[j] + impl_->v[j] * s.psi[j]);
  return (e * s.grid.dx()).real();
}

ReferenceState step_split(const ReferenceState& s, double dt,
                          PotentialKind kind, const WellParams& params) {
  SplitPropagator prop(s.grid, kind, params);
  ReferenceState out = s;
  prop.step(out, dt);
  return out;
}

std::vector<cplx> correlation_reference(const ReferenceState& initial,
                                        PhasePoint beta_center,
                                        std::span<const double> times,
                                        double dt, PotentialKind kind,
                                        const WellParams& params) {
  SplitPropagator prop(initial.grid, kind, params);
  const ReferenceState beta =
      init_gaussian(beta_center.q, beta_center.p, initial.grid);
  ReferenceState cur = initial;
  std::vector<cplx> out;
  out.reserve(times.size());
  long step_idx = 0;
  for (double t : times) {
    const long target = std::lround((t - initial.t) / dt);
    if (target < step_idx)
      throw ConfigError("correlation_reference: times must be increasing");
    for (; step_idx < target; ++step_idx) prop.step(cur, dt);
    out.push_back(grid_inner(beta, cur));
  }
  return out;
}

SplittingResult tunneling_splitting(const WellParams& params,
                                    SpatialGrid grid, PotentialKind kind,
                                    RelaxOptions opt) {
  const Landmarks lm = landmarks(params);
  const ReferenceState seed = init_gaussian(lm.q_min_plain, 0.0, grid);
  SplitPropagator prop(grid, kind, params);

  // parity projections; periodic index reversal maps x_j -> -x_j
  const int n = grid.N;
  auto project = [&](double sign) {
    ReferenceState s = seed;
    for (int j = 0; j < n; ++j) {
      const int r = (n - j) % n;
      s.psi[j] = seed.psi[j] + sign * seed.psi[r];
    }
    const double nn = std::sqrt(grid_norm(s.psi, grid.dx()));
    for (cplx& v : s.psi) v /= nn;
    return s;
  };

  auto relax = [&](ReferenceState s, const char* sector) {
    const long steps_per_unit =
        std::max<long>(1, std::lround(1.0 / opt.dtau));
    double e_prev = prop.energy(s);
    for (double tau = 0.0; tau < opt.tau_max; tau += 1.0) {
      for (long i = 0; i < steps_per_unit; ++i)
        prop.step_imaginary(s, opt.dtau);
      const double e = prop.energy(s);
      if (std::abs(e - e_prev) <= opt.rel_tol * std::max(1.0, std::abs(e)))
        return e;
      e_prev = e;
    }
    std::ostringstream msg;
    msg << "tunneling_splitting: " << sector
        << " sector not converged within tau_max=" << opt.tau_max;
    throw NumericalError(msg.str());
  };

  SplittingResult r;
  r.E1 = relax(project(+1.0), "symmetric");
  r.E2 = relax(project(-1.0), "antisymmetric");
  r.Delta = r.E2 - r.E1;
  return r;
}

}  // namespace dwell
