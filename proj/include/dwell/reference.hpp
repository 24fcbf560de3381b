#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dwell/model.hpp"

namespace dwell {

/// Uniform position grid x_j = -L + j (2L/N), j = 0..N-1, periodic.
struct SpatialGrid {
  double L = 10.0;
  int N = 512;  // power of two

  double dx() const { return 2.0 * L / N; }
  double x(int j) const { return -L + j * dx(); }
};

/// Grid wavefunction for the spectral solver.
struct ReferenceState {
  SpatialGrid grid;
  double t = 0.0;
  std::vector<cplx> psi;
};

/// Gaussian matching position_amplitude(x, label_from_qp(q, p)), normalized
/// on the grid.  Throws NumericalError when the tail at the grid edge
/// exceeds 1e-12.
ReferenceState init_gaussian(double q, double p, SpatialGrid grid);

/// Grid inner product <a|b> = sum conj(a_j) b_j dx.
cplx grid_inner(const ReferenceState& a, const ReferenceState& b);

enum class PotentialKind { plain, ordered, harmonic, free_particle };

/// Strang split-operator propagator: half kinetic / full potential / half
/// kinetic per step, kinetic applied in momentum space through the FFT.
/// Owns the FFT plans; the phase tables are rebuilt when dt changes.
class SplitPropagator {
 public:
  SplitPropagator(SpatialGrid grid, PotentialKind kind, WellParams params);
  ~SplitPropagator();
  SplitPropagator(const SplitPropagator&) = delete;
  SplitPropagator& operator=(const SplitPropagator&) = delete;

  void step(ReferenceState& s, double dt) const;
  /// Imaginary-time step (diffusion), renormalizing afterwards.
  void step_imaginary(ReferenceState& s, double dtau) const;
  /// <psi|H|psi> on the grid (kinetic part via FFT).
  double energy(const ReferenceState& s) const;

  const SpatialGrid& grid() const { return grid_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SpatialGrid grid_;
};

/// Single Strang step through a transient propagator (test convenience;
/// loops should reuse a SplitPropagator).
ReferenceState step_split(const ReferenceState& s, double dt,
                          PotentialKind kind, const WellParams& params);

/// <beta|psi(t)> at the requested times (increasing, commensurate with dt).
std::vector<cplx> correlation_reference(const ReferenceState& initial,
                                        PhasePoint beta_center,
                                        std::span<const double> times,
                                        double dt, PotentialKind kind,
                                        const WellParams& params);

struct SplittingResult {
  double E1 = 0.0;     // symmetric ground state
  double E2 = 0.0;     // lowest antisymmetric state
  double Delta = 0.0;  // E2 - E1
};

struct RelaxOptions {
  double dtau = 1e-3;
  double tau_max = 200.0;       // imaginary-time budget
  double rel_tol = 1e-12;       // energy change per unit imaginary time
};

/// Tunneling splitting by symmetry-projected imaginary-time relaxation of
/// the right-well Gaussian.  Throws NumericalError if either parity sector
/// fails to converge within the budget.
SplittingResult tunneling_splitting(const WellParams& params,
                                    SpatialGrid grid,
                                    PotentialKind kind = PotentialKind::plain,
                                    RelaxOptions opt = {});

}  // namespace dwell
