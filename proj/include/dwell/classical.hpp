#pragma once

#include <span>
#include <vector>

#include "dwell/coherent.hpp"
#include "dwell/model.hpp"

namespace dwell {

/// Snapshot of the classical label flow.  `energies0` caches the on-slice
/// symbol values at construction; the flow conserves them.
struct TrajectorySet {
  double t = 0.0;
  std::vector<cplx> labels;
  std::vector<double> energies0;
};

TrajectorySet make_trajectory_set(std::vector<cplx> labels,
                                  const HamiltonianSymbol& h);

/// dz/dt = -i dH/dzc evaluated at (conj(z), z); Hamilton's equations in
/// complex form.
cplx eom_rhs(cplx z, const HamiltonianSymbol& h);

/// In-place classical RK4 step for a batch of independent labels.
void rk4_label_step(std::span<cplx> labels, const HamiltonianSymbol& h,
                    double dt, Exec exec = Exec::parallel);

/// One RK4 step of the whole set (value semantics).
TrajectorySet step(const TrajectorySet& set, double dt,
                   const HamiltonianSymbol& h, Exec exec = Exec::parallel);

/// n_steps of RK4; returns the snapshots at every `snapshot_stride` steps
/// (the initial set included, the final step always included).
std::vector<TrajectorySet> propagate(const TrajectorySet& set, double dt,
                                     long n_steps,
                                     const HamiltonianSymbol& h,
                                     long snapshot_stride = 1,
                                     Exec exec = Exec::parallel);

}  // namespace dwell
