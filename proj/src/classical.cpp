#include "dwell/classical.hpp"

#include "dwell/errors.hpp"

namespace dwell {

namespace {
inline cplx rhs(cplx z, const HamiltonianSymbol& h) {
  return cplx(0.0, -1.0) * h.grad(std::conj(z), z).d_zc;
}

inline cplx rk4_one(cplx z, const HamiltonianSymbol& h, double dt) {
  const cplx k1 = rhs(z, h);
  const cplx k2 = rhs(z + 0.5 * dt * k1, h);
  const cplx k3 = rhs(z + 0.5 * dt * k2, h);
  const cplx k4 = rhs(z + dt * k3, h);
  return z + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}
}  // namespace

TrajectorySet make_trajectory_set(std::vector<cplx> labels,
                                  const HamiltonianSymbol& h) {
  TrajectorySet set;
  set.labels = std::move(labels);
  set.energies0.reserve(set.labels.size());
  for (cplx z : set.labels)
    set.energies0.push_back(h.value(std::conj(z), z).real());
  return set;
}

cplx eom_rhs(cplx z, const HamiltonianSymbol& h) { return rhs(z, h); }

void rk4_label_step(std::span<cplx> labels, const HamiltonianSymbol& h,
                    double dt, Exec exec) {
  const auto m = static_cast<long>(labels.size());
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par)
  for (long i = 0; i < m; ++i) labels[i] = rk4_one(labels[i], h, dt);
}

TrajectorySet step(const TrajectorySet& set, double dt,
                   const HamiltonianSymbol& h, Exec exec) {
  if (!(dt != 0.0)) throw ConfigError("step: dt must be nonzero");
  TrajectorySet next = set;
  rk4_label_step(next.labels, h, dt, exec);
  next.t += dt;
  return next;
}

std::vector<TrajectorySet> propagate(const TrajectorySet& set, double dt,
                                     long n_steps,
                                     const HamiltonianSymbol& h,
                                     long snapshot_stride, Exec exec) {
  if (!(dt != 0.0)) throw ConfigError("propagate: dt must be nonzero");
  if (n_steps < 1) throw ConfigError("propagate: n_steps must be >= 1");
  if (snapshot_stride < 1) snapshot_stride = 1;

  std::vector<TrajectorySet> out;
  out.reserve(static_cast<std::size_t>(n_steps / snapshot_stride) + 2);
  out.push_back(set);
  TrajectorySet cur = set;
  for (long i = 1; i <= n_steps; ++i) {
    rk4_label_step(cur.labels, h, dt, exec);
    cur.t = set.t + i * dt;
    if (i % snapshot_stride == 0 || i == n_steps) out.push_back(cur);
  }
  return out;
}

}  // namespace dwell
