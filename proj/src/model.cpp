#include "dwell/model.hpp"

#include <cmath>

#include "dwell/errors.hpp"

namespace dwell {

double potential_plain(double q, const WellParams& w) {
  const double q2 = q * q;
  return -0.5 * w.a() * q2 + 0.25 * w.b() * q2 * q2 + w.barrier();
}

double potential_ordered(double q, const WellParams& w) {
  const double q2 = q * q;
  return w.D - 0.25 * (q2 - 0.5) +
         (q2 * q2 + 3.0 * q2 + 0.75) / (64.0 * w.D);
}

cplx h_ord(cplx zc, cplx z, const WellParams& w) {
  const cplx s = zc + z;
  const cplx d = zc - z;
  const cplx s2 = s * s;
  return -0.25 * (d * d - 1.0) - 0.125 * (s2 + 1.0) +
         (s2 * s2 + 6.0 * s2 + 3.0) / (256.0 * w.D);
}

GradPair grad_h_ord(cplx zc, cplx z, const WellParams& w) {
  const cplx s = zc + z;
  const cplx d = zc - z;
  // common part from the even-in-d terms
  const cplx ds = -0.25 * s + (4.0 * s * s * s + 12.0 * s) / (256.0 * w.D);
  return {-0.5 * d + ds, 0.5 * d + ds};
}

Landmarks landmarks(const WellParams& w) {
  if (!(w.D > 0.0)) throw ConfigError("well barrier height D must be > 0");
  Landmarks lm;
  lm.q_min_plain = std::sqrt(8.0 * w.D);
  lm.q_min_ordered = std::sqrt(8.0 * w.D - 1.5);
  lm.barrier_plain = w.D;
  lm.v_ord_at_zero = w.D + 0.125 + 3.0 / (256.0 * w.D);
  lm.v_ord_at_min = 0.5 - 6.0 / (256.0 * w.D);
  lm.barrier_ordered = w.D - 0.375 + 9.0 / (256.0 * w.D);
  lm.separatrix_energy_ordered = h_ord(0.0, 0.0, w).real();
  return lm;
}

std::vector<PhasePoint> separatrix_points(bool ordered, const WellParams& w,
                                          int n) {
  const Landmarks lm = landmarks(w);
  // q support of the level set: where the potential part stays below the
  // barrier energy.  Plain: V(q) = E_B at q = +-4 sqrt(D).  Ordered:
  // V_ord(q) = V_ord(0) at q = +-sqrt(16 D - 3).
  const double q_max =
      ordered ? std::sqrt(16.0 * w.D - 3.0) : 4.0 * std::sqrt(w.D);
  std::vector<PhasePoint> pts;
  pts.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double q = -q_max + 2.0 * q_max * i / (n - 1);
    // p^2/2 = E - V(q), with both sides in the same offset convention
    const double gap = ordered
                           ? lm.separatrix_energy_ordered -
                                 (potential_ordered(q, w) - w.D)
                           : w.D - potential_plain(q, w);
    double disc = 2.0 * gap;
    if (disc < 0.0) {
      if (disc < -1e-12) continue;  // outside the support
      disc = 0.0;                   // endpoint roundoff
    }
    const double p = std::sqrt(disc);
    pts.push_back({q, p});
    if (p > 0.0) pts.push_back({q, -p});
  }
  return pts;
}

}  // namespace dwell
