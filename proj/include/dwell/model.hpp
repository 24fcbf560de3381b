#pragma once

#include <complex>
#include <vector>

namespace dwell {

using cplx = std::complex<double>;

/// Quartic double well V(q) = -(a/2) q^2 + (b/4) q^4 + E_B with unit well
/// curvature and barrier height D: a = 1/2, b = 1/(16 D), E_B = a^2/(4b) = D.
/// Units are dimensionless (hbar = m = omega = 1).
struct WellParams {
  double D = 1.0;

  double a() const { return 0.5; }
  double b() const { return 1.0 / (16.0 * D); }
  double barrier() const { return D; }  // E_B
};

/// Closed-form features of the plain and normal-ordered potentials.
/// All entries are functions of D alone; q values are the positive branch
/// (the potentials are even in q).
struct Landmarks {
  double q_min_plain;               // sqrt(8 D)
  double q_min_ordered;             // sqrt(8 D - 3/2)
  double barrier_plain;             // D
  double v_ord_at_zero;             // D + 1/8 + 3/(256 D)
  double v_ord_at_min;              // 1/2 - 6/(256 D)
  double barrier_ordered;           // D - 3/8 + 9/(256 D)
  double separatrix_energy_ordered; // H_ord at the hyperbolic point (0,0)
};

double potential_plain(double q, const WellParams& w);
double potential_ordered(double q, const WellParams& w);
Landmarks landmarks(const WellParams& w);

/// Value of the normal-ordered classical Hamiltonian as a holomorphic
/// polynomial in the two independent arguments zc (the z* slot) and z.
/// On the physical slice zc == conj(z) the value is real and equals
/// p^2/2 + V_ord(q) - D (the additive constant E_B is not part of the
/// normal-ordered symbol).
cplx h_ord(cplx zc, cplx z, const WellParams& w);

struct GradPair {
  cplx d_zc;  // dH/d(zc)
  cplx d_z;   // dH/dz
};

GradPair grad_h_ord(cplx zc, cplx z, const WellParams& w);

/// Holomorphic Hamiltonian symbol H(zc, z).  The coherent-state propagation
/// machinery is written against this interface so that test Hamiltonians
/// (harmonic well, constant-shifted well) run through the same code path.
class HamiltonianSymbol {
 public:
  virtual ~HamiltonianSymbol() = default;
  virtual cplx value(cplx zc, cplx z) const = 0;
  virtual GradPair grad(cplx zc, cplx z) const = 0;
};

/// Normal-ordered quartic double well.  `energy_shift` adds a real constant
/// to the symbol; trajectories are unaffected and coefficients pick up a
/// global phase only.
class OrderedDoubleWell final : public HamiltonianSymbol {
 public:
  explicit OrderedDoubleWell(WellParams w, double energy_shift = 0.0)
      : params_(w), shift_(energy_shift) {}

  cplx value(cplx zc, cplx z) const override {
    return h_ord(zc, z, params_) + shift_;
  }
  GradPair grad(cplx zc, cplx z) const override {
    return grad_h_ord(zc, z, params_);
  }
  const WellParams& params() const { return params_; }

 private:
  WellParams params_;
  double shift_;
};

/// omega = 1 harmonic oscillator, normal-ordered symbol zc z + 1/2.
/// Test workload with known analytic dynamics.
class HarmonicWell final : public HamiltonianSymbol {
 public:
  cplx value(cplx zc, cplx z) const override { return zc * z + 0.5; }
  GradPair grad(cplx zc, cplx z) const override { return {z, zc}; }
};

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// Points on the separatrix (the barrier-energy level set), traced by
/// sweeping q across the support and solving p(q) from the energy condition.
/// Both momentum branches are emitted per admissible q, so the result holds
/// up to 2n points.  Intended for plot-data output.
std::vector<PhasePoint> separatrix_points(bool ordered, const WellParams& w,
                                          int n);

}  // namespace dwell
