#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "dwell/coherent.hpp"
#include "dwell/model.hpp"

namespace dwell {

/// Variational wavepacket state: |Psi(t)> = sum_l a_l(t) |z_l(t)>.
struct CCSState {
  double t = 0.0;
  std::vector<cplx> labels;
  std::vector<cplx> coeffs;
};

/// Delta-start: a[occupied] = 1, all other coefficients zero, so the initial
/// wavepacket is exactly the occupied basis state.
CCSState initial_state(std::vector<cplx> labels, std::size_t occupied);

/// Gram matrix and coupling matrix for a label configuration (see
/// assemble_matrices for the zdot substitution).
void assemble(std::span<const cplx> labels, const HamiltonianSymbol& h,
              Eigen::MatrixXcd& omega, Eigen::MatrixXcd& ht,
              Exec exec = Exec::parallel, std::span<const cplx> zdot = {});

/// Coefficient derivative: solves (Omega + eps I) adot = -i Ht a.
/// The solve is a Cholesky factorization of the regularized Gram matrix;
/// failure throws NumericalError with a conditioning diagnostic.
Eigen::VectorXcd coeff_rhs(const Eigen::MatrixXcd& omega,
                           const Eigen::MatrixXcd& ht,
                           const Eigen::VectorXcd& a, double eps);
std::vector<cplx> coeff_rhs(const CCSState& state,
                            const HamiltonianSymbol& h, double eps = 1e-8);

/// Physical norm <Psi|Psi> = a^dagger Omega a.
double norm(const CCSState& state);

/// c(t) = <beta|Psi(t)> = sum_l a_l <beta|z_l>.
cplx cross_correlation(const CCSState& state, cplx beta);

struct CCSOptions {
  double dt = 1e-3;
  long n_steps = 0;
  double eps = 1e-8;           // Gram regularization
  long snapshot_stride = 100;
  double norm_abort_fraction = 0.10;  // abort when |N - N0| exceeds this
  bool substitute_eom_derivatives = false;
  Exec exec = Exec::parallel;
};

/// Joint propagation of labels (classical RK4) and coefficients (RK4 on the
/// coupled linear system), re-assembling the matrices at every internal
/// stage position.  Snapshots are collected on the stride; the final state
/// is always included.  Norm blow-up beyond the abort fraction throws
/// NumericalError.
std::vector<CCSState> propagate_ccs(const CCSState& initial,
                                    const HamiltonianSymbol& h,
                                    const CCSOptions& opt);

/// Observer variant: invoked at t = 0, every stride, and at the last step.
void propagate_ccs(const CCSState& initial, const HamiltonianSymbol& h,
                   const CCSOptions& opt,
                   const std::function<void(const CCSState&)>& on_snapshot);

}  // namespace dwell
