#pragma once

#include <Eigen/Core>
#include <span>

#include "dwell/model.hpp"

namespace dwell {

/// Kernel execution policy.  `parallel` runs the OpenMP path; `serial` is
/// the plain-loop reference implementation kept for testing and benchmarks.
/// Both produce bit-identical results.
enum class Exec { serial, parallel };

/// z = (q + i p)/sqrt(2), hbar = m = omega = 1.
cplx label_from_qp(double q, double p);
PhasePoint qp_from_label(cplx z);

/// <z_k|z_l> = exp(-(|z_k|^2 + |z_l|^2)/2 + conj(z_k) z_l).
cplx overlap(cplx zk, cplx zl);

/// Position representation <x|z> = pi^{-1/4} exp(-(x-q)^2/2 + i p (x - q/2)).
cplx position_amplitude(double x, cplx z);

/// Overlap (Gram) matrix of a label set.  Hermitian with unit diagonal.
Eigen::MatrixXcd gram(std::span<const cplx> labels,
                      Exec exec = Exec::parallel);

/// Coupling matrix element of the coefficient equations:
///   Htilde_kl = <z_k|z_l> [ H(z_k*, z_l)
///                           - 1/2 (z_l dH/dz - dH/dzc conj(z_l))
///                           - conj(z_k) dH/dzc ],
/// with both partial derivatives taken on trajectory l, i.e. at
/// (zc, z) = (conj(z_l), z_l).
cplx htilde(cplx zk, cplx zl, const HamiltonianSymbol& h);
cplx htilde(cplx zk, cplx zl, const WellParams& w);

/// One pass filling the Gram matrix and the coupling matrix together.
/// When `zdot` is non-empty it must hold the classical label velocities;
/// the on-trajectory derivatives are then taken from the equations of
/// motion (dH/dzc = i zdot_l) instead of being re-evaluated.
void assemble_matrices(std::span<const cplx> labels,
                       const HamiltonianSymbol& h, Eigen::MatrixXcd& omega,
                       Eigen::MatrixXcd& coupling,
                       Exec exec = Exec::parallel,
                       std::span<const cplx> zdot = {});

}  // namespace dwell
