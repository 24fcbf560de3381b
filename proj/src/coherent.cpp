#include "dwell/coherent.hpp"

#include <cmath>
#include <numbers>

namespace dwell {

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// bracket of the coupling element; the gradient belongs to the column
// (ket-side) trajectory
inline cplx coupling_bracket(cplx h_val, cplx z_row, cplx z_col,
                             const GradPair& g_col) {
  return h_val -
         0.5 * (z_col * g_col.d_z - g_col.d_zc * std::conj(z_col)) -
         std::conj(z_row) * g_col.d_zc;
}

inline GradPair grad_from_zdot(cplx zdot) {
  const cplx d_zc = cplx(0.0, 1.0) * zdot;  // i zdot = dH/dzc on the slice
  return {d_zc, std::conj(d_zc)};
}
}  // namespace

cplx label_from_qp(double q, double p) { return {q * kInvSqrt2, p * kInvSqrt2}; }

PhasePoint qp_from_label(cplx z) {
  return {std::numbers::sqrt2 * z.real(), std::numbers::sqrt2 * z.imag()};
}

cplx overlap(cplx zk, cplx zl) {
  return std::exp(-0.5 * (std::norm(zk) + std::norm(zl)) +
                  std::conj(zk) * zl);
}

cplx position_amplitude(double x, cplx z) {
  static const double kNorm = std::pow(std::numbers::pi, -0.25);
  const auto [q, p] = qp_from_label(z);
  const double dx = x - q;
  return kNorm * std::exp(cplx(-0.5 * dx * dx, p * (x - 0.5 * q)));
}

cplx htilde(cplx zk, cplx zl, const HamiltonianSymbol& h) {
  const GradPair g = h.grad(std::conj(zl), zl);
  return overlap(zk, zl) *
         coupling_bracket(h.value(std::conj(zk), zl), zk, zl, g);
}

cplx htilde(cplx zk, cplx zl, const WellParams& w) {
  return htilde(zk, zl, OrderedDoubleWell(w));
}

Eigen::MatrixXcd gram(std::span<const cplx> labels, Exec exec) {
  const auto m = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd out(m, m);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic, 4) if (par)
  for (Eigen::Index k = 0; k < m; ++k) {
    out(k, k) = 1.0;
    for (Eigen::Index l = k + 1; l < m; ++l) {
      const cplx v = overlap(labels[k], labels[l]);
      out(k, l) = v;
      out(l, k) = std::conj(v);
    }
  }
  return out;
}

void assemble_matrices(std::span<const cplx> labels,
                       const HamiltonianSymbol& h, Eigen::MatrixXcd& omega,
                       Eigen::MatrixXcd& coupling, Exec exec,
                       std::span<const cplx> zdot) {
  const auto m = static_cast<Eigen::Index>(labels.size());
  omega.resize(m, m);
  coupling.resize(m, m);
  const bool par = exec == Exec::parallel;

  // Per-trajectory gradients, either fresh or recycled from the equations
  // of motion.
  std::vector<GradPair> grads(labels.size());
  for (std::size_t l = 0; l < labels.size(); ++l)
    grads[l] = zdot.empty() ? h.grad(std::conj(labels[l]), labels[l])
                            : grad_from_zdot(zdot[l]);

  // Upper triangle carries the exponentials; the overlap kernel and the
  // symbol value matrix H(z_k*, z_l) are both Hermitian, so the lower
  // triangle is mirrored.  The coupling matrix itself is not Hermitian:
  // its l-dependent bracket is applied element-wise afterwards.
#pragma omp parallel for schedule(dynamic, 4) if (par)
  for (Eigen::Index k = 0; k < m; ++k) {
    const cplx zk = labels[k];
    {
      const cplx hv = h.value(std::conj(zk), zk);
      omega(k, k) = 1.0;
      coupling(k, k) = coupling_bracket(hv, zk, zk, grads[k]);
    }
    for (Eigen::Index l = k + 1; l < m; ++l) {
      const cplx zl = labels[l];
      const cplx ov = overlap(zk, zl);
      const cplx hv = h.value(std::conj(zk), zl);
      omega(k, l) = ov;
      omega(l, k) = std::conj(ov);
      coupling(k, l) = ov * coupling_bracket(hv, zk, zl, grads[l]);
      coupling(l, k) =
          std::conj(ov) * coupling_bracket(std::conj(hv), zl, zk, grads[k]);
    }
  }
}

}  // namespace dwell
