#include "dwell/ccs.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

#include "dwell/errors.hpp"

namespace dwell {

CCSState initial_state(std::vector<cplx> labels, std::size_t occupied) {
  if (occupied >= labels.size())
    throw ConfigError("initial_state: occupied index out of range");
  CCSState s;
  s.labels = std::move(labels);
  s.coeffs.assign(s.labels.size(), cplx(0.0, 0.0));
  s.coeffs[occupied] = 1.0;
  return s;
}

void assemble(std::span<const cplx> labels, const HamiltonianSymbol& h,
              Eigen::MatrixXcd& omega, Eigen::MatrixXcd& ht, Exec exec,
              std::span<const cplx> zdot) {
  assemble_matrices(labels, h, omega, ht, exec, zdot);
}

namespace {

// (Omega + eps I) x = b via Cholesky; Omega is Hermitian PSD so the
// regularized matrix is positive definite for eps > 0.
class GramSolver {
 public:
  void factor(Eigen::MatrixXcd& omega, double eps) {
    omega.diagonal().array() += eps;
    llt_.compute(omega);
    if (llt_.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "overlap solve failed: regularized Gram matrix not positive "
             "definite (M="
          << omega.rows() << ", eps=" << eps
          << ", |Omega|_max=" << omega.cwiseAbs().maxCoeff() << ")";
      throw NumericalError(msg.str());
    }
  }
  void solve_in_place(Eigen::VectorXcd& b) const { llt_.solveInPlace(b); }

 private:
  Eigen::LLT<Eigen::MatrixXcd> llt_;
};

struct StageWorkspace {
  Eigen::MatrixXcd omega, ht;
  Eigen::VectorXcd adot;
  std::vector<cplx> zdot;
  GramSolver solver;
};

// derivative of the joint state (labels + coefficients) at a stage point
void stage_rhs(const std::vector<cplx>& z, const Eigen::VectorXcd& a,
               const HamiltonianSymbol& h, double eps, bool substitute,
               Exec exec, StageWorkspace& ws) {
  const auto m = static_cast<long>(z.size());
  ws.zdot.resize(z.size());
  const bool par = exec == Exec::parallel;
#pragma omp parallel for if (par)
  for (long l = 0; l < m; ++l)
    ws.zdot[l] = cplx(0.0, -1.0) * h.grad(std::conj(z[l]), z[l]).d_zc;

  assemble_matrices(z, h, ws.omega, ws.ht, exec,
                    substitute ? std::span<const cplx>(ws.zdot)
                               : std::span<const cplx>{});
  ws.solver.factor(ws.omega, eps);
  ws.adot.noalias() = ws.ht * a;
  ws.solver.solve_in_place(ws.adot);
  ws.adot *= cplx(0.0, -1.0);
}

double state_norm(const std::vector<cplx>& z, const Eigen::VectorXcd& a,
                  Eigen::MatrixXcd& omega_buf) {
  omega_buf = gram(z);
  return (a.adjoint() * omega_buf * a).value().real();
}

}  // namespace

Eigen::VectorXcd coeff_rhs(const Eigen::MatrixXcd& omega,
                           const Eigen::MatrixXcd& ht,
                           const Eigen::VectorXcd& a, double eps) {
  if (eps < 0.0) throw ConfigError("coeff_rhs: eps must be >= 0");
  Eigen::MatrixXcd reg = omega;
  GramSolver solver;
  solver.factor(reg, eps);
  Eigen::VectorXcd out = ht * a;
  solver.solve_in_place(out);
  out *= cplx(0.0, -1.0);
  return out;
}

std::vector<cplx> coeff_rhs(const CCSState& state, const HamiltonianSymbol& h,
                            double eps) {
  Eigen::MatrixXcd omega, ht;
  assemble(state.labels, h, omega, ht);
  Eigen::Map<const Eigen::VectorXcd> a(state.coeffs.data(),
                                       static_cast<long>(state.coeffs.size()));
  Eigen::VectorXcd adot = coeff_rhs(omega, ht, a, eps);
  return {adot.data(), adot.data() + adot.size()};
}

double norm(const CCSState& state) {
  Eigen::MatrixXcd omega = gram(state.labels);
  Eigen::Map<const Eigen::VectorXcd> a(state.coeffs.data(),
                                       static_cast<long>(state.coeffs.size()));
  const cplx n = (a.adjoint() * omega * a).value();
  return n.real();
}

cplx cross_correlation(const CCSState& state, cplx beta) {
  cplx c(0.0, 0.0);
  for (std::size_t l = 0; l < state.labels.size(); ++l)
    c += state.coeffs[l] * overlap(beta, state.labels[l]);
  return c;
}

void propagate_ccs(const CCSState& initial, const HamiltonianSymbol& h,
                   const CCSOptions& opt,
                   const std::function<void(const CCSState&)>& on_snapshot) {
  if (!(opt.dt > 0.0)) throw ConfigError("propagate_ccs: dt must be > 0");
  if (opt.n_steps < 1) throw ConfigError("propagate_ccs: n_steps must be >= 1");
  if (opt.eps < 0.0) throw ConfigError("propagate_ccs: eps must be >= 0");
  const long stride = opt.snapshot_stride >= 1 ? opt.snapshot_stride : 1;
  const auto m = static_cast<long>(initial.labels.size());

  std::vector<cplx> z = initial.labels;
  Eigen::VectorXcd a =
      Eigen::Map<const Eigen::VectorXcd>(initial.coeffs.data(), m);

  StageWorkspace ws[4];
  Eigen::MatrixXcd norm_buf;
  std::vector<cplx> zt(initial.labels.size());
  Eigen::VectorXcd at(m);

  const double norm0 = state_norm(z, a, norm_buf);
  CCSState snap = initial;
  on_snapshot(snap);

  for (long i = 1; i <= opt.n_steps; ++i) {
    const double dt = opt.dt;
    // classic RK4 on the joint system; matrices re-assembled at each stage
    stage_rhs(z, a, h, opt.eps, opt.substitute_eom_derivatives, opt.exec,
              ws[0]);
    for (long l = 0; l < m; ++l) zt[l] = z[l] + 0.5 * dt * ws[0].zdot[l];
    at = a + 0.5 * dt * ws[0].adot;
    stage_rhs(zt, at, h, opt.eps, opt.substitute_eom_derivatives, opt.exec,
              ws[1]);
    for (long l = 0; l < m; ++l) zt[l] = z[l] + 0.5 * dt * ws[1].zdot[l];
    at = a + 0.5 * dt * ws[1].adot;
    stage_rhs(zt, at, h, opt.eps, opt.substitute_eom_derivatives, opt.exec,
              ws[2]);
    for (long l = 0; l < m; ++l) zt[l] = z[l] + dt * ws[2].zdot[l];
    at = a + dt * ws[2].adot;
    stage_rhs(zt, at, h, opt.eps, opt.substitute_eom_derivatives, opt.exec,
              ws[3]);
    for (long l = 0; l < m; ++l)
      z[l] += (dt / 6.0) * (ws[0].zdot[l] +
                            2.0 * (ws[1].zdot[l] + ws[2].zdot[l]) +
                            ws[3].zdot[l]);
    a += (dt / 6.0) *
         (ws[0].adot + 2.0 * (ws[1].adot + ws[2].adot) + ws[3].adot);

    if (i % stride == 0 || i == opt.n_steps) {
      const double n = state_norm(z, a, norm_buf);
      if (!std::isfinite(n) ||
          std::abs(n - norm0) > opt.norm_abort_fraction * norm0) {
        std::ostringstream msg;
        msg << "norm drift abort at t=" << initial.t + i * dt << ": N=" << n
            << " vs N(0)=" << norm0 << " (threshold "
            << opt.norm_abort_fraction * 100.0 << "%)";
        throw NumericalError(msg.str());
      }
      snap.t = initial.t + i * dt;
      snap.labels = z;
      snap.coeffs.assign(a.data(), a.data() + m);
      on_snapshot(snap);
    }
  }
}

std::vector<CCSState> propagate_ccs(const CCSState& initial,
                                    const HamiltonianSymbol& h,
                                    const CCSOptions& opt) {
  std::vector<CCSState> out;
  out.reserve(static_cast<std::size_t>(
                  opt.n_steps / std::max<long>(opt.snapshot_stride, 1)) +
              2);
  propagate_ccs(initial, h, opt,
                [&out](const CCSState& s) { out.push_back(s); });
  return out;
}

}  // namespace dwell
