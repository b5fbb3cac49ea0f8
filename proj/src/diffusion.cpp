#include "grt/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grt/error.hpp"

namespace grt {

DiffusionSolver::DiffusionSolver(const DGSpace& space, const Medium& medium,
                                 const KineticBoundary& boundary, FluxFamily flux,
                                 PicardConfig picard)
    : space_(&space), boundary_(&boundary), picard_(picard) {
  ScalingParameters sc = medium.scaling();
  sc.eps = 0.0;
  limit_ = std::make_unique<Medium>(space, medium.material(), medium.constants(), sc,
                                    medium.sphere_measure());
  FaceWeights rw{0.0, 1.0}, qw{1.0, 0.0};
  if (flux == FluxFamily::AlternatingRL) std::swap(rw, qw);
  if (flux == FluxFamily::Central) rw = qw = {0.5, 0.5};
  for (int ax = 0; ax < space.dim(); ++ax) {
    const bool per = boundary.periodic(ax);
    auto source = [&, ax](int side, int line) { return boundary.inflow(ax, side, line).has_value(); };
    grad_[ax] = build_axis_operator(
        space, ax, per, [rw](int, int) { return rw; },
        [source](int side, int line) { return source(side, line) ? FaceClosure::Zero : FaceClosure::Interior; });
    div_[ax] = build_axis_operator(
        space, ax, per, [qw](int, int) { return qw; },
        [source](int side, int line) { return source(side, line) ? FaceClosure::Interior : FaceClosure::Zero; });
  }
  lap_ = div_[0] * grad_[0];
  if (space.dim() == 2) lap_ += SparseMatrix(div_[1] * grad_[1]);
}

Field DiffusionSolver::rho(const Field& T) const {
  return planck(T, limit_->constants(), limit_->sphere_measure());
}

double DiffusionSolver::energy(const Field& T) const {
  const double c = limit_->constants().c;
  return space_->integrate(rho(T) + c * limit_->cv_tilde().cwiseProduct(T));
}

namespace {

// Kirchhoff potential with grad(psi) = grad(Phi) / (3 sigma): 4/7 of
// Phi / (3 sigma) for sigma ~ 1/T^3, Phi / (3 sigma) for constant sigma.
double kirchhoff(const Region& r, double phi, double T) {
  const double f = r.law == OpacityLaw::PowerLaw ? 4.0 / 7.0 : 1.0;
  return f * phi / (3.0 * r.opacity(T));
}

}  // namespace

Field DiffusionSolver::potential(const Field& T) const {
  const Field phi = rho(T);
  const auto& regions = limit_->material().regions;
  Field psi(T.size());
  for (Eigen::Index i = 0; i < T.size(); ++i)
    psi(i) = kirchhoff(regions[limit_->node_region()[i]], phi(i), T(i));
  return psi;
}

Field DiffusionSolver::diffusion(const Field& T) const {
  const Field psi = potential(T);
  const auto& pc = limit_->constants();
  const auto& regions = limit_->material().regions;
  Field out = Field::Zero(space_->n_nodes());
  for (int ax = 0; ax < space_->dim(); ++ax) {
    Field q = grad_[ax] * psi;
    if (!boundary_->periodic(ax)) {
      const LineLayout& L = space_->lines(ax);
      for (int s = 0; s < 2; ++s)
        for (int l = 0; l < L.n_lines; ++l) {
          const auto& ib = boundary_->inflow(ax, s, l);
          if (!ib) continue;
          const double Tb = std::sqrt(std::sqrt(limit_->sphere_measure() * *ib / (pc.a * pc.c)));
          const int node = L.index(l, s == 0 ? 0 : L.n_cells - 1, 0);
          const Region& r = regions[limit_->node_region()[node]];
          inject_boundary_flux(*space_, q, ax, s, l, kirchhoff(r, *ib, std::max(Tb, kTemperatureFloor)));
        }
    }
    out += div_[ax] * q;
  }
  return out;
}

DiffusionStats DiffusionSolver::step(Field& T, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("diffusion step: dt must be positive");
  const int n = space_->n_nodes();
  const double c = limit_->constants().c;
  const double theta = dt * c / (3.0 * limit_->scaling().sigma0);
  const double kappa = limit_->planck_coefficient();
  const Field ccv = c * limit_->cv_tilde();
  const Field phi0 = rho(T);
  const Field rhs = phi0 + ccv.cwiseProduct(T) + dt * c * diffusion(T) - theta * (lap_ * phi0);

  // Newton on (I - theta L) Phi(T) + c Cv~ T = rhs.
  SparseMatrix A(n, n);
  A.setIdentity();
  A -= theta * lap_;
  Eigen::SparseLU<SparseMatrix> lu;
  DiffusionStats stats;
  Field phi = phi0;
  for (int it = 1; it <= picard_.max_picard; ++it) {
    const Field F = A * phi + ccv.cwiseProduct(T) - rhs;
    Eigen::VectorXd dphi(n);
    for (int i = 0; i < n; ++i) {
      const double t = std::max(T(i), kTemperatureFloor);
      dphi(i) = 4.0 * kappa * t * t * t;
    }
    SparseMatrix J = A * dphi.asDiagonal();
    J += SparseMatrix(ccv.asDiagonal());
    if (it == 1) lu.analyzePattern(J);
    lu.factorize(J);
    if (lu.info() != Eigen::Success) throw SolverFailure("diffusion step: sparse factorization failed");
    const Field dT = lu.solve(F);
    for (int i = 0; i < n; ++i) T(i) = std::max({T(i) - dT(i), 0.5 * T(i), kTemperatureFloor});
    const Field next = rho(T);
    const double d = space_->l2_norm(next - phi);
    phi = next;
    stats.picard = 1;
    stats.newton_max = it;
    if (!std::isfinite(d)) break;
    if (d < picard_.delta) return stats;
  }
  throw SolverFailure("diffusion step: Newton iteration did not converge in " +
                      std::to_string(stats.newton_max) + " iterations");
}

}  // namespace grt
