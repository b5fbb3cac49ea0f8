#include "grt/stepper.hpp"

#include <cmath>

#include "grt/error.hpp"
#include "grt/limiter.hpp"

namespace grt {

Stepper::Stepper(const DGSpace& space, const AngularQuadrature& quad, const Medium& medium,
                 const KineticBoundary& boundary, ButcherTableau tableau, PicardConfig picard,
                 StepperOptions options)
    : space_(&space), quad_(&quad), medium_(&medium), boundary_(&boundary),
      tab_(std::move(tableau)), picard_(picard), opt_(options) {
  if (!tab_.validate_gsa() || !tab_.is_ars())
    throw ConfigurationError("tableau '" + tab_.name + "' is not a globally stiffly accurate ARS pair");
  if (!(medium.eps_tilde() > 0.0)) throw InvalidParameter("the kinetic scheme needs eps > 0");
  if (opt_.bound_limit && !(opt_.T_lo >= 0.0 && opt_.T_hi > opt_.T_lo))
    throw InvalidParameter("bound limiter needs 0 <= T_lo < T_hi");
  omega_ = opt_.penalty_weight >= 0.0 ? opt_.penalty_weight
                                      : penalization_weight(medium.eps_tilde(), space.mesh().h());
}

void Stepper::prepare(double dt) {
  if (ops_ && (!opt_.interface_policy || dt == ops_dt_)) return;
  InterfacePolicy pol{opt_.interface_policy, dt};
  ops_ = std::make_unique<DGOperators>(*space_, *quad_, *medium_, *boundary_, opt_.flux, pol);
  ops_dt_ = dt;
  if (solver_)
    solver_->set_laplacian(ops_->laplacian());
  else
    solver_ = std::make_unique<StageSolver>(*space_, *medium_, ops_->laplacian(), picard_);
}

const DGOperators& Stepper::operators(double dt) {
  prepare(dt);
  return *ops_;
}

double Stepper::energy(const State& s) const {
  const double c = medium_->constants().c;
  return space_->integrate(s.rho + c * medium_->cv_tilde().cwiseProduct(s.T));
}

StepStats Stepper::advance(State& st, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("advance: dt must be positive");
  prepare(dt);
  const DGOperators& ops = *ops_;
  const SparseMatrix& L = ops.laplacian();
  const int S = tab_.s;
  const auto& At = tab_.explicit_a;
  const auto& A = tab_.implicit_a;
  const double c = medium_->constants().c;
  const double s0 = medium_->scaling().sigma0;
  const double sq = std::sqrt(s0);
  const double et = medium_->eps_tilde();
  const double e2 = et * et;
  const double alpha = c * omega_ / (3.0 * s0);
  const double c_macro = c / sq;
  const double c_tr = c / (sq * et);
  const double c_rho = c / (sq * e2);
  const double c_rel = c / e2;
  const Field& cv = medium_->cv_tilde();
  const Field base1 = st.rho + c * cv.cwiseProduct(st.T);
  const Field base2 = e2 * cv.cwiseProduct(st.T);

  std::vector<Field> rho(S + 1), T(S + 1), fg(S + 1), lr(S + 1), src(S + 1);
  std::vector<AngularField> g(S + 1), tr(S + 1), imp(S + 1);
  std::vector<double> out(S + 1, 0.0);
  rho[0] = st.rho;
  T[0] = st.T;
  g[0] = st.g;

  auto explicit_needed = [&](int j) {
    if (tab_.explicit_b(j) != 0.0) return true;
    for (int i = j + 1; i <= S; ++i)
      if (At(i, j) != 0.0) return true;
    return false;
  };
  auto explicit_terms = [&](int j) {
    fg[j] = ops.g_div(g[j], rho[j]);
    tr[j] = ops.transport(g[j], rho[j]);
    out[j] = boundary_->outflow_rate(rho[j], g[j], c_macro);
  };
  explicit_terms(0);
  lr[0] = L * rho[0];

  StepStats stats;
  for (int l = 1; l <= S; ++l) {
    StageRHS rhs;
    rhs.rhs1 = base1;
    rhs.rhs2 = base2;
    for (int j = 0; j < l; ++j) {
      if (At(l, j) != 0.0) rhs.rhs1 -= (dt * At(l, j) * c_macro) * fg[j];
      double d = At(l, j) - A(l, j);
      if (d != 0.0 && alpha != 0.0) rhs.rhs1 -= (dt * alpha * d) * lr[j];
      if (j > 0 && A(l, j) != 0.0) rhs.rhs2 += (dt * A(l, j)) * src[j];
    }
    rhs.tau = A(l, l) * dt;
    rhs.theta = rhs.tau * alpha;
    StageResult res = solver_->solve(rhs, rho[l - 1], T[l - 1]);
    stats.picard_max = std::max(stats.picard_max, res.iterations);
    stats.picard_total += res.iterations;
    stats.newton_max = std::max(stats.newton_max, res.max_newton);
    rho[l] = std::move(res.rho);
    T[l] = std::move(res.T);
    src[l] = (e2 * cv.cwiseProduct(T[l]) - rhs.rhs2) / rhs.tau;
    lr[l] = L * rho[l];

    // micro update, implicit in the relaxation and the rho coupling
    const Field sig = medium_->sigma_tilde(T[l]);
    AngularField gl = g[0] - rhs.tau * c_rho * ops.rho_transport(rho[l], g[l - 1]);
    AngularField hist = AngularField::Zero(gl.rows(), gl.cols());
    for (int j = 0; j < l; ++j) {
      if (At(l, j) != 0.0) hist -= (At(l, j) * c_tr) * tr[j];
      if (j > 0 && A(l, j) != 0.0) hist += A(l, j) * imp[j];
    }
    gl += dt * hist;
    const Field denom = (1.0 + rhs.tau * c_rel * sig.array()).matrix();
    gl = gl.array().colwise() / denom.array();
    imp[l] = ((gl - g[0]) / dt - hist) / A(l, l);
    g[l] = std::move(gl);
    if (l < S && explicit_needed(l)) explicit_terms(l);
  }
  if (explicit_needed(S)) explicit_terms(S);

  double outflow = 0.0;
  for (int j = 0; j <= S; ++j) outflow += tab_.explicit_b(j) * out[j];
  stats.outflow = dt * outflow;

  if (opt_.final_update) {
    // conservative re-update of (rho, T) with the weights b~ and b
    StageRHS fin;
    fin.rhs1 = base1;
    fin.rhs2 = base2;
    for (int j = 0; j <= S; ++j) {
      const double bt = tab_.explicit_b(j), b = tab_.implicit_b(j);
      if (bt != 0.0) fin.rhs1 -= (dt * bt * c_macro) * fg[j];
      if (bt != b && alpha != 0.0) fin.rhs1 -= (dt * alpha * (bt - b)) * lr[j];
      if (j > 0 && j < S && b != 0.0) fin.rhs2 += (dt * b) * src[j];
    }
    fin.tau = tab_.implicit_b(S) * dt;
    fin.theta = 0.0;
    int nit = 0;
    solver_->step2(fin, fin.rhs1, medium_->sigma_tilde(T[S]), T[S], st.rho, st.T, &nit);
    stats.newton_max = std::max(stats.newton_max, nit);
  } else {
    st.rho = rho[S];
    st.T = T[S];
  }
  st.g = std::move(g[S]);

  if (opt_.limit) {
    std::array<bool, 2> per{boundary_->periodic(0), space_->dim() == 2 && boundary_->periodic(1)};
    int n1 = 0, n2 = 0;
    st.rho = double_minmod_limit(st.rho, *space_, per, &n1);
    st.T = double_minmod_limit(st.T, *space_, per, &n2);
    stats.limited_cells = n1 + n2;
    if (opt_.limit_g)
      for (Eigen::Index m = 0; m < st.g.cols(); ++m)
        st.g.col(m) = double_minmod_limit(st.g.col(m), *space_, per);
  }
  if (opt_.bound_limit) {
    const double kp = medium_->planck_coefficient();
    auto phi = [kp](double t) { return kp * t * t * t * t; };
    int l1 = 0, l2 = 0, o1 = 0, o2 = 0;
    st.T = bound_limit(st.T, *space_, opt_.T_lo, opt_.T_hi, &l1, &o1);
    st.rho = bound_limit(st.rho, *space_, phi(opt_.T_lo), phi(opt_.T_hi), &l2, &o2);
    stats.bounded_cells = l1 + l2;
    stats.cells_outside = o1 + o2;
  }
  st.t += dt;
  return stats;
}

}  // namespace grt
