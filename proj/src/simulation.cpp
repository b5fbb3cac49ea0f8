#include "grt/simulation.hpp"

#include <cmath>

#include "grt/error.hpp"
#include "grt/limiter.hpp"
#include "grt/tableau.hpp"

namespace grt {

Simulation::Simulation(BenchmarkSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  space_ = std::make_unique<DGSpace>(spec_.mesh(), spec_.k);
  quad_ = spec_.quadrature();
  medium_ = std::make_unique<Medium>(*space_, spec_.material, spec_.constants, spec_.scaling,
                                     quad_.sphere_measure);
  boundary_ = std::make_unique<KineticBoundary>(*space_, quad_, spec_.boundary, spec_.constants,
                                                medium_->eps_tilde());
  InitialFields init = initial_fields(spec_, *space_, quad_, *medium_);
  state_.rho = std::move(init.rho);
  state_.T = std::move(init.T);
  state_.g = std::move(init.g);
  state_.t = 0.0;
  if (spec_.scheme == Scheme::AP) {
    StepperOptions opt;
    opt.flux = spec_.flux;
    opt.interface_policy = spec_.interface_policy;
    opt.limit = spec_.limiter;
    opt.limit_g = spec_.limit_g;
    opt.penalty_weight = spec_.penalty_weight;
    if (spec_.bound_limiter) {
      opt.bound_limit = true;
      opt.T_lo = state_.T.minCoeff();
      opt.T_hi = state_.T.maxCoeff();
      for (int ax = 0; ax < spec_.dim; ++ax)
        for (const BoundaryRule& r : spec_.boundary.rules[ax])
          if (r.kind == BoundaryKind::CloseLoop || r.kind == BoundaryKind::HeatedSegment) {
            opt.T_lo = std::min(opt.T_lo, r.temperature);
            opt.T_hi = std::max(opt.T_hi, r.temperature);
          }
    }
    stepper_ = std::make_unique<Stepper>(*space_, quad_, *medium_, *boundary_,
                                         tableau_by_name(spec_.tableau), spec_.picard, opt);
  } else {
    diffusion_ = std::make_unique<DiffusionSolver>(*space_, *medium_, *boundary_, spec_.flux,
                                                   spec_.picard);
    state_.rho = diffusion_->rho(state_.T);
    state_.g.setZero();
  }
  for (const Probe& p : spec_.probes) probes_.push_back({p.label, p.position, {}, {}, {}});
  stats_.energy0 = stats_.energy = energy();
  record_probes();
}

double Simulation::energy() const {
  const double c = medium_->constants().c;
  return space_->integrate(state_.rho + c * medium_->cv_tilde().cwiseProduct(state_.T));
}

Field Simulation::radiative_temperature() const {
  return grt::radiative_temperature(state_.rho, medium_->constants(), medium_->sphere_measure());
}

long Simulation::steps_for(double interval) const {
  const double target = spec_.cfl * space_->mesh().h();
  return std::max(1L, static_cast<long>(std::ceil(interval / target * (1.0 - 1e-12))));
}

StepStats Simulation::step(double dt) {
  StepStats st;
  const double e0 = stats_.energy;
  if (stepper_) {
    st = stepper_->advance(state_, dt);
  } else {
    DiffusionStats ds = diffusion_->step(state_.T, dt);
    if (spec_.limiter) {
      int n = 0;
      state_.T = double_minmod_limit(state_.T, *space_, {boundary_->periodic(0), boundary_->periodic(1)}, &n);
      st.limited_cells = n;
    }
    state_.rho = diffusion_->rho(state_.T);
    state_.t += dt;
    st.picard_max = st.picard_total = ds.picard;
    st.newton_max = ds.newton_max;
  }
  if (!state_.rho.allFinite() || !state_.T.allFinite())
    throw SolverFailure("non-finite state at t = " + std::to_string(state_.t));
  stats_.steps += 1;
  stats_.picard_max = std::max(stats_.picard_max, st.picard_max);
  stats_.picard_total += st.picard_total;
  stats_.newton_max = std::max(stats_.newton_max, st.newton_max);
  stats_.limited_cells += st.limited_cells;
  stats_.bounded_cells += st.bounded_cells;
  stats_.cells_outside += st.cells_outside;
  stats_.energy = energy();
  stats_.outflow += st.outflow;
  if (stepper_) stats_.max_residual = std::max(stats_.max_residual, std::abs(stats_.energy - e0 + st.outflow));
  stats_.last_dt = dt;
  return st;
}

void Simulation::advance_to(double t_end, const StepCallback& on_step) {
  const double seg = t_end - state_.t;
  if (seg <= 1e-12 * std::max(1.0, std::abs(t_end))) return;
  const long n = steps_for(seg);
  const double dt = seg / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    StepStats st = step(dt);
    if (i + 1 == n) state_.t = t_end;
    record_probes();
    if (on_step) on_step(*this, st);
  }
}

void Simulation::run(const SnapshotCallback& on_snapshot, const StepCallback& on_step) {
  std::vector<double> stops = spec_.snapshot_times;
  if (stops.empty() || stops.back() < spec_.final_time) stops.push_back(spec_.final_time);
  for (double t : stops) {
    advance_to(t, on_step);
    bool snap = false;
    for (double s : spec_.snapshot_times) snap = snap || s == t;
    if (snap && on_snapshot) on_snapshot(*this);
  }
}

void Simulation::record_probes() {
  if (probes_.empty()) return;
  if (state_.t + 1e-12 < next_probe_) return;
  next_probe_ = state_.t + spec_.probe_interval;
  const double coef = medium_->planck_coefficient();
  for (ProbeSeries& p : probes_) {
    double rho = space_->evaluate(state_.rho, p.position);
    p.times.push_back(state_.t);
    p.Tr.push_back(std::pow(std::max(rho, 0.0) / coef, 0.25));
    p.T.push_back(space_->evaluate(state_.T, p.position));
  }
}

}  // namespace grt
