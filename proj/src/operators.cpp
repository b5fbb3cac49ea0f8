#include "grt/operators.hpp"

#include <cmath>
#include <vector>

#include "grt/error.hpp"

namespace grt {

FluxFamily parse_flux_family(const std::string& name) {
  if (name == "alternating-left-right" || name == "lr") return FluxFamily::AlternatingLR;
  if (name == "alternating-right-left" || name == "rl") return FluxFamily::AlternatingRL;
  if (name == "central") return FluxFamily::Central;
  throw InvalidParameter("unknown flux family '" + name + "'");
}

std::string to_string(FluxFamily f) {
  switch (f) {
    case FluxFamily::AlternatingLR: return "alternating-left-right";
    case FluxFamily::AlternatingRL: return "alternating-right-left";
    case FluxFamily::Central: return "central";
  }
  return "?";
}

SparseMatrix build_axis_operator(const DGSpace& space, int axis, bool periodic,
                                 const std::function<FaceWeights(int, int)>& weights,
                                 const std::function<FaceClosure(int, int)>& closure) {
  const LineLayout& L = space.lines(axis);
  const NodalBasis& B = space.basis();
  const int k = B.k;
  const int n = L.n_cells;
  const double s = 2.0 / space.mesh().dx(axis);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(space.n_nodes()) * (3 * k));

  for (int l = 0; l < L.n_lines; ++l) {
    // flux at face f as a combination of cell traces, lifted into cell 'target'
    auto add_face = [&](int f, int target, double lift_sign, const Eigen::VectorXd& ends) {
      auto lift_into = [&](int src_cell, const Eigen::VectorXd& src_ends, double coef) {
        if (coef == 0.0) return;
        for (int a = 0; a < k; ++a) {
          double la = lift_sign * s * ends(a) / B.weights[a] * coef;
          for (int b = 0; b < k; ++b)
            trip.emplace_back(L.index(l, target, a), L.index(l, src_cell, b), la * src_ends(b));
        }
      };
      const bool boundary = (f == 0 || f == n) && !periodic;
      if (boundary) {
        int side = f == 0 ? 0 : 1;
        if (closure(side, l) == FaceClosure::Interior)
          lift_into(side == 0 ? 0 : n - 1, side == 0 ? B.left : B.right, 1.0);
        return;
      }
      int fw = f == n ? 0 : f;  // periodic: face n is face 0
      FaceWeights w = weights(l, fw);
      int left = fw == 0 ? n - 1 : fw - 1;
      int right = fw;
      lift_into(left, B.right, w.minus);
      lift_into(right, B.left, w.plus);
    };
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          double v = -s * B.weights[b] * B.diff(b, a) / B.weights[a];
          if (v != 0.0) trip.emplace_back(L.index(l, i, a), L.index(l, i, b), v);
        }
      add_face(i + 1, i, 1.0, B.right);
      add_face(i, i, -1.0, B.left);
    }
  }
  SparseMatrix m(space.n_nodes(), space.n_nodes());
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune(0.0);
  return m;
}

void inject_boundary_flux(const DGSpace& space, Eigen::Ref<Eigen::VectorXd> out, int axis, int side, int line,
                          double flux) {
  const LineLayout& L = space.lines(axis);
  const NodalBasis& B = space.basis();
  const double s = 2.0 / space.mesh().dx(axis);
  const int cell = side == 0 ? 0 : L.n_cells - 1;
  const Eigen::VectorXd& ends = side == 0 ? B.left : B.right;
  const double sign = side == 0 ? -1.0 : 1.0;
  for (int a = 0; a < B.k; ++a) out(L.index(line, cell, a)) += sign * s * ends(a) / B.weights[a] * flux;
}

double interface_weight(double c, double sigma_tilde, double dt, double eps_tilde) {
  if (eps_tilde == 0.0) return 0.0;
  return std::exp(-c * sigma_tilde * dt / (eps_tilde * eps_tilde));
}

DGOperators::DGOperators(const DGSpace& space, const AngularQuadrature& quad, const Medium& medium,
                         const KineticBoundary& boundary, FluxFamily flux, InterfacePolicy policy)
    : space_(&space), quad_(&quad), medium_(&medium), boundary_(&boundary), flux_(flux) {
  if (quad.dim != space.dim()) throw ConfigurationError("angular quadrature dimension mismatch");
  const auto& cell_region = medium.cell_region();
  const auto& regions = medium.material().regions;
  if (policy.enabled) {
    for (const auto& r : regions)
      if (r.law != OpacityLaw::Constant)
        throw ConfigurationError("interface flux policy needs constant-opacity regions");
    if (!(policy.dt > 0.0)) throw InvalidParameter("interface flux policy needs dt > 0");
  }

  for (int ax = 0; ax < space.dim(); ++ax) {
    const LineLayout& L = space.lines(ax);
    const bool per = boundary.periodic(ax);
    auto cell_at = [&](int line, int i) { return space.cell_of(L.index(line, i, 0)); };

    auto rho_weights = [&](int line, int f) -> FaceWeights {
      FaceWeights w;
      switch (flux) {
        case FluxFamily::AlternatingLR: w = {0.0, 1.0}; break;
        case FluxFamily::AlternatingRL: w = {1.0, 0.0}; break;
        case FluxFamily::Central: w = {0.5, 0.5}; break;
      }
      if (!policy.enabled || flux == FluxFamily::Central) return w;
      int cl = cell_at(line, f == 0 ? L.n_cells - 1 : f - 1);
      int cr = cell_at(line, f);
      if (cell_region[cl] == cell_region[cr]) return w;
      bool plus_primary = flux == FluxFamily::AlternatingLR;
      const Region& prim = regions[cell_region[plus_primary ? cr : cl]];
      double w1 = interface_weight(medium.constants().c, prim.kappa / medium.scaling().sigma0,
                                   policy.dt, medium.eps_tilde());
      return plus_primary ? FaceWeights{w1, 1.0 - w1} : FaceWeights{1.0 - w1, w1};
    };
    // The partner flux mirrors rho-hat so that the pair stays alternating
    // across material interfaces as well.
    auto q_weights = [&](int line, int f) -> FaceWeights {
      if (flux == FluxFamily::Central) return {0.5, 0.5};
      FaceWeights r = rho_weights(line, f);
      return {r.plus, r.minus};
    };
    auto interior = [](int, int) { return FaceClosure::Interior; };
    auto zero = [](int, int) { return FaceClosure::Zero; };

    grad_pen_[ax] = build_axis_operator(space, ax, per, rho_weights, interior);
    grad_kin_[ax] = build_axis_operator(space, ax, per, rho_weights, zero);
    div_[ax] = build_axis_operator(space, ax, per, q_weights, zero);
    up_minus_[ax] = build_axis_operator(space, ax, per, [](int, int) { return FaceWeights{1.0, 0.0}; }, zero);
    up_plus_[ax] = build_axis_operator(space, ax, per, [](int, int) { return FaceWeights{0.0, 1.0}; }, zero);
  }
  lap_ = div_[0] * grad_pen_[0];
  if (space.dim() == 2) lap_ += SparseMatrix(div_[1] * grad_pen_[1]);
}

VectorField DGOperators::grad(const Field& rho) const {
  VectorField q;
  q.dim = space_->dim();
  for (int ax = 0; ax < q.dim; ++ax) q.comp[ax] = grad_pen_[ax] * rho;
  return q;
}

Field DGOperators::div(const VectorField& q) const {
  Field out = div_[0] * q.comp[0];
  if (space_->dim() == 2) out += div_[1] * q.comp[1];
  return out;
}

VectorField DGOperators::angular_flux(const AngularField& g) const {
  VectorField j;
  j.dim = space_->dim();
  const double meas = quad_->sphere_measure;
  for (int ax = 0; ax < j.dim; ++ax) {
    Eigen::VectorXd w(quad_->size());
    for (std::size_t m = 0; m < quad_->size(); ++m)
      w(m) = quad_->weights[m] * quad_->component(m, ax) / meas;
    j.comp[ax] = g * w;
  }
  return j;
}

Field DGOperators::g_div(const VectorField& j) const { return div(j); }

Field DGOperators::g_div(const AngularField& g, const Field& rho) const {
  Field out = div(angular_flux(g));
  const KineticBoundary& kb = *boundary_;
  Field rho_gh;
  AngularField g_gh;
  for (int ax = 0; ax < space_->dim(); ++ax) {
    if (kb.periodic(ax)) continue;
    Eigen::VectorXd w(quad_->size());
    for (std::size_t m = 0; m < quad_->size(); ++m)
      w(m) = quad_->weights[m] * quad_->component(m, ax) / quad_->sphere_measure;
    for (int s = 0; s < 2; ++s) {
      kb.ghost(ax, s, kb.trace(rho, ax, s), kb.trace(g, ax, s), rho_gh, g_gh);
      Field jb = g_gh * w;
      for (int l = 0; l < jb.size(); ++l) inject_boundary_flux(*space_, out, ax, s, l, jb(l));
    }
  }
  return out;
}

AngularField DGOperators::rho_transport(const Field& rho, const AngularField& g_ghost) const {
  const KineticBoundary& kb = *boundary_;
  std::array<Field, 2> gr;
  Field rho_gh;
  AngularField g_gh;
  for (int ax = 0; ax < space_->dim(); ++ax) {
    gr[ax] = grad_kin_[ax] * rho;
    if (kb.periodic(ax)) continue;
    for (int s = 0; s < 2; ++s) {
      kb.ghost(ax, s, kb.trace(rho, ax, s), kb.trace(g_ghost, ax, s), rho_gh, g_gh);
      for (int l = 0; l < rho_gh.size(); ++l) inject_boundary_flux(*space_, gr[ax], ax, s, l, rho_gh(l));
    }
  }
  AngularField out(space_->n_nodes(), quad_->size());
  for (std::size_t m = 0; m < quad_->size(); ++m) {
    out.col(m) = quad_->component(m, 0) * gr[0];
    if (space_->dim() == 2) out.col(m) += quad_->component(m, 1) * gr[1];
  }
  return out;
}

AngularField DGOperators::upwind(const AngularField& g, const Field& rho) const {
  const KineticBoundary& kb = *boundary_;
  const std::size_t M = quad_->size();
  AngularField out = AngularField::Zero(space_->n_nodes(), M);
  Field rho_gh;
  AngularField g_gh;
  for (int ax = 0; ax < space_->dim(); ++ax) {
    for (std::size_t m = 0; m < M; ++m) {
      double om = quad_->component(m, ax);
      if (om == 0.0) continue;
      out.col(m) += om * ((om > 0.0 ? up_minus_[ax] : up_plus_[ax]) * g.col(m));
    }
    if (kb.periodic(ax)) continue;
    for (int s = 0; s < 2; ++s) {
      kb.ghost(ax, s, kb.trace(rho, ax, s), kb.trace(g, ax, s), rho_gh, g_gh);
      for (std::size_t m = 0; m < M; ++m) {
        double om = quad_->component(m, ax);
        if (om == 0.0) continue;
        for (int l = 0; l < rho_gh.size(); ++l)
          inject_boundary_flux(*space_, out.col(m), ax, s, l, om * g_gh(l, m));
      }
    }
  }
  return out;
}

AngularField DGOperators::transport(const AngularField& g, const Field& rho) const {
  AngularField d = upwind(g, rho);
  Eigen::VectorXd w(quad_->size());
  for (std::size_t m = 0; m < quad_->size(); ++m) w(m) = quad_->weights[m] / quad_->sphere_measure;
  Field mean = d * w;
  d.colwise() -= mean;
  return d;
}

}  // namespace grt
