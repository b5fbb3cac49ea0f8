#include "grt/boundary.hpp"

#include "grt/error.hpp"

namespace grt {

std::optional<double> BoundaryRule::source_at(double s) const {
  switch (kind) {
    case BoundaryKind::CloseLoop:
      return temperature;
    case BoundaryKind::HeatedSegment:
      if (s > seg_lo && s < seg_hi) return temperature;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

void BoundarySet::validate(int dim) const {
  for (int ax = 0; ax < dim; ++ax) {
    bool p0 = rules[ax][0].kind == BoundaryKind::Periodic;
    bool p1 = rules[ax][1].kind == BoundaryKind::Periodic;
    if (p0 != p1) throw ConfigurationError("periodic boundaries must be set on both sides of an axis");
    for (int s = 0; s < 2; ++s) {
      const auto& r = rules[ax][s];
      if ((r.kind == BoundaryKind::CloseLoop || r.kind == BoundaryKind::HeatedSegment) &&
          !(r.temperature >= 0.0))
        throw ConfigurationError("boundary source temperature must be non-negative");
      if (r.kind == BoundaryKind::HeatedSegment && !(r.seg_hi > r.seg_lo))
        throw ConfigurationError("heated segment needs seg_hi > seg_lo");
      if (r.kind == BoundaryKind::HeatedSegment && dim == 1)
        throw ConfigurationError("heated segments need a two-dimensional domain");
    }
  }
}

BoundarySet periodic_boundaries() { return BoundarySet{}; }

KineticBoundary::KineticBoundary(const DGSpace& space, const AngularQuadrature& quad,
                                 const BoundarySet& bc, const PhysicalConstants& pc,
                                 double eps_tilde)
    : space_(&space), quad_(&quad), bc_(bc), eps_t_(eps_tilde) {
  bc_.validate(space.dim());
  const double coef = pc.a * pc.c / quad.sphere_measure;
  for (int ax = 0; ax < space.dim(); ++ax) {
    for (int s = 0; s < 2; ++s) {
      auto& v = inflow_[ax][s];
      v.assign(space.lines(ax).n_lines, std::nullopt);
      if (bc_.periodic(ax)) continue;
      for (int l = 0; l < space.lines(ax).n_lines; ++l) {
        auto ts = bc_.rules[ax][s].source_at(space.line_position(ax, l));
        if (ts) v[l] = coef * (*ts) * (*ts) * (*ts) * (*ts);
      }
    }
  }
}

bool KineticBoundary::incoming(std::size_t m, int axis, int side) const {
  double w = quad_->component(m, axis);
  return side == 0 ? w > 0.0 : w < 0.0;
}

Field KineticBoundary::trace(const Field& u, int axis, int side) const {
  const LineLayout& L = space_->lines(axis);
  const auto& B = space_->basis();
  const Eigen::VectorXd& ends = side == 0 ? B.left : B.right;
  const int cell = side == 0 ? 0 : L.n_cells - 1;
  Field t(L.n_lines);
  for (int l = 0; l < L.n_lines; ++l) {
    double v = 0.0;
    for (int a = 0; a < B.k; ++a) v += ends(a) * u(L.index(l, cell, a));
    t(l) = v;
  }
  return t;
}

AngularField KineticBoundary::trace(const AngularField& g, int axis, int side) const {
  const LineLayout& L = space_->lines(axis);
  const auto& B = space_->basis();
  const Eigen::VectorXd& ends = side == 0 ? B.left : B.right;
  const int cell = side == 0 ? 0 : L.n_cells - 1;
  AngularField t(L.n_lines, g.cols());
  for (Eigen::Index m = 0; m < g.cols(); ++m) {
    for (int l = 0; l < L.n_lines; ++l) {
      double v = 0.0;
      for (int a = 0; a < B.k; ++a) v += ends(a) * g(L.index(l, cell, a), m);
      t(l, m) = v;
    }
  }
  return t;
}

void KineticBoundary::ghost(int axis, int side, const Field& rho_b, const AngularField& g_b,
                            Field& rho_gh, AngularField& g_gh) const {
  const int np = static_cast<int>(rho_b.size());
  const std::size_t M = quad_->size();
  const double meas = quad_->sphere_measure;
  rho_gh.resize(np);
  g_gh.resize(np, static_cast<Eigen::Index>(M));
  for (int l = 0; l < np; ++l) {
    const auto& src = inflow_[axis][side][l];
    double mean = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      double I = (src && incoming(m, axis, side)) ? *src : rho_b(l) + eps_t_ * g_b(l, m);
      g_gh(l, m) = I;
      mean += quad_->weights[m] * I;
    }
    mean /= meas;
    rho_gh(l) = mean;
    for (std::size_t m = 0; m < M; ++m) g_gh(l, m) = (g_gh(l, m) - mean) / eps_t_;
  }
}

double KineticBoundary::outflow_rate(const Field& rho, const AngularField& g,
                                     double c_over_sqrt_sigma0) const {
  double total = 0.0;
  Field rho_gh;
  AngularField g_gh;
  for (int ax = 0; ax < space_->dim(); ++ax) {
    if (bc_.periodic(ax)) continue;
    for (int s = 0; s < 2; ++s) {
      ghost(ax, s, trace(rho, ax, s), trace(g, ax, s), rho_gh, g_gh);
      const double normal = s == 0 ? -1.0 : 1.0;
      for (int l = 0; l < rho_gh.size(); ++l) {
        double j = 0.0;
        for (std::size_t m = 0; m < quad_->size(); ++m)
          j += quad_->weights[m] * quad_->component(m, ax) * g_gh(l, m);
        total += space_->line_weight(ax, l) * normal * j / quad_->sphere_measure;
      }
    }
  }
  return c_over_sqrt_sigma0 * total;
}

}  // namespace grt
