#include "grt/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "grt/angular.hpp"
#include "grt/error.hpp"

namespace grt {

StructuredMesh::StructuredMesh(double x0, double x1, int nx)
    : dim(1), lo{x0, 0.0}, hi{x1, 1.0}, cells{nx, 1} {
  if (nx < 1 || !(x1 > x0)) throw InvalidParameter("mesh: need nx >= 1 and x1 > x0");
}

StructuredMesh::StructuredMesh(double x0, double x1, int nx, double y0, double y1, int ny)
    : dim(2), lo{x0, y0}, hi{x1, y1}, cells{nx, ny} {
  if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0))
    throw InvalidParameter("mesh: need positive cell counts and non-empty extents");
}

double StructuredMesh::h() const {
  return dim == 1 ? dx(0) : std::max(dx(0), dx(1));
}

double StructuredMesh::measure() const {
  double m = hi[0] - lo[0];
  if (dim == 2) m *= hi[1] - lo[1];
  return m;
}

NodalBasis::NodalBasis(int k_) : k(k_) {
  if (k < 1) throw InvalidParameter("basis: k must be positive");
  GaussRule rule = gauss_rule(k);
  nodes = rule.nodes;
  weights = rule.weights;
  diff.resize(k, k);
  left.resize(k);
  right.resize(k);
  for (int j = 0; j < k; ++j) {
    left(j) = eval(j, -1.0);
    right(j) = eval(j, 1.0);
  }
  for (int i = 0; i < k; ++i) {
    // negative-sum trick keeps exact annihilation of constants
    double s = 0.0;
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      diff(i, j) = deriv(j, nodes[i]);
      s += diff(i, j);
    }
    diff(i, i) = -s;
  }
}

double NodalBasis::eval(int j, double xi) const {
  double v = 1.0;
  for (int m = 0; m < k; ++m)
    if (m != j) v *= (xi - nodes[m]) / (nodes[j] - nodes[m]);
  return v;
}

double NodalBasis::deriv(int j, double xi) const {
  double s = 0.0;
  for (int m = 0; m < k; ++m) {
    if (m == j) continue;
    double p = 1.0 / (nodes[j] - nodes[m]);
    for (int r = 0; r < k; ++r)
      if (r != j && r != m) p *= (xi - nodes[r]) / (nodes[j] - nodes[r]);
    s += p;
  }
  return s;
}

DGSpace::DGSpace(StructuredMesh mesh, int k) : mesh_(mesh), basis_(k) {
  if (k < 1 || k > 8) throw InvalidParameter("DGSpace: k must be in [1, 8]");
  kd_ = mesh_.dim == 1 ? k : k * k;
  const int nx = mesh_.cells[0];
  const int ny = mesh_.dim == 2 ? mesh_.cells[1] : 1;
  mass_.resize(n_nodes());
  const double jx = 0.5 * mesh_.dx(0);
  const double jy = mesh_.dim == 2 ? 0.5 * mesh_.dx(1) : 1.0;
  for (int n = 0; n < n_nodes(); ++n) {
    auto [a, b] = local_coords(n);
    double w = basis_.weights[a] * jx;
    if (mesh_.dim == 2) w *= basis_.weights[b] * jy;
    mass_(n) = w;
  }
  LineLayout& lx = lines_[0];
  lx.n_cells = nx;
  lx.cell_stride = kd_;
  lx.node_stride = 1;
  if (mesh_.dim == 1) {
    lx.n_lines = 1;
    lx.base = {0};
  } else {
    lx.n_lines = ny * k;
    for (int cy = 0; cy < ny; ++cy)
      for (int b = 0; b < k; ++b) lx.base.push_back(cy * nx * kd_ + b * k);
    LineLayout& ly = lines_[1];
    ly.n_cells = ny;
    ly.cell_stride = nx * kd_;
    ly.node_stride = k;
    ly.n_lines = nx * k;
    for (int cx = 0; cx < nx; ++cx)
      for (int a = 0; a < k; ++a) ly.base.push_back(cx * kd_ + a);
  }
}

std::array<int, 2> DGSpace::cell_coords(int cell) const {
  return {cell % mesh_.cells[0], cell / mesh_.cells[0]};
}

std::array<int, 2> DGSpace::local_coords(int node) const {
  int r = node % kd_;
  return {r % basis_.k, mesh_.dim == 2 ? r / basis_.k : 0};
}

std::array<double, 2> DGSpace::cell_center(int cell) const {
  auto [cx, cy] = cell_coords(cell);
  std::array<double, 2> p{mesh_.lo[0] + (cx + 0.5) * mesh_.dx(0), 0.0};
  if (mesh_.dim == 2) p[1] = mesh_.lo[1] + (cy + 0.5) * mesh_.dx(1);
  return p;
}

std::array<double, 2> DGSpace::node_position(int node) const {
  auto c = cell_center(cell_of(node));
  auto [a, b] = local_coords(node);
  std::array<double, 2> p{c[0] + 0.5 * mesh_.dx(0) * basis_.nodes[a], 0.0};
  if (mesh_.dim == 2) p[1] = c[1] + 0.5 * mesh_.dx(1) * basis_.nodes[b];
  return p;
}

double DGSpace::line_position(int axis, int line) const {
  if (mesh_.dim == 1) return 0.0;
  const int other = 1 - axis;
  const int k = basis_.k;
  int c = line / k, a = line % k;
  return mesh_.lo[other] + (c + 0.5) * mesh_.dx(other) + 0.5 * mesh_.dx(other) * basis_.nodes[a];
}

double DGSpace::line_weight(int axis, int line) const {
  if (mesh_.dim == 1) return 1.0;
  const int other = 1 - axis;
  return 0.5 * mesh_.dx(other) * basis_.weights[line % basis_.k];
}

double DGSpace::l2_norm(const Field& u) const {
  return std::sqrt(mass_.dot(u.cwiseProduct(u)));
}

double DGSpace::evaluate(const Field& u, std::array<double, 2> p, bool from_below) const {
  std::array<int, 2> c{0, 0};
  std::array<double, 2> xi{0.0, 0.0};
  for (int ax = 0; ax < mesh_.dim; ++ax) {
    const double d = mesh_.dx(ax);
    double s = (p[ax] - mesh_.lo[ax]) / d;
    int i = static_cast<int>(std::floor(s));
    if (from_below && i > 0 && std::abs(s - i) < 1e-12) --i;
    i = std::clamp(i, 0, mesh_.cells[ax] - 1);
    c[ax] = i;
    xi[ax] = 2.0 * (s - i) - 1.0;
  }
  const int cell = c[0] + mesh_.cells[0] * c[1];
  const int k = basis_.k;
  double v = 0.0;
  if (mesh_.dim == 1) {
    for (int a = 0; a < k; ++a) v += u(cell * kd_ + a) * basis_.eval(a, xi[0]);
  } else {
    for (int b = 0; b < k; ++b) {
      double lb = basis_.eval(b, xi[1]);
      for (int a = 0; a < k; ++a) v += u(cell * kd_ + a + k * b) * basis_.eval(a, xi[0]) * lb;
    }
  }
  return v;
}

Field project(const std::function<double(double, double)>& f, const DGSpace& space) {
  Field u(space.n_nodes());
  for (int n = 0; n < space.n_nodes(); ++n) {
    auto p = space.node_position(n);
    u(n) = f(p[0], p[1]);
  }
  return u;
}

namespace {

double cell_trace(const Field& u, const DGSpace& space, const LineLayout& L, int line, int cell,
                  const Eigen::VectorXd& ends) {
  double v = 0.0;
  for (int a = 0; a < space.k(); ++a) v += ends(a) * u(L.index(line, cell, a));
  return v;
}

}  // namespace

EdgeTrace trace_values(const Field& u, const DGSpace& space, int axis, int line, int face,
                       bool periodic) {
  const LineLayout& L = space.lines(axis);
  const int n = L.n_cells;
  if (face < 0 || face > n || line < 0 || line >= L.n_lines)
    throw InvalidParameter("trace_values: face or line out of range");
  const auto& B = space.basis();
  if ((face == 0 || face == n) && !periodic)
    throw ConfigurationError("trace_values: boundary face without a boundary rule");
  int left = face == 0 ? n - 1 : face - 1;
  int right = face == n ? 0 : face;
  return {cell_trace(u, space, L, line, left, B.right), cell_trace(u, space, L, line, right, B.left)};
}

}  // namespace grt
