#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace grt {

using Field = Eigen::VectorXd;
// Column m holds ordinate m (ordinate-outermost storage).
using AngularField = Eigen::MatrixXd;

struct VectorField {
  std::array<Field, 2> comp;
  int dim = 1;
};

struct StructuredMesh {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<int, 2> cells{1, 1};

  StructuredMesh() = default;
  StructuredMesh(double x0, double x1, int nx);
  StructuredMesh(double x0, double x1, int nx, double y0, double y1, int ny);

  double dx(int axis) const { return (hi[axis] - lo[axis]) / cells[axis]; }
  double h() const;
  int n_cells() const { return dim == 1 ? cells[0] : cells[0] * cells[1]; }
  double measure() const;
};

// Lagrange basis on the k Gauss-Legendre points of [-1, 1].
struct NodalBasis {
  int k = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  Eigen::MatrixXd diff;   // diff(i, j) = l_j'(x_i)
  Eigen::VectorXd left;   // l_j(-1)
  Eigen::VectorXd right;  // l_j(+1)

  explicit NodalBasis(int k);
  double eval(int j, double xi) const;
  double deriv(int j, double xi) const;
};

// One-dimensional view of the nodes along an axis: line l visits cell i,
// node a at index base(l) + i * cell_stride + a * node_stride.
struct LineLayout {
  int n_lines = 0;
  int n_cells = 0;
  int cell_stride = 0;
  int node_stride = 0;
  std::vector<int> base;
  int index(int line, int cell, int a) const {
    return base[line] + cell * cell_stride + a * node_stride;
  }
};

class DGSpace {
 public:
  DGSpace(StructuredMesh mesh, int k);

  const StructuredMesh& mesh() const { return mesh_; }
  const NodalBasis& basis() const { return basis_; }
  int dim() const { return mesh_.dim; }
  int k() const { return basis_.k; }
  int nodes_per_cell() const { return kd_; }
  int n_nodes() const { return mesh_.n_cells() * kd_; }

  int cell_of(int node) const { return node / kd_; }
  std::array<int, 2> cell_coords(int cell) const;
  std::array<int, 2> local_coords(int node) const;
  std::array<double, 2> node_position(int node) const;
  std::array<double, 2> cell_center(int cell) const;
  // quadrature weight times Jacobian: the diagonal mass matrix entry
  const Field& mass() const { return mass_; }
  const LineLayout& lines(int axis) const { return lines_[axis]; }
  // coordinate (along the other axis) of the boundary point served by a line
  double line_position(int axis, int line) const;
  // weight of a line's boundary point for edge quadrature (1 in 1D)
  double line_weight(int axis, int line) const;

  double integrate(const Field& u) const { return mass_.dot(u); }
  double l2_norm(const Field& u) const;

  // Value of the DG polynomial at a point; points on a cell face use the cell
  // with the larger index unless 'from_below' is set.
  double evaluate(const Field& u, std::array<double, 2> p, bool from_below = false) const;

 private:
  StructuredMesh mesh_;
  NodalBasis basis_;
  int kd_;
  Field mass_;
  std::array<LineLayout, 2> lines_;
};

// Nodal interpolation at the mapped Gauss points.
Field project(const std::function<double(double, double)>& f, const DGSpace& space);

struct EdgeTrace {
  double minus;  // trace from the lower-index side
  double plus;   // trace from the upper-index side
  double jump() const { return plus - minus; }
  double average() const { return 0.5 * (plus + minus); }
};

// One-sided limits at face 'face' (0..n_cells) of a node line. Boundary faces
// wrap when 'periodic' is set; otherwise a ConfigurationError is raised.
EdgeTrace trace_values(const Field& u, const DGSpace& space, int axis, int line, int face,
                       bool periodic);

}  // namespace grt
