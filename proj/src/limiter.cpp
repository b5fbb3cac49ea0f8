#include "grt/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace grt {

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

double minmod(double a, double b, double c) { return minmod(minmod(a, b), c); }

namespace {

// Legendre polynomial values at the basis nodes: P(p, a).
Eigen::MatrixXd legendre_at_nodes(const NodalBasis& B) {
  Eigen::MatrixXd P(B.k, B.k);
  for (int a = 0; a < B.k; ++a) {
    double x = B.nodes[a];
    double p0 = 1.0, p1 = x;
    P(0, a) = 1.0;
    if (B.k > 1) P(1, a) = x;
    for (int p = 2; p < B.k; ++p) {
      double p2 = ((2.0 * p - 1.0) * x * p1 - (p - 1.0) * p0) / p;
      P(p, a) = p2;
      p0 = p1;
      p1 = p2;
    }
  }
  return P;
}

}  // namespace

Eigen::VectorXd cell_means(const Field& u, const DGSpace& space) {
  const int nc = space.mesh().n_cells();
  const int kd = space.nodes_per_cell();
  const Field& w = space.mass();
  Eigen::VectorXd means(nc);
  for (int c = 0; c < nc; ++c) {
    auto seg = Eigen::seqN(c * kd, kd);
    means(c) = w(seg).dot(u(seg)) / w(seg).sum();
  }
  return means;
}

Field bound_limit(const Field& u, const DGSpace& space, double lo, double hi, int* limited,
                  int* outside) {
  const int kd = space.nodes_per_cell();
  const Eigen::VectorXd means = cell_means(u, space);
  Field out = u;
  int n_lim = 0, n_out = 0;
  for (Eigen::Index c = 0; c < means.size(); ++c) {
    const double m = means(c);
    if (m < lo || m > hi) {
      ++n_out;
      continue;
    }
    auto seg = Eigen::seqN(c * kd, kd);
    const double umax = u(seg).maxCoeff(), umin = u(seg).minCoeff();
    double theta = 1.0;
    if (umax > hi) theta = std::min(theta, (hi - m) / (umax - m));
    if (umin < lo) theta = std::min(theta, (m - lo) / (m - umin));
    if (theta < 1.0) {
      out(seg) = (m + theta * (u(seg).array() - m)).matrix();
      ++n_lim;
    }
  }
  if (limited) *limited = n_lim;
  if (outside) *outside = n_out;
  return out;
}

Field double_minmod_limit(const Field& u, const DGSpace& space, std::array<bool, 2> periodic,
                          int* limited) {
  const NodalBasis& B = space.basis();
  const int k = B.k;
  const int dim = space.dim();
  const int nx = space.mesh().cells[0];
  const int ny = dim == 2 ? space.mesh().cells[1] : 1;
  const int kd = space.nodes_per_cell();
  Field out = u;
  int count = 0;
  if (k < 2) {
    if (limited) *limited = 0;
    return out;
  }
  const Eigen::MatrixXd P = legendre_at_nodes(B);
  // first-order Legendre coefficient along an axis: sum w P1 u / (2/3)
  const Eigen::VectorXd means = cell_means(u, space);
  auto neighbour = [&](int cx, int cy, int ax, int step) -> int {
    int i = (ax == 0 ? cx : cy) + step;
    int n = ax == 0 ? nx : ny;
    if (i < 0 || i >= n) {
      if (!periodic[ax]) return -1;
      i = (i + n) % n;
    }
    return ax == 0 ? i + nx * cy : cx + nx * i;
  };

  for (int cy = 0; cy < ny; ++cy) {
    for (int cx = 0; cx < nx; ++cx) {
      const int c = cx + nx * cy;
      const int base = c * kd;
      std::array<double, 2> slope{0.0, 0.0}, lim{0.0, 0.0};
      bool changed = false;
      for (int ax = 0; ax < dim; ++ax) {
        double s = 0.0;
        for (int n = 0; n < kd; ++n) {
          int a = n % k, b = dim == 2 ? n / k : 0;
          double w = B.weights[a] * (dim == 2 ? B.weights[b] : 1.0);
          s += w * P(1, ax == 0 ? a : b) * u(base + n);
        }
        s /= (2.0 / 3.0) * (dim == 2 ? 2.0 : 1.0);
        slope[ax] = s;
        int up = neighbour(cx, cy, ax, 1), dn = neighbour(cx, cy, ax, -1);
        double r;
        if (up >= 0 && dn >= 0)
          r = minmod(s, means(up) - means(c), means(c) - means(dn));
        else if (up >= 0)
          r = minmod(s, means(up) - means(c));
        else if (dn >= 0)
          r = minmod(s, means(c) - means(dn));
        else
          r = s;
        lim[ax] = r;
        if (r != s) changed = true;
      }
      if (!changed) continue;
      ++count;
      for (int n = 0; n < kd; ++n) {
        int a = n % k, b = dim == 2 ? n / k : 0;
        double v = means(c) + lim[0] * P(1, a);
        if (dim == 2) v += lim[1] * P(1, b);
        out(base + n) = v;
      }
    }
  }
  if (limited) *limited = count;
  return out;
}

}  // namespace grt
