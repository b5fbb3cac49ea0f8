#pragma once

#include <array>

#include "grt/mesh.hpp"

namespace grt {

double minmod(double a, double b);
double minmod(double a, double b, double c);

// Double minmod slope limiter on the Legendre modes of each cell, applied
// dimension by dimension. A cell whose slope is replaced keeps its mean and
// its (limited) linear modes; all higher modes are dropped. Returns the
// number of limited cells through 'limited' when given.
Field double_minmod_limit(const Field& u, const DGSpace& space, std::array<bool, 2> periodic,
                          int* limited = nullptr);

// Scales each cell toward its mean until all nodal values lie in [lo, hi].
// Cells whose mean is already outside the range are left alone and counted
// in 'outside'.
Field bound_limit(const Field& u, const DGSpace& space, double lo, double hi, int* limited = nullptr,
                  int* outside = nullptr);

// Cell averages of a nodal field.
Eigen::VectorXd cell_means(const Field& u, const DGSpace& space);

}  // namespace grt
