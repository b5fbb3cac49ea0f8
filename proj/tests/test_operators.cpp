#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "grt/error.hpp"
#include "test_helpers.hpp"

using namespace grt;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (I - L) u = 2 sin x has the solution u = sin x.
double laplace_error(int N, FluxFamily flux) {
  Bundle b(StructuredMesh(0.0, kTwoPi, N), 3, Bundle::unit_material(), flux);
  Field f = project([](double x, double) { return 2.0 * std::sin(x); }, b.space);
  Eigen::SparseMatrix<double> A(b.space.n_nodes(), b.space.n_nodes());
  A.setIdentity();
  A -= Eigen::SparseMatrix<double>(b.ops.laplacian());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(A);
  Field u = lu.solve(f);
  return l1_error(b.space, u, [](double x, double) { return std::sin(x); });
}

double rho_transport_error(int N) {
  Bundle b(StructuredMesh(0.0, kTwoPi, N), 3);
  Field rho = project([](double x, double) { return std::sin(x); }, b.space);
  AngularField gh = AngularField::Zero(b.space.n_nodes(), b.quad.size());
  AngularField d = b.ops.rho_transport(rho, gh);
  double e = 0.0;
  for (std::size_t m = 0; m < b.quad.size(); ++m) {
    double mu = b.quad.component(m, 0);
    e = std::max(e, l1_error(b.space, d.col(m), [mu](double x, double) { return mu * std::cos(x); }));
  }
  return e;
}

double g_div_error(int N) {
  Bundle b(StructuredMesh(0.0, kTwoPi, N), 3);
  AngularField g(b.space.n_nodes(), b.quad.size());
  for (int i = 0; i < b.space.n_nodes(); ++i)
    for (std::size_t m = 0; m < b.quad.size(); ++m)
      g(i, m) = b.quad.component(m, 0) * std::cos(b.space.node_position(i)[0]);
  Field d = b.ops.g_div(b.ops.angular_flux(g));
  return l1_error(b.space, d, [](double x, double) { return -std::sin(x) / 3.0; });
}

double transport_error(int N, int k) {
  Bundle b(StructuredMesh(0.0, kTwoPi, N), k);
  const int n = b.space.n_nodes();
  AngularField g(n, b.quad.size());
  Field rho = Field::Zero(n);
  for (int i = 0; i < n; ++i)
    for (std::size_t m = 0; m < b.quad.size(); ++m)
      g(i, m) = b.quad.component(m, 0) * std::sin(b.space.node_position(i)[0]);
  AngularField t = b.ops.transport(g, rho);
  double e = 0.0;
  for (std::size_t m = 0; m < b.quad.size(); ++m) {
    double mu = b.quad.component(m, 0);
    e = std::max(e, l1_error(b.space, t.col(m), [mu](double x, double) {
                   return (mu * mu - 1.0 / 3.0) * std::cos(x);
                 }));
  }
  return e;
}

}  // namespace

TEST_CASE("constants are in the kernel") {
  Bundle b(StructuredMesh(0.0, 1.0, 6, 0.0, 2.0, 5), 3);
  Field c = Field::Constant(b.space.n_nodes(), 2.5);
  VectorField q = b.ops.grad(c);
  CHECK(q.comp[0].cwiseAbs().maxCoeff() < 1e-13);
  CHECK(q.comp[1].cwiseAbs().maxCoeff() < 1e-13);
  CHECK(b.ops.laplace(c).cwiseAbs().maxCoeff() < 1e-10);
  AngularField g = AngularField::Zero(b.space.n_nodes(), b.quad.size());
  CHECK(b.ops.transport(g, c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("LDG Laplacian converges to the analytic one") {
  for (FluxFamily f : {FluxFamily::AlternatingLR, FluxFamily::AlternatingRL}) {
    double e1 = laplace_error(20, f), e2 = laplace_error(40, f);
    CHECK(std::log2(e1 / e2) >= 2.5);
  }
}

TEST_CASE("macroscopic flux divergence") {
  double e1 = g_div_error(20), e2 = g_div_error(40);
  CHECK(std::log2(e1 / e2) >= 2.0);
}

TEST_CASE("fluctuation transport") {
  Bundle b(StructuredMesh(0.0, kTwoPi, 10), 3);
  const int n = b.space.n_nodes();
  AngularField g(n, b.quad.size());
  for (int i = 0; i < n; ++i) g.row(i).setConstant(std::cos(b.space.node_position(i)[0]));
  AngularField t = b.ops.transport(g, Field::Zero(n));
  for (int i = 0; i < n; ++i) {
    double avg = 0.0;
    for (std::size_t m = 0; m < b.quad.size(); ++m) avg += b.quad.weights[m] * t(i, m);
    CHECK(std::abs(avg) < 1e-13);
  }
  for (int k : {2, 3}) {
    double e1 = transport_error(20, k), e2 = transport_error(40, k);
    CHECK(std::log2(e1 / e2) >= k - 1.0);
  }
}

TEST_CASE("rho transport is Omega times the gradient") {
  double e1 = rho_transport_error(20), e2 = rho_transport_error(40);
  CHECK(std::log2(e1 / e2) >= 2.0);
  CHECK(e2 < 3e-3);
}

TEST_CASE("interface weight limits") {
  CHECK(interface_weight(1.0, 0.0, 0.1, 0.5) == 1.0);
  CHECK(interface_weight(1.0, 1e8, 0.1, 0.5) == 0.0);
  CHECK(interface_weight(2.0, 0.5, 0.1, 0.5) == doctest::Approx(std::exp(-0.4)));
}

TEST_CASE("Laplacian stays symmetric and dissipative with the interface policy") {
  MaterialModel mat = Bundle::unit_material();
  Region thick;
  thick.name = "thick";
  thick.kappa = 50.0;
  thick.lo = {0.3, 0.3};
  thick.hi = {0.7, 0.6};
  mat.regions.push_back(thick);
  for (FluxFamily f : {FluxFamily::AlternatingLR, FluxFamily::AlternatingRL}) {
    Bundle b(StructuredMesh(0.0, 1.0, 10, 0.0, 1.0, 10), 2, mat, f, {1.0, 1.0}, {true, 0.01});
    Eigen::MatrixXd L(b.ops.laplacian());
    Eigen::MatrixXd A = b.space.mass().asDiagonal() * L;
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-10 * A.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
    CHECK(es.eigenvalues().maxCoeff() < 1e-9 * A.cwiseAbs().maxCoeff());
    // rho-hat leans toward the thin side at a thin-thick face
    Bundle plain(StructuredMesh(0.0, 1.0, 10, 0.0, 1.0, 10), 2, mat, f);
    CHECK((Eigen::MatrixXd(b.ops.grad_matrix(0)) - Eigen::MatrixXd(plain.ops.grad_matrix(0))).cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("flux family names") {
  CHECK(parse_flux_family("central") == FluxFamily::Central);
  CHECK(to_string(parse_flux_family("alternating-right-left")) == "alternating-right-left");
  CHECK_THROWS_AS(parse_flux_family("upwind"), InvalidParameter);
}
