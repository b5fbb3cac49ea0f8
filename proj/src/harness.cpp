#include "grt/harness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "grt/error.hpp"

namespace grt {

ErrorNorms coarse_fine_error(const Field& uc, const DGSpace& coarse, const Field& uf,
                             const DGSpace& fine) {
  if (uc.size() != coarse.n_nodes() || uf.size() != fine.n_nodes())
    throw InvalidParameter("coarse_fine_error: field sizes do not match their spaces");
  ErrorNorms e;
  for (int i = 0; i < coarse.n_nodes(); ++i) {
    auto p = coarse.node_position(i);
    double vf = 0.5 * (fine.evaluate(uf, p, false) + fine.evaluate(uf, p, true));
    double d = std::abs(uc(i) - vf);
    e.l1 += coarse.mass()(i) * d;
    e.linf = std::max(e.linf, d);
  }
  return e;
}

double observed_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nan("");
  return std::log2(e_coarse / e_fine);
}

ConvergenceReport self_convergence(const BenchmarkSpec& spec, const std::vector<int>& resolutions) {
  if (resolutions.empty()) throw InvalidParameter("self_convergence: no resolutions");
  for (std::size_t i = 1; i < resolutions.size(); ++i)
    if (resolutions[i] != 2 * resolutions[i - 1])
      throw InvalidParameter("self_convergence: resolutions must double");
  ConvergenceReport rep;
  rep.label = spec.name;
  rep.k = spec.k;
  rep.eps = spec.scaling.eps;

  std::vector<int> runs = resolutions;
  runs.push_back(2 * resolutions.back());
  std::unique_ptr<Simulation> prev;
  for (int N : runs) {
    BenchmarkSpec s = spec;
    s.cells = {N, spec.dim == 2 ? N : 1};
    s.snapshot_times.clear();
    auto sim = std::make_unique<Simulation>(s);
    sim->run();
    if (prev) {
      ConvergenceRow row;
      row.N = prev->spec().cells[0];
      row.T = coarse_fine_error(prev->state().T, prev->space(), sim->state().T, sim->space());
      row.rho = coarse_fine_error(prev->state().rho, prev->space(), sim->state().rho, sim->space());
      if (!rep.rows.empty()) {
        const ConvergenceRow& last = rep.rows.back();
        row.order_l1 = observed_order(last.T.l1, row.T.l1);
        row.order_linf = observed_order(last.T.linf, row.T.linf);
        row.rho_order_l1 = observed_order(last.rho.l1, row.rho.l1);
        row.rho_order_linf = observed_order(last.rho.linf, row.rho.linf);
      }
      rep.rows.push_back(row);
    }
    prev = std::move(sim);
  }
  return rep;
}

double conservation_residual(double before, double after, double outflow) {
  return std::abs(after - before + outflow);
}

std::optional<double> front_position(const Field& T, const DGSpace& space, double threshold) {
  if (space.dim() != 1) throw InvalidParameter("front_position needs a 1D field");
  const int n = space.n_nodes();
  if (T.size() != n) throw InvalidParameter("front_position: field size mismatch");
  for (int i = 0; i + 1 < n; ++i) {
    double a = T(i) - threshold, b = T(i + 1) - threshold;
    if (a == 0.0) return space.node_position(i)[0];
    if ((a > 0.0) != (b > 0.0) || b == 0.0) {
      double x0 = space.node_position(i)[0], x1 = space.node_position(i + 1)[0];
      return x0 + (x1 - x0) * a / (a - b);
    }
  }
  return std::nullopt;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string order_text(const std::optional<double>& o) {
  return o ? fmt("%8.2f", *o) : std::string("      --");
}

}  // namespace

std::string format_table(const std::vector<ConvergenceReport>& reports) {
  std::ostringstream os;
  os << "  k  eps        N    L1 error    order   Linf error   order   (T; rho L1 / order)\n";
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      os << fmt("%3.0f", r.k) << "  " << fmt("%-8.0e", r.eps) << fmt("%5.0f", row.N) << "  "
         << fmt("%10.2E", row.T.l1) << order_text(row.order_l1) << "  "
         << fmt("%10.2E", row.T.linf) << order_text(row.order_linf) << "   "
         << fmt("%10.2E", row.rho.l1) << order_text(row.rho_order_l1) << "\n";
    }
  }
  return os.str();
}

std::string format_csv(const std::vector<ConvergenceReport>& reports) {
  std::ostringstream os;
  os << "benchmark,k,eps,N,T_l1,T_l1_order,T_linf,T_linf_order,rho_l1,rho_l1_order,rho_linf,rho_linf_order\n";
  auto num = [](double v) { return fmt("%.17g", v); };
  auto opt = [&](const std::optional<double>& o) { return o ? num(*o) : std::string(); };
  for (const auto& r : reports)
    for (const auto& row : r.rows)
      os << r.label << ',' << r.k << ',' << num(r.eps) << ',' << row.N << ',' << num(row.T.l1) << ','
         << opt(row.order_l1) << ',' << num(row.T.linf) << ',' << opt(row.order_linf) << ','
         << num(row.rho.l1) << ',' << opt(row.rho_order_l1) << ',' << num(row.rho.linf) << ','
         << opt(row.rho_order_linf) << '\n';
  return os.str();
}

}  // namespace grt
