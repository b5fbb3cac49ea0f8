// Acceptance checks 1-10. Prints the measured quantities and one PASS/FAIL
// line per criterion; exits nonzero when any criterion fails. Criterion
// numbers on the command line select a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "grt/error.hpp"
#include "grt/harness.hpp"
#include "grt/simulation.hpp"

using namespace grt;

namespace {

struct Verdict {
  bool pass = true;
  std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1
Verdict quadrature_exactness() {
  Verdict v;
  AngularQuadrature gl = gauss_legendre(8);
  double worst = 0.0;
  for (int k = 0; k <= 15; ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < gl.size(); ++m) s += gl.weights[m] * std::pow(gl.component(m, 0), k);
    worst = std::max(worst, std::abs(s - (k % 2 ? 0.0 : 2.0 / (k + 1))));
  }
  AngularQuadrature lc = legendre_chebyshev(8, 4);
  double w2 = 0.0;
  for (int ax = 0; ax < 2; ++ax) {
    double s = 0.0;
    for (std::size_t m = 0; m < lc.size(); ++m) s += lc.weights[m] * std::pow(lc.component(m, ax), 2);
    w2 = std::max(w2, std::abs(s / lc.sphere_measure - 1.0 / 3.0));
  }
  std::printf("  Gauss-Legendre(8) monomial error %.2e, Legendre-Chebyshev(8,4) second moment error %.2e\n", worst, w2);
  v.pass = worst <= 1e-13 && w2 <= 1e-13;
  return v;
}

// ---------------------------------------------------------------- 2
Verdict equilibrium_preservation() {
  Verdict v;
  for (int dim : {1, 2})
    for (double eps : {1.0, 1e-6})
      for (const char* tab : {"imex1", "ars443"}) {
        BenchmarkSpec s = dim == 1 ? accuracy_1d() : accuracy_2d();
        s.initial.kind = InitialKind::Equilibrium;
        s.initial.temperature = 0.9;
        s.scaling.eps = eps;
        s.tableau = tab;
        s.cells = dim == 1 ? std::array<int, 2>{40, 1} : std::array<int, 2>{8, 8};
        Simulation sim(s);
        const State s0 = sim.state();
        const double dt = 0.01 * sim.space().mesh().h();
        for (int i = 0; i < 100; ++i) sim.step(dt);
        double d = std::max({(sim.state().T - s0.T).cwiseAbs().maxCoeff(),
                             (sim.state().rho - s0.rho).cwiseAbs().maxCoeff(),
                             sim.state().g.cwiseAbs().maxCoeff()});
        std::printf("  %dD eps=%-6g %-6s  max change after 100 steps %.2e\n", dim, eps, tab, d);
        v.pass = v.pass && d <= 1e-12;
      }
  return v;
}

// ---------------------------------------------------------------- 3
struct Block1D {
  int k;
  double eps;
  double reference;  // rho L1 at N = 160
};

Verdict table1() {
  Verdict v;
  const std::vector<Block1D> blocks = {{2, 1.0, 4.34e-5}, {2, 1e-2, 3.86e-5}, {2, 1e-6, 3.86e-5},
                                       {3, 1.0, 3.34e-7}, {3, 1e-2, 2.53e-7}, {3, 1e-6, 2.53e-7},
                                       {4, 1.0, 2.71e-9}, {4, 1e-2, 1.70e-9}, {4, 1e-6, 1.86e-9}};
  for (const Block1D& b : blocks) {
    BenchmarkSpec s = accuracy_1d();
    s.k = b.k;
    s.scaling.eps = b.eps;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ConvergenceReport r = self_convergence(s, {20, 40, 80, 160});
      const ConvergenceRow& row = r.rows.back();
      const double order = row.rho_order_l1.value_or(0.0);
      const double ratio = row.rho.l1 / b.reference;
      const bool ok = std::abs(order - b.k) <= 0.3 && ratio <= 3.0 && ratio >= 1.0 / 3.0;
      std::printf("  k=%d eps=%-6g N=160 rho L1 %.3e (reference %.2e, ratio %.2f) order %.2f  %s  [%.0f s]\n", b.k,
                  b.eps, row.rho.l1, b.reference, ratio, order, ok ? "ok" : "MISS", seconds_since(t0));
      v.pass = v.pass && ok;
    } catch (const SolverFailure& e) {
      std::printf("  k=%d eps=%-6g solver failure: %s  [%.0f s]\n", b.k, b.eps, e.what(), seconds_since(t0));
      v.pass = false;
    }
  }
  return v;
}

// ---------------------------------------------------------------- 4
struct Block2D {
  int k;
  double eps;
  double reference;  // L1 order of the finest reference row
};

Verdict table2() {
  Verdict v;
  const std::vector<Block2D> blocks = {{2, 1.0, 1.99}, {2, 1e-2, 1.63}, {2, 1e-6, 1.62},
                                       {3, 1.0, 2.96}, {3, 1e-2, 2.83}, {3, 1e-6, 2.82},
                                       {4, 1.0, 3.87}, {4, 1e-2, 3.68}, {4, 1e-6, 3.89}};
  for (const Block2D& b : blocks) {
    BenchmarkSpec s = accuracy_2d();
    s.k = b.k;
    s.scaling.eps = b.eps;
    auto t0 = std::chrono::steady_clock::now();
    try {
      // runs at 16, 32 and 64: the order of e(32|64) against e(16|32)
      ConvergenceReport r = self_convergence(s, {16, 32});
      const ConvergenceRow& row = r.rows.back();
      const double order = row.rho_order_l1.value_or(0.0);
      const bool ok = std::abs(order - b.reference) <= 0.4;
      std::printf("  k=%d eps=%-6g rho L1 %.3e -> %.3e order %.2f (reference %.2f)  %s  [%.0f s]\n", b.k, b.eps,
                  r.rows.front().rho.l1, row.rho.l1, order, b.reference, ok ? "ok" : "MISS", seconds_since(t0));
      v.pass = v.pass && ok;
    } catch (const SolverFailure& e) {
      std::printf("  k=%d eps=%-6g solver failure: %s  [%.0f s]\n", b.k, b.eps, e.what(), seconds_since(t0));
      v.pass = false;
    }
  }
  return v;
}

// ---------------------------------------------------------------- 5
Verdict ap_limit() {
  Verdict v;
  BenchmarkSpec s = accuracy_1d();
  s.k = 3;
  s.cells = {40, 1};
  s.scaling.eps = 1e-6;
  Simulation ap(s);
  ap.run();
  BenchmarkSpec d = s;
  d.scheme = Scheme::Diffusion;
  Simulation lim(d);
  lim.run();
  const double diff = (ap.state().T - lim.state().T).cwiseAbs().maxCoeff();
  std::printf("  |T_AP - T_D|_inf at t=0.2: %.3e\n", diff);
  v.pass = diff <= 1e-3;
  return v;
}

// ---------------------------------------------------------------- 6
Verdict stiff_anchor() {
  Verdict v;
  BenchmarkSpec s = accuracy_1d();
  s.cells = {40, 1};
  s.scaling.eps = 1e-6;
  Simulation sim(s);
  sim.step(0.01 * sim.space().mesh().h());
  Field phi = planck(sim.state().T, s.constants, sim.medium().sphere_measure());
  const double d = (sim.state().rho - phi).cwiseAbs().maxCoeff();
  std::printf("  |rho - Phi(T)|_inf after one step: %.3e\n", d);
  v.pass = d <= 1e-4;
  return v;
}

// ---------------------------------------------------------------- 7
double independent_energy(const Simulation& sim) {
  const DGSpace& s = sim.space();
  const double c = sim.medium().constants().c;
  double e = 0.0;
  for (int i = 0; i < s.n_nodes(); ++i)
    e += s.mass()(i) * (sim.state().rho(i) + c * sim.medium().cv_tilde()(i) * sim.state().T(i));
  return e;
}

// Net outward energy flux of a 1D close-loop run from the interior traces
// and the boundary Planckians.
double independent_outflow_rate(const Simulation& sim) {
  const DGSpace& sp = sim.space();
  const NodalBasis& B = sp.basis();
  const AngularQuadrature& q = sim.quadrature();
  const Medium& m = sim.medium();
  const State& st = sim.state();
  const double et = m.eps_tilde();
  double total = 0.0;
  for (int side = 0; side < 2; ++side) {
    const int cell = side == 0 ? 0 : sp.mesh().cells[0] - 1;
    const Eigen::VectorXd& ends = side == 0 ? B.left : B.right;
    const double Tb = sim.spec().boundary.rules[0][side].temperature;
    const double inflow = m.planck_coefficient() * std::pow(Tb, 4);
    const double normal = side == 0 ? -1.0 : 1.0;
    for (std::size_t o = 0; o < q.size(); ++o) {
      const double mu = q.component(o, 0);
      double I;
      if (mu * normal < 0.0) {
        I = inflow;
      } else {
        I = 0.0;
        for (int a = 0; a < B.k; ++a) I += ends(a) * (st.rho(cell * B.k + a) + et * st.g(cell * B.k + a, o));
      }
      total += normal * q.weights[o] * mu * I / q.sphere_measure;
    }
  }
  return m.constants().c / (std::sqrt(m.scaling().sigma0) * et) * total;
}

struct MarshakRuns {
  bool done = false;
  std::map<double, double> ap2b, d2b, ap2a, d2a;
  double h2b = 0.0;
  double balance = 0.0, outflow = 0.0, rate_mismatch = 0.0;
  bool ok = true;
  std::string failure;
};

MarshakRuns& marshak_runs() {
  static MarshakRuns r;
  if (r.done) return r;
  r.done = true;
  auto fronts = [](Simulation& sim, std::map<double, double>& out, const std::function<void(Simulation&)>& also) {
    sim.run([&](const Simulation& s) {
      auto f = front_position(s.state().T, s.space(), s.spec().front_threshold);
      out[std::round(s.state().t * 1000.0) / 1000.0] = f.value_or(std::nan(""));
      if (also) also(const_cast<Simulation&>(s));
    });
  };
  try {
    auto t0 = std::chrono::steady_clock::now();
    BenchmarkSpec b = marshak("2B");
    Simulation ap(b);
    r.h2b = ap.space().mesh().h();
    const double e0 = independent_energy(ap);
    fronts(ap, r.ap2b, [&](Simulation& s) {
      double lib = s.boundary().outflow_rate(s.state().rho, s.state().g,
                                             s.medium().constants().c / std::sqrt(s.medium().scaling().sigma0));
      double ind = independent_outflow_rate(s);
      r.rate_mismatch = std::max(r.rate_mismatch, std::abs(lib - ind) / std::max(std::abs(ind), 1e-300));
    });
    r.outflow = ap.stats().outflow;
    r.balance = std::abs(independent_energy(ap) - e0 + r.outflow) / std::abs(r.outflow);
    std::printf("  marshak 2B AP run: %ld steps, Picard max %d [%.0f s]\n", ap.stats().steps, ap.stats().picard_max,
                seconds_since(t0));
    BenchmarkSpec bd = b;
    bd.scheme = Scheme::Diffusion;
    bd.cfl = 1.0;
    Simulation d(bd);
    fronts(d, r.d2b, {});
    t0 = std::chrono::steady_clock::now();
    BenchmarkSpec a = marshak("2A");
    Simulation apa(a);
    fronts(apa, r.ap2a, {});
    std::printf("  marshak 2A AP run: %ld steps, Picard max %d [%.0f s]\n", apa.stats().steps,
                apa.stats().picard_max, seconds_since(t0));
    BenchmarkSpec ad = a;
    ad.scheme = Scheme::Diffusion;
    ad.cfl = 1.0;
    Simulation da(ad);
    fronts(da, r.d2a, {});
  } catch (const SolverFailure& e) {
    r.ok = false;
    r.failure = e.what();
  }
  return r;
}

Verdict conservation() {
  Verdict v;
  for (double eps : {1.0, 1e-6}) {
    BenchmarkSpec s = accuracy_1d();
    s.scaling.eps = eps;
    Simulation sim(s);
    const double measure = sim.space().mesh().measure();
    double worst = 0.0;
    double prev = independent_energy(sim);
    sim.run({}, [&](const Simulation& x, const StepStats&) {
      const double e = independent_energy(x);
      worst = std::max(worst, std::abs(e - prev));
      prev = e;
    });
    std::printf("  periodic eps=%g: max per-step |dE| %.2e (bound %.2e)\n", eps, worst, 1e-9 * measure);
    v.pass = v.pass && worst <= 1e-9 * measure;
  }
  MarshakRuns& m = marshak_runs();
  if (!m.ok) {
    std::printf("  marshak run failed: %s\n", m.failure.c_str());
    v.pass = false;
    return v;
  }
  std::printf("  marshak 2B: |dE + outflow| / |outflow| = %.2e, boundary rate vs independent edge sum %.2e\n",
              m.balance, m.rate_mismatch);
  v.pass = v.pass && m.balance <= 1e-6 && m.rate_mismatch <= 1e-10;
  return v;
}

// ---------------------------------------------------------------- 8
// "stable": finite, and T, rho and g stay within 10x their initial maxima.
// A Picard failure counts as a blow-up when the state had already grown or
// the increments are not small.
bool stable_run(int N, double penalty, std::string& info, bool& blew_up) {
  BenchmarkSpec s = accuracy_1d();
  s.scaling.eps = 1e-6;
  s.picard.delta = 1e-9;
  s.cells = {N, 1};
  s.penalty_weight = penalty;
  Simulation sim(s);
  auto size = [&]() {
    const State& st = sim.state();
    return std::array<double, 3>{st.T.cwiseAbs().maxCoeff(), st.rho.cwiseAbs().maxCoeff(), st.g.cwiseAbs().maxCoeff()};
  };
  const std::array<double, 3> init = size();
  auto grown = [&](const std::array<double, 3>& now) {
    for (int i = 0; i < 3; ++i)
      if (!std::isfinite(now[i]) || now[i] > 10.0 * init[i]) return true;
    return false;
  };
  const double dt = 0.5 * sim.space().mesh().h();
  char buf[240];
  try {
    for (int i = 1; i <= 2000; ++i) {
      sim.step(dt);
      const auto now = size();
      if (grown(now)) {
        std::snprintf(buf, sizeof buf, "grew at step %d (max |T| %.2e, |rho| %.2e, |g| %.2e)", i, now[0], now[1], now[2]);
        info = buf;
        blew_up = true;
        return false;
      }
    }
  } catch (const SolverFailure& e) {
    const double last = e.history().empty() ? 0.0 : e.history().back();
    blew_up = grown(size()) || !std::isfinite(last) || last > 1e-3;
    std::snprintf(buf, sizeof buf, "solver failure at step %ld (%s): %s", sim.stats().steps + 1,
                  blew_up ? "after growth" : "stalled", e.what());
    info = buf;
    return false;
  }
  const auto now = size();
  std::snprintf(buf, sizeof buf, "bounded (max |T| %.4f, |rho| %.4f, |g| %.3e)", now[0], now[1], now[2]);
  info = buf;
  return true;
}

Verdict hyperbolic_cfl() {
  Verdict v;
  bool blowup = false;
  for (int N : {40, 80}) {
    std::string a, b;
    bool pen_blew = false, raw_blew = false;
    const bool pen = stable_run(N, -1.0, a, pen_blew);
    stable_run(N, 0.0, b, raw_blew);
    std::printf("  N=%d dt=0.5h 2000 steps: penalized %s; omega=0 %s\n", N, a.c_str(), b.c_str());
    v.pass = v.pass && pen;
    blowup = blowup || raw_blew;
  }
  v.pass = v.pass && blowup;
  return v;
}

// ---------------------------------------------------------------- 9
Verdict marshak_fronts() {
  Verdict v;
  MarshakRuns& m = marshak_runs();
  if (!m.ok) {
    std::printf("  marshak run failed: %s\n", m.failure.c_str());
    v.pass = false;
    return v;
  }
  for (double t : {10.0, 30.0, 50.0, 74.0}) {
    const double a = m.ap2b[t], d = m.d2b[t];
    const bool ok = std::abs(a - d) <= 2.0 * m.h2b;
    std::printf("  2B t=%-4g AP front %.4f  D front %.4f  |diff| %.4f (2h %.4f)  %s\n", t, a, d, std::abs(a - d),
                2.0 * m.h2b, ok ? "ok" : "MISS");
    v.pass = v.pass && ok;
  }
  for (double t : {0.2, 0.4, 0.6, 0.8, 1.0})
    std::printf("  2A t=%-4g AP front %.4f  D front %.4f\n", t, m.ap2a[t], m.d2a[t]);
  const bool behind = m.ap2a[1.0] < m.d2a[1.0];
  std::printf("  2A at t=1: AP front %s the D front\n", behind ? "behind" : "NOT behind");
  v.pass = v.pass && behind;
  return v;
}

// ---------------------------------------------------------------- 10
Verdict tophat_smoke() {
  Verdict v;
  BenchmarkSpec s = tophat();
  auto t0 = std::chrono::steady_clock::now();
  double tmin = 1e300, tmax = -1e300, rmin = 1e300, rmax = -1e300;
  bool failed = false;
  Simulation sim(s);
  try {
    sim.run({}, [&](const Simulation& x, const StepStats&) {
      tmin = std::min(tmin, x.state().T.minCoeff());
      tmax = std::max(tmax, x.state().T.maxCoeff());
      Field tr = x.radiative_temperature();
      rmin = std::min(rmin, tr.minCoeff());
      rmax = std::max(rmax, tr.maxCoeff());
    });
  } catch (const SolverFailure& e) {
    std::printf("  solver failure at t=%g: %s\n", sim.state().t, e.what());
    failed = true;
  }
  std::printf("  %ld steps to t=%g [%.0f s]; T in [%.4f, %.4f], T_r in [%.4f, %.4f]\n", sim.stats().steps,
              sim.state().t, seconds_since(t0), tmin, tmax, rmin, rmax);
  const double lo = 0.05 - 1e-6, hi = 0.5 + 1e-3;
  const bool bounded = tmin >= lo && tmax <= hi && rmin >= lo && rmax <= hi;
  // probe A: after T_r first exceeds its initial value by 1e-3, it may not drop
  const ProbeSeries* A = nullptr;
  for (const ProbeSeries& p : sim.probes())
    if (p.label == "A") A = &p;
  bool monotone = A && !A->Tr.empty();
  double worst_drop = 0.0;
  if (A) {
    std::size_t start = 0;
    while (start < A->Tr.size() && A->Tr[start] <= A->Tr.front() + 1e-3) ++start;
    monotone = monotone && start < A->Tr.size();
    for (std::size_t i = start + 1; i < A->Tr.size(); ++i) worst_drop = std::max(worst_drop, A->Tr[i - 1] - A->Tr[i]);
    if (start < A->Tr.size())
      std::printf("  probe A: delay until t=%.2f, T_r %.4f -> %.4f, largest drop %.2e\n", A->times[start],
                  A->Tr[start], A->Tr.back(), worst_drop);
  }
  monotone = monotone && worst_drop <= 1e-6;
  std::printf("  solver failure: %s; temperatures within [%.6f, %.3f]: %s; probe A monotone: %s\n",
              failed ? "yes" : "no", lo, hi, bounded ? "yes" : "no", monotone ? "yes" : "no");
  v.pass = !failed && bounded && monotone;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"quadrature exactness", quadrature_exactness},
      {"equilibrium preservation", equilibrium_preservation},
      {"1D accuracy table", table1},
      {"2D accuracy table", table2},
      {"AP limit against the diffusion solver", ap_limit},
      {"stiff relaxation anchor", stiff_anchor},
      {"conservation", conservation},
      {"hyperbolic time step with penalization", hyperbolic_cfl},
      {"Marshak fronts", marshak_fronts},
      {"tophat smoke run", tophat_smoke}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  std::vector<std::string> lines;
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    std::printf("[%d] %s\n", id, criteria[i].first);
    std::fflush(stdout);
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      std::printf("  unexpected error: %s\n", e.what());
      v.pass = false;
    }
    char line[200];
    std::snprintf(line, sizeof line, "CRITERION %d %s: %s (%.0f s)", id, criteria[i].first, v.pass ? "PASS" : "FAIL",
                  seconds_since(t0));
    std::printf("%s\n", line);
    std::fflush(stdout);
    lines.push_back(line);
    all = all && v.pass;
  }
  std::printf("\nSummary\n");
  for (const std::string& l : lines) std::printf("%s\n", l.c_str());
  return all ? 0 : 1;
}
