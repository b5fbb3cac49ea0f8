#include "grt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "grt/error.hpp"

namespace grt {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

const char* law_name(OpacityLaw l) { return l == OpacityLaw::Constant ? "constant" : "power"; }

const char* initial_name(InitialKind k) {
  switch (k) {
    case InitialKind::Accuracy1D: return "accuracy1d";
    case InitialKind::Accuracy2D: return "accuracy2d";
    case InitialKind::Equilibrium: return "equilibrium";
  }
  return "equilibrium";
}

std::string boundary_text(const BoundaryRule& r) {
  switch (r.kind) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Outflow: return "outflow";
    case BoundaryKind::CloseLoop: return "closeloop " + num(r.temperature);
    case BoundaryKind::HeatedSegment:
      return "heated " + num(r.temperature) + " " + num(r.seg_lo) + " " + num(r.seg_hi);
  }
  return "periodic";
}

const char* kSideKeys[2][2] = {{"x_low", "x_high"}, {"y_low", "y_high"}};

// Section -> key -> (value, line)
using Table = std::map<std::string, std::map<std::string, std::pair<std::string, int>>>;

class Reader {
 public:
  explicit Reader(Table t) : t_(std::move(t)) {}

  bool has_section(const std::string& s) const { return t_.count(s) > 0; }
  bool has(const std::string& s, const std::string& k) const {
    auto it = t_.find(s);
    return it != t_.end() && it->second.count(k) > 0;
  }
  const std::string& raw(const std::string& s, const std::string& k) {
    auto it = t_.find(s);
    if (it == t_.end() || !it->second.count(k))
      throw ConfigurationError("missing key '" + k + "' in section [" + s + "]");
    used_.insert(s + "\n" + k);
    return it->second.at(k).first;
  }
  int line(const std::string& s, const std::string& k) const { return t_.at(s).at(k).second; }

  double real(const std::string& s, const std::string& k) {
    const std::string& v = raw(s, k);
    return to_real(v, s, k);
  }
  double real_or(const std::string& s, const std::string& k, double d) {
    return has(s, k) ? real(s, k) : d;
  }
  int integer(const std::string& s, const std::string& k) {
    const std::string& v = raw(s, k);
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail(s, k, "expected an integer, got '" + v + "'");
    return out;
  }
  int integer_or(const std::string& s, const std::string& k, int d) {
    return has(s, k) ? integer(s, k) : d;
  }
  bool boolean_or(const std::string& s, const std::string& k, bool d) {
    if (!has(s, k)) return d;
    const std::string& v = raw(s, k);
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    fail(s, k, "expected a boolean, got '" + v + "'");
    return d;
  }
  std::string text_or(const std::string& s, const std::string& k, const std::string& d) {
    return has(s, k) ? raw(s, k) : d;
  }
  std::vector<double> list(const std::string& s, const std::string& k) {
    std::vector<double> out;
    const std::string& v = raw(s, k);
    for (const auto& w : split(v, ',')) out.push_back(to_real(w, s, k));
    return out;
  }
  double to_real(const std::string& v, const std::string& s, const std::string& k) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) fail(s, k, "expected a number, got '" + v + "'");
    return out;
  }
  [[noreturn]] void fail(const std::string& s, const std::string& k, const std::string& msg) const {
    int ln = has(s, k) ? line(s, k) : 0;
    throw ConfigurationError("line " + std::to_string(ln) + ": [" + s + "] " + k + ": " + msg);
  }
  void check_unused() const {
    for (const auto& [s, keys] : t_)
      for (const auto& [k, v] : keys)
        if (!used_.count(s + "\n" + k))
          throw ConfigurationError("line " + std::to_string(v.second) + ": unknown key '" + k +
                                   "' in section [" + s + "]");
  }
  // keys of a section in file order, all marked as used
  std::vector<std::string> keys(const std::string& s) {
    std::vector<std::pair<int, std::string>> v;
    for (const auto& [k, val] : t_.at(s)) v.push_back({val.second, k});
    std::sort(v.begin(), v.end());
    std::vector<std::string> out;
    for (auto& [ln, k] : v) {
      used_.insert(s + "\n" + k);
      out.push_back(k);
    }
    return out;
  }
  std::vector<std::string> sections_with_prefix(const std::string& p) const {
    std::vector<std::string> out;
    for (const auto& [s, keys] : t_)
      if (s.rfind(p, 0) == 0) out.push_back(s);
    return out;
  }

 private:
  Table t_;
  std::set<std::string> used_;
};

Table tokenize(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line, section;
  int ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigurationError("line " + std::to_string(ln) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigurationError("line " + std::to_string(ln) + ": empty section name");
      if (t.count(section)) throw ConfigurationError("line " + std::to_string(ln) + ": duplicate section [" + section + "]");
      t[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigurationError("line " + std::to_string(ln) + ": expected 'key = value'");
    if (section.empty()) throw ConfigurationError("line " + std::to_string(ln) + ": key outside of a section");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigurationError("line " + std::to_string(ln) + ": empty key");
    if (t[section].count(key))
      throw ConfigurationError("line " + std::to_string(ln) + ": duplicate key '" + key + "'");
    t[section][key] = {val, ln};
  }
  return t;
}

BoundaryRule parse_boundary(Reader& r, const std::string& key) {
  auto w = words(r.raw("boundary", key));
  BoundaryRule b;
  auto need = [&](std::size_t n) {
    if (w.size() != n) r.fail("boundary", key, "wrong number of parameters for '" + w[0] + "'");
  };
  if (w.empty()) r.fail("boundary", key, "empty boundary rule");
  if (w[0] == "periodic") {
    need(1);
    b.kind = BoundaryKind::Periodic;
  } else if (w[0] == "outflow") {
    need(1);
    b.kind = BoundaryKind::Outflow;
  } else if (w[0] == "closeloop") {
    need(2);
    b.kind = BoundaryKind::CloseLoop;
    b.temperature = r.to_real(w[1], "boundary", key);
  } else if (w[0] == "heated") {
    need(4);
    b.kind = BoundaryKind::HeatedSegment;
    b.temperature = r.to_real(w[1], "boundary", key);
    b.seg_lo = r.to_real(w[2], "boundary", key);
    b.seg_hi = r.to_real(w[3], "boundary", key);
  } else {
    r.fail("boundary", key, "unknown boundary kind '" + w[0] + "'");
  }
  return b;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s;
}

}  // namespace

std::string serialize_config(const BenchmarkSpec& s) {
  std::ostringstream os;
  os << "[benchmark]\n"
     << "name = " << s.name << "\n"
     << "dimension = " << s.dim << "\n"
     << "scheme = " << (s.scheme == Scheme::AP ? "ap" : "diffusion") << "\n\n";
  os << "[domain]\n"
     << "x0 = " << num(s.lo[0]) << "\nx1 = " << num(s.hi[0]) << "\ncells_x = " << s.cells[0] << "\n";
  if (s.dim == 2)
    os << "y0 = " << num(s.lo[1]) << "\ny1 = " << num(s.hi[1]) << "\ncells_y = " << s.cells[1] << "\n";
  os << "\n[discretization]\n"
     << "k = " << s.k << "\n"
     << "tableau = " << s.tableau << "\n"
     << "flux = " << to_string(s.flux) << "\n"
     << "cfl = " << num(s.cfl) << "\n"
     << "angular_n = " << s.angular_n << "\n";
  if (s.dim == 2) os << "angular_nc = " << s.angular_nc << "\n";
  os << "limiter = " << (s.limiter ? "on" : "off") << "\n"
     << "limit_g = " << (s.limit_g ? "on" : "off") << "\n"
     << "bound_limiter = " << (s.bound_limiter ? "on" : "off") << "\n"
     << "interface_policy = " << (s.interface_policy ? "on" : "off") << "\n"
     << "penalty_weight = " << num(s.penalty_weight) << "\n\n";
  os << "[physics]\n"
     << "c = " << num(s.constants.c) << "\na = " << num(s.constants.a) << "\n"
     << "eps = " << num(s.scaling.eps) << "\nsigma0 = " << num(s.scaling.sigma0) << "\n\n";
  os << "[initial]\nkind = " << initial_name(s.initial.kind) << "\n";
  switch (s.initial.kind) {
    case InitialKind::Accuracy1D:
      os << "b0 = " << num(s.initial.b0) << "\nb1 = " << num(s.initial.b1) << "\n";
      break;
    case InitialKind::Accuracy2D:
      os << "a1 = " << num(s.initial.a1) << "\nb1 = " << num(s.initial.b1) << "\na2 = "
         << num(s.initial.a2) << "\nb2 = " << num(s.initial.b2) << "\n";
      break;
    case InitialKind::Equilibrium: os << "temperature = " << num(s.initial.temperature) << "\n"; break;
  }
  os << "\n[boundary]\n";
  for (int ax = 0; ax < s.dim; ++ax)
    for (int side = 0; side < 2; ++side)
      os << kSideKeys[ax][side] << " = " << boundary_text(s.boundary.rules[ax][side]) << "\n";
  os << "\n[time]\nfinal = " << num(s.final_time) << "\n";
  if (!s.snapshot_times.empty()) os << "snapshots = " << join(s.snapshot_times) << "\n";
  os << "\n[picard]\n"
     << "delta = " << num(s.picard.delta) << "\nmax_iterations = " << s.picard.max_picard << "\n"
     << "newton_tol = " << num(s.picard.newton_tol) << "\nmax_newton = " << s.picard.max_newton
     << "\nlagged_opacity = " << (s.picard.lagged_opacity ? "on" : "off")
     << "\ndirect_limit = " << s.picard.direct_limit << "\nlinear_tol = " << num(s.picard.linear_tol) << "\n\n";
  os << "[output]\nprobe_interval = " << num(s.probe_interval)
     << "\nfront_threshold = " << num(s.front_threshold) << "\n";
  for (std::size_t i = 0; i < s.material.regions.size(); ++i) {
    const Region& r = s.material.regions[i];
    os << "\n[region." << i << "]\n"
       << "name = " << r.name << "\nlaw = " << law_name(r.law) << "\nkappa = " << num(r.kappa)
       << "\ndensity = " << num(r.density) << "\nspecific_heat = " << num(r.specific_heat) << "\n";
    if (i > 0) {
      os << "x = " << num(r.lo[0]) << ", " << num(r.hi[0]) << "\n";
      if (s.dim == 2) os << "y = " << num(r.lo[1]) << ", " << num(r.hi[1]) << "\n";
    }
  }
  if (!s.probes.empty()) {
    os << "\n[probes]\n";
    for (const Probe& p : s.probes) os << p.label << " = " << num(p.position[0]) << ", " << num(p.position[1]) << "\n";
  }
  return os.str();
}

BenchmarkSpec parse_config(const std::string& text) {
  Reader r(tokenize(text));
  BenchmarkSpec s;
  s.name = r.raw("benchmark", "name");
  s.dim = r.integer("benchmark", "dimension");
  if (s.dim != 1 && s.dim != 2) r.fail("benchmark", "dimension", "must be 1 or 2");
  std::string scheme = r.text_or("benchmark", "scheme", "ap");
  if (scheme == "ap") s.scheme = Scheme::AP;
  else if (scheme == "diffusion") s.scheme = Scheme::Diffusion;
  else r.fail("benchmark", "scheme", "expected 'ap' or 'diffusion'");

  s.lo[0] = r.real("domain", "x0");
  s.hi[0] = r.real("domain", "x1");
  s.cells[0] = r.integer("domain", "cells_x");
  if (s.dim == 2) {
    s.lo[1] = r.real("domain", "y0");
    s.hi[1] = r.real("domain", "y1");
    s.cells[1] = r.integer("domain", "cells_y");
  } else {
    s.lo[1] = 0.0;
    s.hi[1] = 1.0;
    s.cells[1] = 1;
  }

  s.k = r.integer("discretization", "k");
  s.tableau = r.text_or("discretization", "tableau", s.tableau);
  if (r.has("discretization", "flux")) {
    try {
      s.flux = parse_flux_family(r.raw("discretization", "flux"));
    } catch (const std::exception& e) {
      r.fail("discretization", "flux", e.what());
    }
  }
  s.cfl = r.real_or("discretization", "cfl", s.cfl);
  s.angular_n = r.integer_or("discretization", "angular_n", s.angular_n);
  s.angular_nc = r.integer_or("discretization", "angular_nc", s.angular_nc);
  s.limiter = r.boolean_or("discretization", "limiter", false);
  s.limit_g = r.boolean_or("discretization", "limit_g", false);
  s.bound_limiter = r.boolean_or("discretization", "bound_limiter", false);
  s.interface_policy = r.boolean_or("discretization", "interface_policy", false);
  s.penalty_weight = r.real_or("discretization", "penalty_weight", -1.0);

  s.constants.c = r.real_or("physics", "c", s.constants.c);
  s.constants.a = r.real_or("physics", "a", s.constants.a);
  s.scaling.eps = r.real("physics", "eps");
  s.scaling.sigma0 = r.real("physics", "sigma0");

  std::string kind = r.raw("initial", "kind");
  if (kind == "accuracy1d") {
    s.initial.kind = InitialKind::Accuracy1D;
    s.initial.b0 = r.real("initial", "b0");
    s.initial.b1 = r.real("initial", "b1");
  } else if (kind == "accuracy2d") {
    s.initial.kind = InitialKind::Accuracy2D;
    s.initial.a1 = r.real("initial", "a1");
    s.initial.b1 = r.real("initial", "b1");
    s.initial.a2 = r.real("initial", "a2");
    s.initial.b2 = r.real("initial", "b2");
  } else if (kind == "equilibrium") {
    s.initial.kind = InitialKind::Equilibrium;
    s.initial.temperature = r.real("initial", "temperature");
  } else {
    r.fail("initial", "kind", "unknown initial condition '" + kind + "'");
  }

  s.boundary = periodic_boundaries();
  for (int ax = 0; ax < s.dim; ++ax)
    for (int side = 0; side < 2; ++side) s.boundary.rules[ax][side] = parse_boundary(r, kSideKeys[ax][side]);

  s.final_time = r.real("time", "final");
  s.snapshot_times = r.has("time", "snapshots") ? r.list("time", "snapshots") : std::vector<double>{};

  s.picard.delta = r.real_or("picard", "delta", s.picard.delta);
  s.picard.max_picard = r.integer_or("picard", "max_iterations", s.picard.max_picard);
  s.picard.newton_tol = r.real_or("picard", "newton_tol", s.picard.newton_tol);
  s.picard.max_newton = r.integer_or("picard", "max_newton", s.picard.max_newton);
  s.picard.lagged_opacity = r.boolean_or("picard", "lagged_opacity", true);
  s.picard.direct_limit = r.integer_or("picard", "direct_limit", s.picard.direct_limit);
  s.picard.linear_tol = r.real_or("picard", "linear_tol", s.picard.linear_tol);

  s.probe_interval = r.real_or("output", "probe_interval", 0.0);
  s.front_threshold = r.real_or("output", "front_threshold", s.front_threshold);

  auto regions = r.sections_with_prefix("region.");
  std::map<int, std::string> ordered;
  for (const auto& sec : regions) {
    const std::string idx = sec.substr(7);
    int i = -1;
    auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
    if (ec != std::errc() || p != idx.data() + idx.size() || i < 0)
      throw ConfigurationError("section [" + sec + "]: region sections are named region.<index>");
    ordered[i] = sec;
  }
  int expect = 0;
  for (const auto& [i, sec] : ordered) {
    if (i != expect++) throw ConfigurationError("region indices must be consecutive from 0");
    Region g;
    g.name = r.raw(sec, "name");
    std::string law = r.raw(sec, "law");
    if (law == "constant") g.law = OpacityLaw::Constant;
    else if (law == "power") g.law = OpacityLaw::PowerLaw;
    else r.fail(sec, "law", "expected 'constant' or 'power'");
    g.kappa = r.real(sec, "kappa");
    g.density = r.real(sec, "density");
    g.specific_heat = r.real(sec, "specific_heat");
    if (i > 0) {
      auto xs = r.list(sec, "x");
      if (xs.size() != 2) r.fail(sec, "x", "expected 'lo, hi'");
      g.lo[0] = xs[0];
      g.hi[0] = xs[1];
      if (s.dim == 2) {
        auto ys = r.list(sec, "y");
        if (ys.size() != 2) r.fail(sec, "y", "expected 'lo, hi'");
        g.lo[1] = ys[0];
        g.hi[1] = ys[1];
      }
    }
    s.material.regions.push_back(g);
  }
  if (r.has_section("probes")) {
    for (const auto& key : r.keys("probes")) {
      auto xy = r.list("probes", key);
      if (xy.size() != 2) r.fail("probes", key, "expected 'x, y'");
      s.probes.push_back({key, {xy[0], xy[1]}});
    }
  }
  r.check_unused();
  return s;
}

}  // namespace grt

namespace grt {

BenchmarkSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open configuration file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::uint64_t config_hash(const BenchmarkSpec& spec) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize_config(spec)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_reference() {
  return R"(# Configuration reference. Sections and keys; '#' starts a comment.
[benchmark]
name = <text>                 # used in output file names
dimension = 1 | 2
scheme = ap | diffusion       # diffusion: equilibrium diffusion limit (default ap)

[domain]
x0 = <real>   x1 = <real>   cells_x = <int>
y0 = <real>   y1 = <real>   cells_y = <int>      # dimension 2 only

[discretization]
k = <int>                     # Gauss points per cell and axis (order k)
tableau = imex1 | ars443
flux = alternating-left-right | alternating-right-left | central
cfl = <real>                  # dt = cfl * h, shortened to divide each output interval
angular_n = <int>             # Gauss-Legendre points (1D) or polar levels (2D)
angular_nc = <int>            # azimuthal Chebyshev points per level (2D)
limiter = on | off            # double minmod on rho and T after each step
limit_g = on | off            # also limit every ordinate of g
bound_limiter = on | off      # keep T within the initial/boundary range
interface_policy = on | off   # weighted rho-hat at material interfaces
penalty_weight = <real>       # omega; negative selects exp(-eps_t / h)

[physics]
c = <real>   a = <real>   eps = <real>   sigma0 = <real>

[initial]
kind = accuracy1d (b0, b1) | accuracy2d (a1, b1, a2, b2) | equilibrium (temperature)

[boundary]
x_low, x_high, y_low, y_high = periodic | outflow | closeloop <T> | heated <T> <lo> <hi>

[time]
final = <real>
snapshots = <real>, <real>, ...

[picard]
delta = <real>   max_iterations = <int>   newton_tol = <real>   max_newton = <int>
lagged_opacity = on | off
direct_limit = <int>          # larger systems use BiCGSTAB instead of sparse LU
linear_tol = <real>

[output]
probe_interval = <real>       # 0 records probes every step
front_threshold = <real>      # keV

[region.<i>]                  # i = 0 is the background, later regions take precedence
name = <text>   law = constant | power   kappa = <real>   density = <real>
specific_heat = <real>   x = <lo>, <hi>   y = <lo>, <hi>

[probes]
<label> = <x>, <y>
)";
}

}  // namespace grt
