#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

#include "confgas/error.hpp"
#include "confgas/parallel.hpp"
#include "confgas/spectral.hpp"
#include "confgas/thermo.hpp"
#include "confgas/verify.hpp"

namespace confgas::cli {
namespace {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

struct CellText {
  bool json;
  std::string operator()(std::monostate) const { return json ? "null" : ""; }
  std::string operator()(double x) const { return json && !std::isfinite(x) ? "null" : number(x); }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const std::string& s) const { return json ? json_string(s) : csv_field(s); }
};

void write_table(const Table& t, bool jsonl, std::ostream& os) {
  if (!jsonl) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
  }
  for (const auto& row : t.rows) {
    if (jsonl) os << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (jsonl) os << json_string(t.columns[i]) << ':';
      os << std::visit(CellText{jsonl}, row[i]);
    }
    os << (jsonl ? "}\n" : "\n");
  }
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Accuracy:
    case ErrorKind::Convergence:
    case ErrorKind::Truncation:
      return kAccuracy;
    default:
      return kModelInvalid;
  }
}

void diagnostic(std::ostream& err, const std::string& level, const std::string& kind, const std::string& message,
                std::optional<int> code = std::nullopt) {
  nlohmann::json j{{"level", level}, {"kind", kind}, {"message", message}};
  if (code) j["exit_code"] = *code;
  err << j.dump() << '\n';
}

// Closed grid lo:hi:n, both endpoints included.
std::vector<double> parse_grid(const std::string& text, bool log_spacing) {
  double lo = 0, hi = 0;
  long n = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &tail) != 3 || n < 1)
    throw DomainError("grid must be lo:hi:n with n >= 1, got '" + text + "'");
  if (n == 1 && lo != hi) throw DomainError("a one-point grid needs lo == hi");
  if (log_spacing && (lo <= 0 || hi <= 0)) throw DomainError("log grid needs positive endpoints");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.0 : double(i) / double(n - 1);
    g[i] = log_spacing ? std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo))) : lo + s * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::string join_warnings(const std::vector<Warning>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : " | ") + w.tag + ": " + w.message;
  return s;
}

struct Common {
  std::string format = "csv";
  std::string out;
  int threads = 1;
};

struct Physics {
  std::string stat;
  std::string shape;
  std::optional<double> Lz;
  double tol = 1e-12;
  double bose_cap_eps = 1e-12;
  double z_max = 1e8;
  int max_iter = 400;
  double warn_wavelength = 0.2;
  double warn_boundary = 0.5;

  SolverOptions solver() const {
    SolverOptions o;
    o.tol = tol;
    o.bose_cap_eps = bose_cap_eps;
    o.max_iter = max_iter;
    o.specfun.z_max = z_max;
    o.thresholds.wavelength = warn_wavelength;
    o.thresholds.boundary = warn_boundary;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--out", c.out, "Write rows to this file instead of stdout");
  sub->add_option("--threads", c.threads, "Worker threads (default from CONFGAS_THREADS, else 1)")
      ->check(CLI::PositiveNumber);
}

void add_physics(CLI::App* sub, Physics& p, bool with_shape) {
  sub->add_option("--stat", p.stat, "bose or fermi")->required()->check(CLI::IsMember({"bose", "fermi"}));
  if (with_shape) {
    sub->add_option("--shape", p.shape, "rect:a,b | disk:R | annulus:Ri,Ro | polygon:@file | free:Omega")->required();
    sub->add_option("--Lz", p.Lz, "Tube length; switches to the 3-D tube model")->check(CLI::PositiveNumber);
    sub->add_option("--tol", p.tol, "Relative residual on N")->check(CLI::PositiveNumber);
    sub->add_option("--bose-cap-eps", p.bose_cap_eps, "Bose fugacity stays below 1 - eps")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", p.max_iter, "Newton iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--warn-wavelength", p.warn_wavelength, "Warn above this lambda/sqrt(Omega)");
    sub->add_option("--warn-boundary", p.warn_boundary, "Warn above this boundary/bulk ratio");
  }
  sub->add_option("--z-max", p.z_max, "Fermi fugacity cap")->check(CLI::PositiveNumber);
}

struct Geometry {
  std::string label;
  PlanarDomain dom;
  std::optional<TubeDomain> tube;
};

// Besides the shape grammar, `free:Omega` gives the reference gas with no
// boundary or connectivity correction.
Geometry load_geometry(const Physics& p) {
  std::optional<PlanarDomain> dom;
  std::string label;
  if (p.shape.rfind("free:", 0) == 0) {
    std::size_t used = 0;
    double area = 0;
    try {
      area = std::stod(p.shape.substr(5), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.shape.size() - 5) throw GeometryError("free:<area> expects a number");
    dom = PlanarDomain::free_space(area);
    label = "free:" + number(area);
  } else {
    const ShapeSpec spec = parse_shape(p.shape);
    validate(spec);
    dom = make_domain(spec);
    label = describe(spec);
  }
  std::optional<TubeDomain> tube;
  if (p.Lz) tube.emplace(*dom, *p.Lz);
  return {label, *dom, tube};
}

// ---- specfun ----------------------------------------------------------------

struct SpecfunArgs {
  Physics phys;
  double order = 0;
  std::optional<double> z;
  std::string z_grid;
  std::string spacing = "linear";
};

int cmd_specfun(const SpecfunArgs& a, const Common& c, Table& t, std::ostream& err) {
  const StatKind stat = parse_stat(a.phys.stat);
  const Order sigma = Order::of(a.order);
  SpecfunOptions opts;
  opts.z_max = a.phys.z_max;
  const bool grid = !a.z_grid.empty();
  const std::vector<double> zs = grid ? parse_grid(a.z_grid, a.spacing == "log") : std::vector<double>{*a.z};
  t.columns = {"stat", "order", "z", "value", "error_bound", "method", "terms", "status", "error"};
  t.rows.resize(zs.size());
  std::vector<std::optional<Error>> failures(zs.size());
  parallel_for(zs.size(), c.threads, [&](std::size_t i) {
    std::vector<Cell>& row = t.rows[i];
    row = {std::string(to_string(stat)), sigma.value(), zs[i]};
    try {
      const FunctionValue v = eval_h(stat, sigma, zs[i], opts);
      row.insert(row.end(), {v.value, v.abs_error_bound, std::string(to_string(v.method)),
                             static_cast<long long>(v.terms), std::string("ok"), std::monostate{}});
    } catch (const Error& e) {
      failures[i] = e;
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                             std::string(to_string(e.kind())), std::string(e.what())});
    }
  });
  int code = kOk;
  for (const auto& f : failures) {
    if (!f) continue;
    if (!grid) throw *f;
    diagnostic(err, "error", to_string(f->kind()), f->what());
    code = kWarned;
  }
  return code;
}

// ---- solve --------------------------------------------------------------------

struct SolveArgs {
  Physics phys;
  double N = 0;
  double T = 0;
};

int cmd_solve(const SolveArgs& a, Table& t, std::ostream& err) {
  const StatKind stat = parse_stat(a.phys.stat);
  const Geometry g = load_geometry(a.phys);
  const SolverOptions opts = a.phys.solver();
  const Solution s = g.tube ? solve_fugacity(stat, *g.tube, a.N, a.T, opts) : solve_fugacity(stat, g.dom, a.N, a.T, opts);
  const ValidityReport& v = s.validity;
  t.columns = {"stat",           "shape",         "Lz",
               "N",              "T",             "z",
               "lambda",         "ratio_wavelength", "ratio_boundary",
               "ratio_topology", "fermi_extension_used", "iterations",
               "warnings"};
  t.rows.push_back({std::string(to_string(stat)), g.label,
                    a.phys.Lz ? Cell{*a.phys.Lz} : Cell{}, a.N, a.T, s.state.z, s.state.lambda,
                    v.ratio_wavelength, v.ratio_boundary, v.ratio_topology, v.fermi_extension_used,
                    static_cast<long long>(s.iterations), join_warnings(v.warnings)});
  for (const auto& w : v.warnings) diagnostic(err, "warning", w.tag, w.message);
  return v.has_warnings() ? kWarned : kOk;
}

// ---- table ----------------------------------------------------------------------

struct TableArgs {
  Physics phys;
  double N = 0;
  std::string T_grid;
  std::string spacing = "linear";
};

int cmd_table(const TableArgs& a, const Common& c, Table& t, std::ostream& err) {
  const StatKind stat = parse_stat(a.phys.stat);
  const Geometry g = load_geometry(a.phys);
  const SolverOptions opts = a.phys.solver();
  const std::vector<double> Ts = parse_grid(a.T_grid, a.spacing == "log");
  t.columns = {"T",     "status", "z",     "lambda", "U",    "F",    "S",    "C_V",
               "P",     "sigma",  "eta",   "xi1",    "xi2",  "xi3",  "xi4",  "xi5",
               "ratio_wavelength", "ratio_boundary", "ratio_topology", "fermi_extension_used",
               "warnings", "error"};
  t.rows.resize(Ts.size());
  std::vector<std::string> failures(Ts.size());
  parallel_for(Ts.size(), c.threads, [&](std::size_t i) {
    std::vector<Cell>& row = t.rows[i];
    row.assign(t.columns.size(), std::monostate{});
    row[0] = Ts[i];
    try {
      const ThermoReport r = g.tube ? thermo_3d(stat, *g.tube, a.N, Ts[i], opts) : thermo_2d(stat, g.dom, a.N, Ts[i], opts);
      const ValidityReport& v = r.validity;
      row[1] = std::string(v.has_warnings() ? "warned" : "ok");
      row[2] = r.state.z;
      row[3] = r.state.lambda;
      row[4] = r.U;
      row[5] = r.F;
      row[6] = r.S;
      row[7] = r.C_V;
      row[8] = r.P;
      if (const auto* a2 = std::get_if<Aux2D>(&r.aux)) {
        row[9] = a2->sigma2;
        row[10] = a2->eta2;
      } else {
        const Aux3D& a3 = std::get<Aux3D>(r.aux);
        row[9] = a3.sigma3;
        row[10] = a3.eta3;
        row[11] = a3.xi1;
        row[12] = a3.xi2;
        row[13] = a3.xi3;
        row[14] = a3.xi4;
        row[15] = a3.xi5;
      }
      row[16] = v.ratio_wavelength;
      row[17] = v.ratio_boundary;
      row[18] = v.ratio_topology;
      row[19] = v.fermi_extension_used;
      row[20] = join_warnings(v.warnings);
    } catch (const Error& e) {
      row[1] = std::string(to_string(e.kind()));
      row[21] = std::string(e.what());
      failures[i] = to_string(e.kind());
    }
  });
  bool flagged = false;
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    const auto& status = std::get<std::string>(t.rows[i][1]);
    if (status == "ok") continue;
    flagged = true;
    if (!failures[i].empty())
      diagnostic(err, "error", failures[i], "T = " + number(Ts[i]) + ": " + std::get<std::string>(t.rows[i][21]));
  }
  return flagged ? kWarned : kOk;
}

// ---- verify -----------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::vector<double> t_list{0.1, 0.05, 0.025};
  int samples = 120;
  std::string report;
};

int cmd_verify(const VerifyArgs& a, const Common& c, Table& t) {
  VerifyOptions opts;
  opts.t_list = a.t_list;
  opts.samples = a.samples;
  opts.threads = c.threads;
  std::vector<CheckRow> rows;
  if (a.suite != "thermo") rows = verify_heatkernel(opts);
  if (a.suite != "heatkernel") {
    auto more = verify_thermo(opts);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  t.columns = {"suite", "check", "measured", "tolerance", "status", "note"};
  for (const auto& r : rows)
    t.rows.push_back({r.suite, r.check, r.measured, r.tolerance, std::string(to_string(r.status)), r.note});
  const bool passed = all_passed(rows);
  if (!a.report.empty()) {
    nlohmann::ordered_json doc{{"suite", a.suite}, {"passed", passed}, {"rows", nlohmann::ordered_json::array()}};
    for (const auto& r : rows)
      doc["rows"].push_back({{"suite", r.suite},
                             {"check", r.check},
                             {"measured", r.measured},
                             {"tolerance", r.tolerance},
                             {"status", to_string(r.status)},
                             {"note", r.note}});
    std::ofstream f(a.report);
    if (!f) throw DomainError("cannot open report file '" + a.report + "'");
    f << doc.dump(2) << '\n';
  }
  return passed ? kOk : kAccuracy;
}

// ---- oracle -------------------------------------------------------------------------

struct OracleArgs {
  Physics phys;
  std::optional<double> cutoff;
  std::vector<double> theta;
  bool exact = false;
  std::optional<double> N;
  std::optional<double> T;
  std::size_t max_states = 10'000'000;
};

int cmd_oracle(const OracleArgs& a, const Common& c, Table& t) {
  const ShapeSpec spec = parse_shape(a.phys.shape);
  validate(spec);
  const PlanarDomain dom = make_domain(spec);
  SpectrumOptions sopts;
  sopts.threads = c.threads;
  sopts.max_states = a.max_states;

  if (!a.theta.empty()) {
    const double t_min = *std::min_element(a.theta.begin(), a.theta.end());
    if (!(t_min > 0)) throw DomainError("theta times must be positive");
    const Spectrum s = spectrum_for(spec, std::max(theta_cutoff(t_min), a.cutoff.value_or(0.0)), sopts);
    t.columns = {"t", "theta", "truncation_bound", "weyl", "residual"};
    for (double tt : a.theta) {
      const ThetaResult r = theta_sum(s, tt);
      const double weyl = dom.area() / (2 * std::numbers::pi * tt) - dom.perimeter() / (4 * std::sqrt(2 * std::numbers::pi * tt)) +
                          dom.connectivity();
      t.rows.push_back({tt, r.value, r.truncation_bound, weyl, r.value - weyl});
    }
    return kOk;
  }
  if (a.exact) {
    if (a.phys.stat.empty() || !a.N || !a.T) throw DomainError("--exact needs --stat, --N and --T");
    const StatKind stat = parse_stat(a.phys.stat);
    const Spectrum s = spectrum_for(spec, std::max(45 * *a.T, a.cutoff.value_or(0.0)), sopts);
    const ExactThermo e = exact_thermo(stat, s, *a.N, *a.T);
    t.columns = {"stat", "N", "T", "z", "lnXi", "U", "N_reached", "iterations", "states"};
    t.rows.push_back({std::string(to_string(stat)), *a.N, *a.T, e.z, e.lnXi, e.U, e.N,
                      static_cast<long long>(e.iterations), static_cast<long long>(s.state_count())});
    return kOk;
  }
  if (!a.cutoff) throw DomainError("oracle needs --cutoff, --theta or --exact");
  const Spectrum s = spectrum_for(spec, *a.cutoff, sopts);
  t.columns = {"mu", "multiplicity"};
  for (const Level& l : s.levels) t.rows.push_back({l.mu, static_cast<long long>(l.multiplicity)});
  return kOk;
}

int default_threads(std::ostream& err) {
  const char* env = std::getenv("CONFGAS_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) {
    diagnostic(err, "warning", "environment", std::string("ignoring CONFGAS_THREADS='") + env + "'");
    return 1;
  }
  return static_cast<int>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamics of ideal quantum gases in bounded planar domains and tubes"};
  app.name("confgas");
  app.require_subcommand(1);

  Common common;
  common.threads = default_threads(err);

  SpecfunArgs sf;
  auto* specfun = app.add_subcommand("specfun", "Evaluate h_s(z) (Bose g_s or Fermi f_s)");
  add_common(specfun, common);
  add_physics(specfun, sf.phys, false);
  specfun->add_option("--order", sf.order, "Order s in {-1, -1/2, ..., 5/2}")->required();
  auto* z_opt = specfun->add_option("--z", sf.z, "Fugacity");
  auto* zg_opt = specfun->add_option("--z-grid", sf.z_grid, "Closed grid lo:hi:n");
  z_opt->excludes(zg_opt);
  specfun->add_option("--spacing", sf.spacing, "Grid spacing")->check(CLI::IsMember({"linear", "log"}));
  specfun->footer("Columns: stat,order,z,value,error_bound,method,terms,status,error");

  SolveArgs sv;
  auto* solve = app.add_subcommand("solve", "Solve the particle-number equation for the fugacity");
  add_common(solve, common);
  add_physics(solve, sv.phys, true);
  solve->add_option("--N", sv.N, "Particle number")->required()->check(CLI::PositiveNumber);
  solve->add_option("--T", sv.T, "Temperature")->required()->check(CLI::PositiveNumber);
  solve->footer(
      "Columns: stat,shape,Lz,N,T,z,lambda,ratio_wavelength,ratio_boundary,ratio_topology,"
      "fermi_extension_used,iterations,warnings\nExit 2 when the state carries validity warnings.");

  TableArgs tb;
  auto* table = app.add_subcommand("table", "Thermodynamic functions over a temperature grid at fixed N");
  add_common(table, common);
  add_physics(table, tb.phys, true);
  table->add_option("--N", tb.N, "Particle number")->required()->check(CLI::PositiveNumber);
  table->add_option("--T-grid", tb.T_grid, "Closed grid lo:hi:n (both endpoints included)")->required();
  table->add_option("--spacing", tb.spacing, "Grid spacing")->check(CLI::IsMember({"linear", "log"}));
  table->footer(
      "Columns: T,status,z,lambda,U,F,S,C_V,P,sigma,eta,xi1,xi2,xi3,xi4,xi5,ratio_wavelength,"
      "ratio_boundary,ratio_topology,fermi_extension_used,warnings,error\n"
      "Points that fail keep their row with status set to the error kind. Exit 2 when any row is "
      "warned or failed.");

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Check the asymptotic formulas against exact spectra and identities");
  add_common(verify, common);
  verify->add_option("--suite", vf.suite, "heatkernel, thermo or all")
      ->check(CLI::IsMember({"heatkernel", "thermo", "all"}));
  verify->add_option("--t-list", vf.t_list, "Heat-kernel times, comma separated")->delimiter(',');
  verify->add_option("--samples", vf.samples, "Random states per dimensionality")->check(CLI::PositiveNumber);
  verify->add_option("--report", vf.report, "Also write a JSON report here");
  verify->footer("Columns: suite,check,measured,tolerance,status,note\nExit 0 iff no row fails.");

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "Exact Dirichlet spectra, heat-kernel traces and exact sums");
  add_common(oracle, common);
  oracle->add_option("--shape", orc.phys.shape, "rect:a,b | disk:R | annulus:Ri,Ro")->required();
  oracle->add_option("--cutoff", orc.cutoff, "List every level with mu <= cutoff")->check(CLI::PositiveNumber);
  oracle->add_option("--theta", orc.theta, "Heat-kernel times, comma separated")->delimiter(',');
  oracle->add_flag("--exact", orc.exact, "Exact grand-canonical sums (needs --stat, --N, --T)");
  oracle->add_option("--stat", orc.phys.stat, "bose or fermi")->check(CLI::IsMember({"bose", "fermi"}));
  oracle->add_option("--N", orc.N, "Particle number")->check(CLI::PositiveNumber);
  oracle->add_option("--T", orc.T, "Temperature")->check(CLI::PositiveNumber);
  oracle->add_option("--max-states", orc.max_states, "Refuse larger spectra");
  oracle->footer(
      "Columns: mu,multiplicity (listing); t,theta,truncation_bound,weyl,residual (--theta);\n"
      "stat,N,T,z,lnXi,U,N_reached,iterations,states (--exact)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "error", "usage", e.what(), kModelInvalid);
    return kModelInvalid;
  }

  Table t;
  int code = kOk;
  try {
    if (*specfun) {
      if (!sf.z && sf.z_grid.empty()) throw DomainError("specfun needs --z or --z-grid");
      code = cmd_specfun(sf, common, t, err);
    } else if (*solve) {
      code = cmd_solve(sv, t, err);
    } else if (*table) {
      code = cmd_table(tb, common, t, err);
    } else if (*verify) {
      code = cmd_verify(vf, common, t);
    } else {
      code = cmd_oracle(orc, common, t);
    }
  } catch (const Error& e) {
    const int c = exit_code_for(e.kind());
    diagnostic(err, "error", to_string(e.kind()), e.what(), c);
    return c;
  } catch (const std::exception& e) {
    diagnostic(err, "error", "internal", e.what(), kAccuracy);
    return kAccuracy;
  }

  const bool jsonl = common.format == "jsonl";
  if (common.out.empty()) {
    write_table(t, jsonl, out);
  } else {
    std::ofstream f(common.out);
    if (!f) {
      diagnostic(err, "error", "io", "cannot open '" + common.out + "'", kModelInvalid);
      return kModelInvalid;
    }
    write_table(t, jsonl, f);
  }
  return code;
}

}  // namespace confgas::cli
