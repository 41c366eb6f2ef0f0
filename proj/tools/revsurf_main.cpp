// revsurf command-line entry point.
// Exit codes: 0 success, 1 acceptance or solver failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revsurf/acceptance.hpp"
#include "revsurf/axial_solver.hpp"
#include "revsurf/config.hpp"
#include "revsurf/errors.hpp"
#include "revsurf/experiments.hpp"
#include "revsurf/surface_geometry.hpp"
#include "revsurf/transport.hpp"

namespace {

using nlohmann::json;
using revsurf::config::RunConfig;
using revsurf::config::Subcommand;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::string config_file;
  std::string out;
  int workers = -1;
  std::string report;
  bool dimensionless = false;
  std::vector<std::string> params;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Writes to <out>/<name> when an output directory is set, else to stdout.
class Sink {
 public:
  Sink(const RunConfig& cfg, const std::string& name) {
    const auto dir = cfg.output_dir();
    if (!dir.empty()) {
      std::filesystem::create_directories(dir);
      path_ = dir / name;
      file_.open(*path_, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path_->string());
    }
  }
  std::ostream& out() { return path_ ? static_cast<std::ostream&>(file_) : std::cout; }
  ~Sink() {
    if (path_) std::cerr << "wrote " << path_->string() << '\n';
  }

 private:
  std::optional<std::filesystem::path> path_;
  std::ofstream file_;
};

void write_report(const std::string& path, const json& report) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report " + path);
  out << report.dump(2) << '\n';
}

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values) {
    std::visit([&](const auto& x) { j[k] = x; }, v);
  }
  return j;
}

int run_geometry(const RunConfig& cfg, const Options& opt) {
  const std::string& shape = cfg.text("shape");
  std::optional<revsurf::Generatrix> gen;
  double z0 = 0.0, z1 = 0.0;
  if (shape == "junction") {
    const revsurf::JunctionGeometry j(cfg.number("R1"), cfg.number("R2"), cfg.number("a"), cfg.number("eps"));
    gen = revsurf::Generatrix::junction(j);
    z0 = -j.a() - 5.0;
    z1 = j.a() + 5.0;
  } else if (shape == "cone") {
    gen = revsurf::Generatrix::cone(cfg.number("rho"), cfg.number("lambda"));
    z1 = 2.0 * cfg.number("rho");
  } else {
    gen = revsurf::Generatrix::cylinder(cfg.number("R"));
    z1 = 2.0 * cfg.number("R");
  }
  if (cfg.has("zfrom")) z0 = cfg.number("zfrom");
  if (cfg.has("zto")) z1 = cfg.number("zto");
  const long n = cfg.integer("points");
  const revsurf::EffectiveMass mass{cfg.number("mass")};

  Sink sink(cfg, "geometry.csv");
  auto& out = sink.out();
  out << "# geometry shape=" << shape << " mass_ratio=" << num(mass.ratio) << '\n'
      << "# units: z, f in nm; fzz, alpha in 1/nm; U in meV\n"
      << "z_nm,f_nm,fz,fzz_per_nm,alpha11_per_nm,alpha22_per_nm,U_meV\n";
  for (long i = 0; i < n; ++i) {
    const double z = n == 1 ? z0 : z0 + (z1 - z0) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto p = gen->profile(z);
    const auto k = revsurf::curvature_from(p);
    const double U = revsurf::geometric_potential_at(*gen, z, mass).U;
    out << num(z) << ',' << num(p.f) << ',' << num(p.fz) << ',' << num(p.fzz) << ',' << num(k.alpha_11) << ','
        << num(k.alpha_22) << ',' << num(U) << '\n';
  }
  write_report(opt.report, json{{"subcommand", "geometry"}, {"config", config_json(cfg)}, {"samples", n}});
  return kOk;
}

int run_bound_states(const RunConfig& cfg, const Options& opt) {
  namespace ax = revsurf::axial;
  const double rho = cfg.number("rho");
  const int eta = static_cast<int>(cfg.integer("eta"));
  const int count = static_cast<int>(cfg.integer("count"));
  const revsurf::EffectiveMass mass{cfg.number("mass")};
  // Dimensionless mode measures lengths in units of rho.
  const ax::ConeGeometry cone = opt.dimensionless ? ax::ConeGeometry(1.0, cfg.number("lambda"), cfg.number("zmax") / rho)
                                                  : ax::ConeGeometry(rho, cfg.number("lambda"), cfg.number("zmax"));
  const auto levels = ax::find_levels(cone, eta, count);

  Sink sink(cfg, "bound_states.csv");
  auto& out = sink.out();
  out << "# bound-states rho=" << num(rho) << " lambda=" << num(cone.lambda()) << " zmax=" << num(cfg.number("zmax"))
      << " eta=" << eta << " mass_ratio=" << num(mass.ratio) << '\n';
  json modes = json::array();
  std::vector<ax::AxialMode> profiles;
  if (opt.dimensionless) {
    out << "# units: c = rho sqrt(2 m omega)/hbar, dimensionless\nn,c,c_squared\n";
  } else {
    out << "# units: energies in meV\nn,c,c_squared,omega_meV,expU_meV,ratio\n";
  }
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const auto grid = ax::uniform_grid(cone, cfg.integer("samples") > 1 ? static_cast<std::size_t>(cfg.integer("samples")) : 201);
    const ax::AxialMode mode = ax::eigenfunction(cone, eta, levels[n], grid);
    json m{{"n", n}, {"c", mode.c_value()}, {"c_squared", levels[n]}};
    if (opt.dimensionless) {
      out << n << ',' << num(mode.c_value()) << ',' << num(levels[n]) << '\n';
    } else {
      const double w = mode.omega(cone, mass);
      const double u = ax::gp_expectation(cone, mode, mass);
      const double ratio = w > 0.0 ? std::abs(u) / w : std::nan("");
      out << n << ',' << num(mode.c_value()) << ',' << num(levels[n]) << ',' << num(w) << ',' << num(u) << ','
          << num(ratio) << '\n';
      m["omega_meV"] = w;
      m["expU_meV"] = u;
    }
    modes.push_back(m);
    if (cfg.integer("samples") > 1) profiles.push_back(mode);
  }
  if (!profiles.empty()) {
    Sink psink(cfg, "bound_states_profiles.csv");
    auto& p = psink.out();
    p << "# eigenfunctions normalized with weight f(z) sqrt(1+lambda^2)\n"
      << (opt.dimensionless ? "# units: z in rho, Z in 1/rho\n" : "# units: z in nm, Z in 1/nm\n") << "n,z,Z\n";
    for (const auto& mode : profiles) {
      for (std::size_t i = 0; i < mode.z_grid.size(); ++i) {
        p << mode.index_n << ',' << num(mode.z_grid[i]) << ',' << num(mode.samples[i]) << '\n';
      }
    }
  }
  write_report(opt.report, json{{"subcommand", "bound-states"}, {"config", config_json(cfg)}, {"modes", modes}});
  return kOk;
}

int run_transport(const RunConfig& cfg, const Options& opt) {
  namespace tr = revsurf::transport;
  const revsurf::JunctionGeometry j(cfg.number("R1"), cfg.number("R2"), cfg.number("a"), cfg.number("eps"));
  tr::ScatterConfig sc;
  sc.mass_ratio = cfg.number("mass");
  sc.mode = static_cast<int>(cfg.integer("mode"));
  sc.grid_points = static_cast<int>(cfg.integer("grid"));
  sc.include_gp = cfg.flag("gp");
  const long n = cfg.integer("points");
  std::vector<double> energies(static_cast<std::size_t>(n));
  const double e0 = cfg.number("Emin"), e1 = cfg.number("Emax");
  for (long i = 0; i < n; ++i) {
    energies[static_cast<std::size_t>(i)] = n == 1 ? e0 : e0 + (e1 - e0) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  const auto table = tr::transmission_vs_energy(j, energies, sc, cfg.workers());

  Sink sink(cfg, "transport.csv");
  auto& out = sink.out();
  out << "# transport R1=" << num(j.R1()) << " R2=" << num(j.R2()) << " a=" << num(j.a()) << " eps=" << num(j.epsilon())
      << " mode=" << sc.mode << " mass_ratio=" << num(sc.mass_ratio) << " grid=" << sc.grid_points
      << " gp=" << (sc.include_gp ? "true" : "false") << '\n'
      << "# units: E_l in meV; T dimensionless\nE_l_meV,T\n";
  for (std::size_t i = 0; i < table.x.size(); ++i) out << num(table.x[i]) << ',' << num(table.T[i]) << '\n';
  json failures = json::array();
  for (const auto& f : table.failures) {
    std::cerr << "point " << f.index << " (E_l=" << num(table.x[f.index]) << " meV) failed: " << f.message << '\n';
    failures.push_back({{"index", f.index}, {"message", f.message}});
  }
  write_report(opt.report, json{{"subcommand", "transport"}, {"config", config_json(cfg)}, {"failures", failures}});
  return table.failures.empty() ? kOk : kFailure;
}

int run_experiment_cmd(const RunConfig& cfg, const Options& opt) {
  namespace ex = revsurf::experiments;
  std::vector<ex::ExperimentId> ids;
  const std::string& id = cfg.text("id");
  if (id == "all") {
    ids = ex::all_experiments();
  } else if (const auto parsed = ex::parse_experiment_id(id)) {
    ids.push_back(*parsed);
  } else {
    throw revsurf::ConfigError(cfg.origin.at("id"), "unknown experiment id '" + id + "'");
  }
  bool ok = true;
  json runs = json::array();
  for (const auto e : ids) {
    auto spec = ex::default_spec(e);
    spec.transport_grid_points = static_cast<int>(cfg.integer("grid"));
    spec.hbar2_over_2me = cfg.number("hbar2_over_2me");
    spec.workers = cfg.workers();
    spec.output_dir = cfg.output_dir().empty() ? std::filesystem::path("results") : cfg.output_dir();
    const auto summary = ex::run_experiment(spec);
    json anchors = json::array();
    std::cout << "== " << ex::to_string(e) << '\n';
    for (const auto& f : summary.files) std::cout << "   wrote " << f.string() << '\n';
    for (const auto& a : summary.anchors) {
      std::cout << (a.passed ? "   PASS " : "   FAIL ") << a.name << ": " << a.detail << '\n';
      anchors.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    }
    json failures = json::array();
    for (const auto& f : summary.failures) {
      std::cout << "   point failure " << f.where << ": " << f.message << '\n';
      failures.push_back({{"where", f.where}, {"message", f.message}});
    }
    ok = ok && summary.passed();
    json files = json::array();
    for (const auto& f : summary.files) files.push_back(f.string());
    runs.push_back({{"id", ex::to_string(e)}, {"passed", summary.passed()}, {"files", files}, {"anchors", anchors},
                    {"failures", failures}});
  }
  write_report(opt.report, json{{"subcommand", "experiment"}, {"passed", ok}, {"runs", runs}});
  return ok ? kOk : kFailure;
}

int run_verify(const RunConfig& cfg, const Options& opt) {
  namespace ac = revsurf::acceptance;
  ac::AcceptanceOptions options;
  options.hbar2_over_2me = cfg.number("hbar2_over_2me");
  options.transport_grid_points = static_cast<int>(cfg.integer("grid"));
  options.workers = cfg.workers();
  options.seed = static_cast<std::uint64_t>(cfg.integer("seed"));
  const auto results = ac::run_acceptance(options);
  std::cout << ac::format_report(results);
  const bool ok = ac::all_passed(results);
  std::cout << (ok ? "all acceptance checks passed\n" : "acceptance checks FAILED\n");
  json criteria = json::array();
  for (const auto& r : results) {
    criteria.push_back({{"id", r.id},
                        {"description", r.description},
                        {"passed", r.passed},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
  }
  write_report(opt.report, json{{"subcommand", "verify"}, {"passed", ok}, {"config", config_json(cfg)},
                                {"criteria", criteria}});
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revsurf: bound states on truncated cones and transport through nanowire junctions"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<Subcommand, std::string>> commands{
      {Subcommand::geometry, "sample f, curvatures and the geometric potential of a generatrix"},
      {Subcommand::bound_states, "hard-wall bound states of a truncated cone"},
      {Subcommand::transport, "transmission through a cylinder junction"},
      {Subcommand::experiment, "reproduce a table or figure (id=<name> or id=all)"},
      {Subcommand::verify, "run the acceptance checks"},
  };
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  for (const auto& [sub, help] : commands) {
    auto* s = app.add_subcommand(std::string(revsurf::config::to_string(sub)), help);
    s->add_option("--config", opt.config_file, "config file (key = value lines, [section] headers)");
    s->add_option("--out", opt.out, "output directory");
    s->add_option("--workers", opt.workers, "worker threads (default: REVSURF_WORKERS or all cores)");
    s->add_option("--report", opt.report, "write a JSON report to this path ('-' for stdout)");
    if (sub == Subcommand::bound_states) {
      s->add_flag("--dimensionless", opt.dimensionless, "lengths in units of rho, energies as c");
    }
    s->add_option("params", opt.params, "key=value parameters, overriding the config file");
    subs.emplace_back(s, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  Subcommand which = Subcommand::verify;
  for (const auto& [s, sub] : subs) {
    if (s->parsed()) which = sub;
  }

  RunConfig cfg;
  try {
    std::vector<std::string> flags = opt.params;
    if (!opt.out.empty()) flags.push_back("out=" + opt.out);
    if (opt.workers >= 0) flags.push_back("workers=" + std::to_string(opt.workers));
    std::optional<std::filesystem::path> file;
    if (!opt.config_file.empty()) file = opt.config_file;
    cfg = revsurf::config::parse_config(which, file, flags);
  } catch (const revsurf::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    switch (which) {
      case Subcommand::geometry: return run_geometry(cfg, opt);
      case Subcommand::bound_states: return run_bound_states(cfg, opt);
      case Subcommand::transport: return run_transport(cfg, opt);
      case Subcommand::experiment: return run_experiment_cmd(cfg, opt);
      case Subcommand::verify: return run_verify(cfg, opt);
    }
  } catch (const revsurf::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
