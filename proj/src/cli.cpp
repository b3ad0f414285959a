#include "lamb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>

#include "lamb/dipole.hpp"
#include "lamb/errors.hpp"
#include "lamb/euler.hpp"
#include "lamb/functionals.hpp"
#include "lamb/io.hpp"
#include "lamb/parallel.hpp"
#include "lamb/poisson.hpp"
#include "lamb/specfun.hpp"
#include "lamb/stability.hpp"
#include "lamb/varmin.hpp"

#ifndef LAMB_VERSION
#define LAMB_VERSION "0.0.0"
#endif

namespace lamb {
namespace fs = std::filesystem;
using nlohmann::json;

const char* version() { return LAMB_VERSION; }

namespace {

struct Param {
  std::string name;
  std::string fallback;
  std::string help;
};

std::string c0_squared_pi() {
  const double c0 = first_zero_j1();
  return format_double(c0 * c0 * std::numbers::pi);
}

const std::vector<Param>& common_params() {
  static const std::vector<Param> p = {
      {"output-dir", ".", "directory for all outputs"},
      {"seed", "1", "random seed"},
      {"threads", "1", "worker threads"},
  };
  return p;
}

std::map<std::string, std::vector<Param>> subcommand_params() {
  const std::vector<Param> dipole_geom = {
      {"lambda", "1", "lambda > 0"},
      {"w", "1", "speed W > 0"},
      {"box", "16", "box half-width and height in units of the core radius"},
  };
  auto with = [&](std::vector<Param> extra) {
    std::vector<Param> v = dipole_geom;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  const std::vector<Param> time_params = {
      {"dt", "0.02", "time step"},
      {"cfl", "0.5", "CFL bound"},
      {"dealias", "0.6666666666666667", "dealias fraction"},
      {"filter", "sharp", "dealias filter: sharp or smooth"},
  };
  auto timed = [&](std::vector<Param> extra) {
    std::vector<Param> v = with(extra);
    v.insert(v.end(), time_params.begin(), time_params.end());
    return v;
  };
  return {
      {"dipole", with({{"grid", "256", "cells per direction"}})},
      {"poisson-check",
       with({{"grid", "64", "cells per direction (<= 128)"}, {"samples", "0", "random bump fields"}})},
      {"inequality",
       {{"samples", "1000", "random fields"},
        {"grid", "128", "cells per direction"},
        {"length", "16", "box half-width and height"},
        {"slack", "0.005", "discretisation slack on the sharp bound"}}},
      {"minimize",
       {{"mu", c0_squared_pi(), "target impulse"},
        {"lambda", "1", "lambda > 0"},
        {"grid", "256", "cells per direction"},
        {"box", "16", "box size in units of c0/sqrt(lambda)"},
        {"max-outer", "500", "iteration cap"},
        {"tol", "1e-8", "relative L2 change tolerance"},
        {"tol-impulse", "1e-10", "relative impulse tolerance"}}},
      {"evolve",
       timed({{"grid", "256", "cells per direction"},
              {"t-end", "4", "final time"},
              {"comoving", "0", "frame speed subtracted from the flow"},
              {"snapshot-every", "0", "snapshot cadence (0 disables)"}})},
      {"stability",
       timed({{"grid", "512", "cells per direction"},
              {"horizon", "4", "run length in units of a/W"},
              {"kind", "gaussian_bump", "gaussian_bump, impulse_rescale or core_dent"},
              {"delta", "0", "perturbation amplitude"},
              {"x1", "-0.3", "bump centre x1 / a"},
              {"x2", "0.5", "bump centre x2 / a"},
              {"width", "0.25", "bump width / a"},
              {"jitter", "0", "random centre jitter / a"}})},
  };
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

class Resolved {
 public:
  std::map<std::string, std::string> values;

  const std::string& str(const std::string& k) const { return values.at(k); }

  double real(const std::string& k) const {
    const std::string& s = str(k);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      throw ValidationError("--" + k + ": expected a number, got '" + s + "'");
    return v;
  }

  long integer(const std::string& k) const {
    const std::string& s = str(k);
    long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ValidationError("--" + k + ": expected an integer, got '" + s + "'");
    return v;
  }

  double positive(const std::string& k) const {
    const double v = real(k);
    if (!(v > 0.0)) throw ValidationError("--" + k + " must be > 0");
    return v;
  }

  json to_json() const {
    json j = json::object();
    for (const auto& [k, v] : values) j[k] = v;
    return j;
  }
};

DealiasFilter parse_filter(const std::string& s) {
  if (s == "sharp") return DealiasFilter::sharp;
  if (s == "smooth") return DealiasFilter::smooth;
  throw ValidationError("--filter must be sharp or smooth");
}

int grid_size(const Resolved& r) {
  const long n = r.integer("grid");
  if (n < 16 || n > (1L << 14) || (n & (n - 1)) != 0)
    throw ValidationError("--grid must be a power of two >= 16");
  return static_cast<int>(n);
}

EvolveConfig evolve_config(const Resolved& r, const Grid2D& g) {
  EvolveConfig c{g};
  c.dt = r.positive("dt");
  c.cfl_max = r.positive("cfl");
  c.dealias = r.positive("dealias");
  c.filter = parse_filter(r.str("filter"));
  return c;
}

struct Context {
  std::string command;
  Resolved params;
  fs::path out_dir;
  std::ostream& out;
  std::ostream& err;

  void manifest(const json& extra = json::object()) const {
    json m = {{"artifact", "lamb_lab"},
              {"version", version()},
              {"subcommand", command},
              {"parameters", params.to_json()}};
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    write_json(out_dir / "manifest.json", m);
  }
};

void warn_truncation(const Context& ctx, const ScalarField& omega) {
  if (inner_mass_fraction(omega) < 0.99)
    ctx.err << "warning: less than 99% of the vorticity lies in the inner 80% of the box\n";
}

int cmd_dipole(Context& ctx) {
  const auto& r = ctx.params;
  const LambParams p = lamb_params(r.positive("lambda"), r.positive("w"));
  const Grid2D g = lamb_box(p, grid_size(r), r.positive("box"));
  const ScalarField omega = sample_lamb_vorticity(p, g);
  warn_truncation(ctx, omega);
  const PoissonSolver solver(g);
  const ScalarField psi = solver.solve(omega);
  const EnergyForms ef = energy_forms(omega, psi, solver);
  const LambInvariants exact = lamb_invariants(p);
  const double E = ef.product, Z = enstrophy(omega), P = impulse(omega);

  write_snapshot(omega, ctx.out_dir / "dipole_omega.f64", {0.0, "omega"});
  json rep = {
      {"params", {{"lambda", p.lambda}, {"W", p.W}, {"a", p.a}, {"c_L", p.c_L}, {"c0", first_zero_j1()}}},
      {"grid", to_json(g)},
      {"closed_form", {{"E", exact.E}, {"Z", exact.Z}, {"P", exact.P}}},
      {"quadrature", {{"E", E}, {"Z", Z}, {"P", P}, {"E_gradient_form", ef.gradient}}},
      {"relative_error", {{"E", (E - exact.E) / exact.E}, {"Z", (Z - exact.Z) / exact.Z}, {"P", (P - exact.P) / exact.P}}},
      {"energy_ratio", to_json(energy_ratio(omega, solver))},
  };
  write_json(ctx.out_dir / "invariants.json", rep);
  ctx.manifest();
  ctx.out << "E=" << format_double(E) << " Z=" << format_double(Z) << " P=" << format_double(P)
          << " (closed form " << format_double(exact.E) << ", " << format_double(exact.Z) << ", "
          << format_double(exact.P) << ")\n";
  return 0;
}

int cmd_poisson_check(Context& ctx) {
  const auto& r = ctx.params;
  const LambParams p = lamb_params(r.positive("lambda"), r.positive("w"));
  const int n = grid_size(r);
  if (n > 128) throw ValidationError("--grid must be <= 128 for the quadrature oracle");
  const Grid2D g = lamb_box(p, n, r.positive("box"));
  const PoissonSolver solver(g);
  const GreenQuadrature half(g, GreenDomain::half_plane);
  const GreenQuadrature box(g, GreenDomain::periodic_box);

  auto compare = [&](const ScalarField& omega) {
    const ScalarField ps = solver.solve(omega);
    const EnergyForms ef = energy_forms(omega, ps, solver);
    return json{{"rel_l2_half_plane", relative_l2(ps, half.apply(omega))},
                {"rel_l2_periodic_box", relative_l2(ps, box.apply(omega))},
                {"energy_identity_gap", ef.relative_gap()}};
  };
  json rep = {{"grid", to_json(g)}, {"lamb", compare(sample_lamb_vorticity(p, g))}};
  const long samples = r.integer("samples");
  if (samples < 0) throw ValidationError("--samples must be >= 0");
  std::mt19937_64 rng(static_cast<std::uint64_t>(r.integer("seed")));
  BumpOptions opt;
  opt.x1_extent = 0.15 * g.Lx();
  opt.x2_max = 0.3 * g.Ly();
  opt.sigma_min = 2.0 * g.dx();
  opt.sigma_max = 0.05 * g.Ly();
  json fields = json::array();
  for (long k = 0; k < samples; ++k) fields.push_back(compare(random_bump_field(g, rng, opt)));
  rep["bumps"] = fields;
  write_json(ctx.out_dir / "poisson_check.json", rep);
  ctx.manifest();
  ctx.out << rep["lamb"].dump() << '\n';
  return 0;
}

int cmd_inequality(Context& ctx) {
  const auto& r = ctx.params;
  const long samples = r.integer("samples");
  if (samples < 1) throw ValidationError("--samples must be >= 1");
  const double L = r.positive("length");
  const double slack = r.real("slack");
  const Grid2D g(L, L, grid_size(r), grid_size(r));
  const PoissonSolver solver(g);
  std::mt19937_64 rng(static_cast<std::uint64_t>(r.integer("seed")));
  BumpOptions opt;
  opt.x1_extent = 0.25 * L;
  opt.x2_max = 0.4 * L;
  opt.sigma_min = 3.0 * g.dx();
  opt.sigma_max = 0.1 * L;
  double max_ratio = 0.0;
  long above_sharp = 0;
  for (long k = 0; k < samples; ++k) {
    const InequalityReport rep = energy_ratio(random_bump_field(g, rng, opt), solver, slack);
    max_ratio = std::max(max_ratio, rep.ratio);
    if (!rep.satisfied_sharp) ++above_sharp;
  }
  const json rep = {{"samples", samples},
                    {"grid", to_json(g)},
                    {"max_ratio", max_ratio},
                    {"bound_sharp", sharp_constant()},
                    {"bound_hls", hls_constant()},
                    {"slack", slack},
                    {"violations", above_sharp},
                    {"all_within_sharp", above_sharp == 0}};
  write_json(ctx.out_dir / "inequality.json", rep);
  ctx.manifest();
  ctx.out << "max ratio " << format_double(max_ratio) << " over " << samples
          << " fields; sharp bound " << format_double(sharp_constant()) << '\n';
  return 0;
}

int cmd_minimize(Context& ctx) {
  const auto& r = ctx.params;
  const double lambda = r.positive("lambda");
  const double a = first_zero_j1() / std::sqrt(lambda);
  const double box = r.positive("box") * a;
  MinimizeConfig cfg{r.positive("mu"), lambda, Grid2D(box, box, grid_size(r), grid_size(r))};
  cfg.max_outer = static_cast<int>(r.integer("max-outer"));
  cfg.tol_fixpoint = r.positive("tol");
  cfg.tol_impulse = r.positive("tol-impulse");
  const double exact = minimum_closed_form(cfg.mu, lambda);
  try {
    const MinimizeResult res = minimize(cfg);
    json rep = {{"value", res.value},
                {"closed_form", exact},
                {"relative_error", (res.value - exact) / std::fabs(exact)},
                {"W", res.W},
                {"W_closed_form", cfg.mu * lambda / (std::pow(first_zero_j1(), 2) * std::numbers::pi)},
                {"iterations", res.iterations},
                {"residual", res.residual},
                {"initial_value", res.initial_value},
                {"grid", to_json(cfg.grid)},
                {"telemetry", to_json(res.telemetry)}};
    write_json(ctx.out_dir / "minimize.json", rep);
    write_snapshot(res.omega, ctx.out_dir / "minimizer_omega.f64", {0.0, "omega"});
    ctx.manifest();
    ctx.out << "value " << format_double(res.value) << " (closed form " << format_double(exact)
            << "), W " << format_double(res.W) << ", " << res.iterations << " iterations\n";
    return 0;
  } catch (const ConvergenceError& e) {
    write_json(ctx.out_dir / "minimize.json",
               {{"error", e.what()}, {"closed_form", exact}, {"telemetry", to_json(e.telemetry)}});
    ctx.manifest({{"status", "numerical failure"}});
    throw;
  }
}

int cmd_evolve(Context& ctx) {
  const auto& r = ctx.params;
  const LambParams p = lamb_params(r.positive("lambda"), r.positive("w"));
  const Grid2D g = lamb_box(p, grid_size(r), r.positive("box"));
  EvolveConfig cfg = evolve_config(r, g);
  cfg.t_end = r.positive("t-end");
  cfg.comoving_speed = r.real("comoving");
  const double every = r.real("snapshot-every");
  const EulerSolver solver(cfg);
  const EulerState s0 = solver.initial_state(sample_lamb_vorticity(p, g));
  std::vector<DiagnosticsRecord> history{s0.diagnostics};
  int snap = 0;
  auto save = [&](const EulerState& s) {
    char name[32];
    std::snprintf(name, sizeof name, "zeta_%04d.f64", snap++);
    write_snapshot(s.zeta, ctx.out_dir / name, {s.t, "zeta"});
  };
  if (every > 0.0) save(s0);
  double next = every;
  try {
    solver.run(s0, every, [&](const EulerState& s) {
      history.push_back(s.diagnostics);
      if (every > 0.0 && s.t >= next - 1e-12 * std::max(1.0, cfg.t_end)) {
        save(s);
        next += every;
      }
      return true;
    });
  } catch (const BlowUpError& e) {
    write_diagnostics_csv(ctx.out_dir / "diagnostics.csv", history);
    write_snapshot(e.last_good.zeta, ctx.out_dir / "last_good.f64", {e.last_good.t, "zeta"});
    ctx.manifest({{"status", "numerical failure"}});
    throw;
  }
  write_diagnostics_csv(ctx.out_dir / "diagnostics.csv", history);
  const DiagnosticsRecord& a = history.front();
  const DiagnosticsRecord& b = history.back();
  json rep = {{"grid", to_json(g)},
              {"steps", history.size() - 1},
              {"snapshots", snap},
              {"drift", {{"Z", (b.Z - a.Z) / a.Z}, {"P", (b.P - a.P) / a.P}, {"E", (b.E - a.E) / a.E}}},
              {"centroid_speed", (b.centroid_x1 - a.centroid_x1) / (b.t - a.t)},
              {"final", to_json(b)}};
  write_json(ctx.out_dir / "evolve.json", rep);
  ctx.manifest();
  ctx.out << "t=" << format_double(b.t) << " centroid speed "
          << format_double(rep["centroid_speed"].get<double>()) << '\n';
  return 0;
}

int cmd_stability(Context& ctx) {
  const auto& r = ctx.params;
  const LambParams p = lamb_params(r.positive("lambda"), r.positive("w"));
  const Grid2D g = lamb_box(p, grid_size(r), r.positive("box"));
  EvolveConfig cfg = evolve_config(r, g);
  PerturbationSpec spec;
  spec.kind = parse_perturbation_kind(r.str("kind"));
  spec.delta = r.real("delta");
  spec.x1 = r.real("x1");
  spec.x2 = r.real("x2");
  spec.width = r.positive("width");
  spec.jitter = r.real("jitter");
  spec.seed = static_cast<std::uint64_t>(r.integer("seed"));
  const double T = r.positive("horizon") * p.a / p.W;
  const StabilityReport rep = stability_experiment(p, spec, T, cfg);
  if (rep.clipped_mass > 0.0)
    ctx.err << "note: clipped " << format_double(rep.clipped_mass) << " of negative vorticity\n";
  write_stability_csv(ctx.out_dir / "stability.csv", rep);
  json header = {
      {"params", {{"lambda", p.lambda}, {"W", p.W}, {"a", p.a}}},
      {"perturbation",
       {{"kind", to_string(spec.kind)}, {"delta", spec.delta}, {"x1", spec.x1}, {"x2", spec.x2},
        {"width", spec.width}, {"jitter", spec.jitter}, {"seed", spec.seed}}},
      {"grid", to_json(g)},
      {"horizon", T},
      {"tolerances", {{"conservation", 1e-3}, {"cfl_max", cfg.cfl_max}, {"dealias", cfg.dealias}}},
      {"d0", rep.d0},
      {"d_max", rep.d_max},
      {"clipped_mass", rep.clipped_mass},
      {"drift", {{"Z", rep.max_drift_Z}, {"P", rep.max_drift_P}, {"E", rep.max_drift_E}}},
      {"conservation_ok", rep.conservation_ok}};
  write_json(ctx.out_dir / "stability.json", header);
  ctx.manifest();
  ctx.out << "d0 " << format_double(rep.d0) << " d_max " << format_double(rep.d_max) << '\n';
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lamb dipole numerical lab", "lamb_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  const auto spec = subcommand_params();
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::string> config_path;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, params] : spec) {
    CLI::App* sub = app.add_subcommand(name);
    subs[name] = sub;
    sub->add_option("--config", config_path[name], "key = value config file");
    for (const auto* list : {&common_params(), &params})
      for (const Param& p : *list) sub->add_option("--" + p.name, raw[name][p.name], p.help);
  }

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    std::vector<Param> params = common_params();
    params.insert(params.end(), spec.at(command).begin(), spec.at(command).end());
    std::map<std::string, std::string> file;
    if (!config_path[command].empty()) file = read_config(config_path[command]);
    for (const auto& [k, v] : file)
      if (std::none_of(params.begin(), params.end(), [&](const Param& p) { return p.name == k; }))
        throw ValidationError("config: unknown key '" + k + "' for " + command);

    Resolved res;
    for (const Param& p : params) {
      if (subs[command]->count("--" + p.name) > 0) res.values[p.name] = raw[command][p.name];
      else if (file.count(p.name)) res.values[p.name] = file[p.name];
      else res.values[p.name] = p.fallback;
    }
    if (!config_path[command].empty()) res.values["config"] = config_path[command];

    const long threads = res.integer("threads");
    if (threads < 1 || threads > 1024) throw ValidationError("--threads must be in [1, 1024]");
    set_thread_count(static_cast<int>(threads));
    res.integer("seed");

    Context ctx{command, res, fs::path(res.str("output-dir")), out, err};
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw ValidationError("cannot create output directory " + ctx.out_dir.string());

    if (command == "dipole") return cmd_dipole(ctx);
    if (command == "poisson-check") return cmd_poisson_check(ctx);
    if (command == "inequality") return cmd_inequality(ctx);
    if (command == "minimize") return cmd_minimize(ctx);
    if (command == "evolve") return cmd_evolve(ctx);
    return cmd_stability(ctx);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace lamb
