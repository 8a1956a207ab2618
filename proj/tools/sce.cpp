// sce — space-charge emission toolkit CLI.
//
// Exposes the 1D space-charge diode solvers (universal current-field
// relation, linear/quadratic/Fowler-Nordheim emission laws), the dimensioned
// Fowler-Nordheim machinery (transition voltage, effective work function),
// the emitter-array lattice electrostatics, the gated-tip ring model, and the
// shooting-integrator oracle. Every subcommand emits a CSV (or JSON) table;
// `reproduce-figures` regenerates the bundled datasets into a directory with
// a manifest.
//
// Exit codes: 0 success, 2 usage error, 1 numerical failure.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sce/sce.hpp"
#include "svg.hpp"

namespace {

using namespace sce;

struct OutputSpec {
  std::string path;      // empty = stdout
  bool json = false;
  std::string plot_path; // empty = no plot
  bool log_x = false;
  bool log_y = false;
};

void add_output_flags(CLI::App* cmd, OutputSpec& out) {
  cmd->add_option("-o,--output", out.path, "output file (default: stdout)");
  cmd->add_flag("--json", out.json, "emit JSON records instead of CSV");
  cmd->add_option("--plot", out.plot_path, "also render an SVG line plot");
  cmd->add_flag("--logx", out.log_x, "log-scale x axis in the plot");
  cmd->add_flag("--logy", out.log_y, "log-scale y axis in the plot");
}

void emit(const Table& t, const OutputSpec& out) {
  std::ostringstream buf;
  if (out.json)
    write_json(buf, t);
  else
    write_csv(buf, t);
  if (out.path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream os(out.path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out.path);
    os << buf.str();
  }
  if (!out.plot_path.empty())
    write_svg_plot(out.plot_path, t, {out.log_x, out.log_y});
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = n > 1 ? lo + (hi - lo) * i / (n - 1.0) : lo;
  return g;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > 0.0))
    throw CLI::ValidationError("log grid requires positive bounds");
  std::vector<double> g(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::pow(10.0, n > 1 ? llo + (lhi - llo) * i / (n - 1.0) : llo);
  return g;
}

// Ordered parallel map: results land at their own index.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futs;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    futs.push_back(std::async(std::launch::async, [&] {
      for (int i = next++; i < n; i = next++) fn(i);
    }));
  for (auto& f : futs) f.get();
}

diode::EmissionModel parse_model(const std::string& name, double a, double b,
                                 bool b_given) {
  if (name == "linear") return diode::Linear{a};
  if (name == "quadratic") return diode::Quadratic{a};
  if (name == "fn") {
    if (!b_given)
      throw CLI::ValidationError("--model fn requires --b");
    return diode::FowlerNordheim{a, b};
  }
  throw CLI::ValidationError("unknown model: " + name);
}

// ---------------------------------------------------------------------------

Table table_universal(double f_min, double f_max, int steps) {
  Table t;
  t.columns = {"f", "j", "9j/4", "j_L", "j_Q", "j_FN"};
  for (double f : linspace(f_min, f_max, steps)) {
    const double j = diode::universal_j(f);
    const double jfn = f > 0.0 ? f * f * std::exp(-1.0 / f) : 0.0;
    t.add_row({f, j, 2.25 * j, f, f * f, jfn});
  }
  return t;
}

Table table_solve(const diode::EmissionModel& model) {
  const auto st = diode::solve(model);
  Table t;
  t.columns = {"f", "j", "j/j_CL", "j_small_a", "j_large_a"};
  t.add_row({st.f, st.j, 2.25 * st.j, diode::solve_small_a(model),
             diode::solve_large_a(model)});
  return t;
}

Table table_sweep(const std::string& model_name, double a_min, double a_max,
                  int points, double b, bool b_given, bool log_grid) {
  Table t;
  t.columns = {"a", "f", "9j/4", "small_a_9j/4", "large_a_9j/4"};
  const auto grid =
      log_grid ? logspace(a_min, a_max, points) : linspace(a_min, a_max, points);
  for (double a : grid) {
    const auto model = parse_model(model_name, a, b, b_given || model_name != "fn");
    const auto st = diode::solve(model);
    t.add_row({a, st.f, 2.25 * st.j, 2.25 * diode::solve_small_a(model),
               2.25 * diode::solve_large_a(model)});
  }
  return t;
}

fn::FnCurveOptions curve_options(const std::string& phi_eff_model, double c) {
  fn::FnCurveOptions opt;
  opt.c_factor = c;
  if (phi_eff_model == "none") {
    opt.use_phi_eff = false;
  } else if (phi_eff_model == "standard") {
    opt.use_phi_eff = true;
    opt.shape = fn::BarrierShape::standard;
  } else if (phi_eff_model == "fv") {
    opt.use_phi_eff = true;
    opt.shape = fn::BarrierShape::feng_verboncoeur;
  } else {
    throw CLI::ValidationError("--phi-eff must be none|standard|fv");
  }
  return opt;
}

Table table_fncurve(double l_nm, const units::Material& mat, double v_min_ev,
                    double v_max_ev, int points, bool fnplot,
                    const fn::FnCurveOptions& opt, int threads) {
  // fnplot grids are uniform in 1/V so a pure F^2 exp(-B/F) law lands on a
  // straight line; IV grids are uniform in V.
  std::vector<double> grid(points);
  if (fnplot) {
    const auto inv = linspace(1.0 / v_max_ev, 1.0 / v_min_ev, points);
    for (int i = 0; i < points; ++i) grid[i] = 1.0 / inv[points - 1 - i];
  } else {
    grid = linspace(v_min_ev, v_max_ev, points);
  }

  std::vector<fn::FnCurvePoint> pts(points);
  parallel_for(points, threads, [&](int i) {
    pts[i] = fn::space_charge_fn_curve(l_nm, mat, {grid[i]}, opt)[0];
  });

  Table t;
  if (fnplot) {
    t.columns = {"1/V_keV", "ln_Jfn/V2", "ln_Jsc/V2", "ln_Jcl/V2", "f", "j"};
    for (const auto& p : pts) {
      const double vk = p.v / 1000.0;
      const auto ln_over_v2 = [&](double j_em) {
        const double jsi = units::current_density_to_si(j_em);
        return std::log(jsi / (vk * vk));
      };
      t.add_row({1.0 / vk, ln_over_v2(p.j_fn), ln_over_v2(p.j_sc),
                 ln_over_v2(p.j_cl), p.f, p.j},
                p.note);
    }
  } else {
    t.columns = {"V_keV", "Jfn_A/cm2", "Jsc_A/cm2", "Jcl_A/cm2", "f", "j"};
    for (const auto& p : pts)
      t.add_row({p.v / 1000.0, units::current_density_to_si(p.j_fn),
                 units::current_density_to_si(p.j_sc),
                 units::current_density_to_si(p.j_cl), p.f, p.j},
                p.note);
  }
  return t;
}

Table table_vtrans(double l_nm, const units::Material& mat, double guess_ev) {
  const auto res = fn::transition_voltage(l_nm, mat, guess_ev);
  const auto ab = fn::fn_coefficients(units::DiodeConfig(res.v_trans, l_nm), mat);
  const auto st = diode::solve(diode::FowlerNordheim{ab.a, ab.b});
  Table t;
  t.columns = {"V_trans_keV", "iterations", "a", "b", "f", "j"};
  t.add_row({res.v_trans / 1000.0, static_cast<double>(res.iterations), ab.a,
             ab.b, st.f, st.j});
  return t;
}

Table table_array_field_diagonal(const lattice::LatticeGeometry& geom,
                                 const std::vector<double>& z_values,
                                 int samples) {
  if (samples < 2) samples = 2;
  Table t;
  t.columns = {"s", "x"};
  for (double z : z_values) t.columns.push_back("Fz_z" + format_double(z));
  for (int i = 0; i < samples; ++i) {
    // diagonal x = y from the array center to the corner of the bounding
    // square, s = path length / (sqrt(2) M)
    const double u = geom.m * i / (samples - 1.0);
    std::vector<double> row{u / geom.m, u};
    for (double z : z_values)
      row.push_back(lattice::finite_disk_field_z(geom, {u, u, z}));
    t.add_row(std::move(row));
  }
  return t;
}

Table table_array_axis(const lattice::LatticeGeometry& geom, double z_min,
                       double z_max, int steps) {
  Table t;
  t.columns = {"z", "Fz", "Fz_closed_form"};
  for (double z : linspace(z_min, z_max, steps))
    t.add_row({z, lattice::monopole_field_z(geom, {0.0, 0.0, z}),
               lattice::disk_field_closed_form(geom.n, geom.m, z)});
  return t;
}

Table table_array_map(const lattice::LatticeGeometry& geom, double z,
                      double extent, int res, double v0) {
  Table t;
  t.columns = {"x", "y", "V"};
  for (double x : linspace(-extent, extent, res))
    for (double y : linspace(-extent, extent, res))
      t.add_row({x, y, lattice::finite_disk_potential(geom, {x, y, z}, v0)});
  return t;
}

Table table_array_ripple(const lattice::LatticeGeometry& geom,
                         lattice::ArrayModel model, double z_min, double z_max,
                         int steps, int threads) {
  const auto grid = linspace(z_min, z_max, steps);
  std::vector<lattice::RippleMetrics> rm(steps);
  parallel_for(steps, threads,
               [&](int i) { rm[i] = lattice::ripple_metrics(geom, grid[i], model); });
  Table t;
  const bool dip = model == lattice::ArrayModel::dipole;
  t.columns = {dip ? "z_minus_d" : "z", "R_phi", "R_F"};
  for (int i = 0; i < steps; ++i)
    t.add_row({dip ? grid[i] - geom.d : grid[i], rm[i].r_phi, rm[i].r_field});
  return t;
}

Table table_saturn(const saturn::SaturnConfig& cfg, double r_min, double r_max,
                   int points, double theta, bool log_grid) {
  const auto grid =
      log_grid ? logspace(r_min, r_max, points) : linspace(r_min, r_max, points);
  Table t;
  t.columns = {"r", "phi_saturn", "phi_bare", "ratio"};
  for (const auto& s : saturn::decay_comparison(cfg, grid, theta))
    t.add_row({s.r, s.phi_saturn, s.phi_bare, s.ratio});
  return t;
}

Table table_oracle(double f) {
  const double j = diode::universal_j(f);
  const auto res = oracle::shoot(f, j);
  const auto rr = diode::verify_exact_relation(f, j);
  Table t;
  t.columns = {"f", "j", "phi_end", "phi_end_minus_1", "max_residual", "steps",
               "relation_residual", "poly_residual"};
  t.add_row({f, j, res.phi_end, res.phi_end - 1.0, res.max_residual,
             static_cast<double>(res.steps), rr.sqrt_form, rr.poly_form});
  return t;
}

// ---------------------------------------------------------------------------
// reproduce-figures

struct FigureEntry {
  std::string id;
  std::string file;
  std::string description;
};

void write_manifest(const std::filesystem::path& dir,
                    const std::vector<FigureEntry>& entries) {
  std::ofstream os(dir / "manifest.json");
  os << "[\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    os << "  {\"id\": \"" << entries[i].id << "\", \"file\": \""
       << entries[i].file << "\", \"description\": \""
       << entries[i].description << "\"}" << (i + 1 < entries.size() ? "," : "")
       << "\n";
  }
  os << "]\n";
}

int run_reproduce_figures(std::string out_dir, bool svg) {
  if (out_dir.empty()) {
    if (const char* env = std::getenv("SCE_OUT_DIR")) out_dir = env;
  }
  if (out_dir.empty()) out_dir = "figures";
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  std::vector<FigureEntry> manifest;
  auto save = [&](const std::string& id, const Table& t,
                  const std::string& desc, bool logx = false,
                  bool logy = false) {
    const std::string file = id + ".csv";
    std::ofstream os(dir / file, std::ios::binary);
    write_csv(os, t);
    if (svg) write_svg_plot((dir / (id + ".svg")).string(), t, {logx, logy});
    manifest.push_back({id, file, desc});
    std::cerr << "wrote " << (dir / file).string() << "\n";
  };

  const units::Material copper_like(7.0, 4.0);

  save("universal_current_field", table_universal(0.0, 1.0, 201),
       "universal 9j/4 vs f with linear, quadratic and FN example laws (a=b=1)");

  save("linear_sweep_lin", table_sweep("linear", 0.0, 5.0, 201, 0, false, false),
       "linear emission law: approach to the space-charge limit, linear a axis");
  save("linear_sweep_log",
       table_sweep("linear", 1e-3, 1e3, 181, 0, false, true),
       "linear emission law: approach to the space-charge limit, log a axis",
       true, false);
  save("quadratic_sweep_lin",
       table_sweep("quadratic", 0.0, 5.0, 201, 0, false, false),
       "quadratic emission law: approach to the space-charge limit, linear a axis");
  save("quadratic_sweep_log",
       table_sweep("quadratic", 1e-3, 1e3, 181, 0, false, true),
       "quadratic emission law: approach to the space-charge limit, log a axis",
       true, false);

  save("fn_iv_phi4",
       table_fncurve(1000.0, copper_like, 5000.0, 45000.0, 161, false, {}, 1),
       "space-charge-limited vs bare FN current, 1 um gap, 4 eV barrier");
  save("fn_plot_phi4",
       table_fncurve(1000.0, copper_like, 5000.0, 45000.0, 161, true, {}, 1),
       "FN-plot form of fn_iv_phi4 (1/V in 1/keV vs ln(J/V^2), J in A/cm^2)");
  save("fn_plot_phi2",
       table_fncurve(1000.0, units::Material(7.0, 2.0), 2500.0, 25000.0, 161,
                     true, {}, 1),
       "FN plot for a 2 eV barrier, 1 um gap");
  save("fn_plot_phi05",
       table_fncurve(1000.0, units::Material(0.5, 0.5), 300.0, 3000.0, 161,
                     true, {}, 1),
       "FN plot for a 0.5 eV barrier and 0.5 eV chemical potential, 1 um gap");

  {
    lattice::LatticeGeometry g{1.0, 0.0, 5.0, 10.0, 0.0};
    save("array_field_diagonal_n5_m10",
         table_array_field_diagonal(g, {0.4, 0.8, 1.6}, 401),
         "Fz along the x=y diagonal of a finite tip array, N=5 M=10");
    lattice::LatticeGeometry g2{1.0, 0.0, 10.0, 40.0, 0.0};
    save("array_field_diagonal_n10_m40",
         table_array_field_diagonal(g2, {0.4, 0.8, 1.6}, 401),
         "Fz along the x=y diagonal of a finite tip array, N=10 M=40");
    lattice::LatticeGeometry g3{1.0, 0.0, 4.0, 8.0, 0.0};
    save("array_potential_map_z04", table_array_map(g3, 0.4, 2.0, 81, 0.0),
         "potential map above the array at z=0.4 (N=4, M=8)");
    save("array_potential_map_z16", table_array_map(g3, 1.6, 2.0, 81, 0.0),
         "potential map above the array at z=1.6 (N=4, M=8)");
  }
  {
    lattice::LatticeGeometry g20{1.0, 0.0, 10.0, 20.0, 0.0};
    lattice::LatticeGeometry g10{1.0, 0.0, 10.0, 10.0, 0.0};
    save("ripple_monopole_m20",
         table_array_ripple(g20, lattice::ArrayModel::monopole, 0.5, 4.5, 41, 1),
         "monopole-array ripple metrics vs z, N=10 M=20", false, true);
    save("ripple_monopole_m10",
         table_array_ripple(g10, lattice::ArrayModel::monopole, 0.5, 4.5, 41, 1),
         "monopole-array ripple metrics vs z, N=10 M=10", false, true);
    lattice::LatticeGeometry gd{1.0, 0.0, 0.0, 20.0, 0.5};
    save("ripple_dipole_m20",
         table_array_ripple(gd, lattice::ArrayModel::dipole, 0.6, 4.5, 40, 1),
         "dipole-array ripple metrics vs z-d, d=0.5 M=20", false, true);
  }
  save("saturn_decay",
       table_saturn(saturn::SaturnConfig(1.0, 1.0), 1.5, 50.0, 121, 0.0, true),
       "gated (point+ring) vs bare tip potential decay on axis", true, true);

  write_manifest(dir, manifest);
  std::cerr << "wrote " << (dir / "manifest.json").string() << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"sce — 1D space-charge field-emission toolkit"};
  app.require_subcommand(1);

  OutputSpec out;

  // universal
  double f_min = 0.0, f_max = 1.0;
  int steps = 101;
  auto* cmd_universal =
      app.add_subcommand("universal", "universal current-field relation table");
  cmd_universal->add_option("--fmin", f_min, "lower f bound")->check(CLI::Range(0.0, 1.0));
  cmd_universal->add_option("--fmax", f_max, "upper f bound")->check(CLI::Range(0.0, 1.0));
  cmd_universal->add_option("--steps", steps, "number of rows")->check(CLI::PositiveNumber);
  add_output_flags(cmd_universal, out);

  // solve
  std::string model_name = "linear";
  double a_value = 1.0, b_value = 0.0;
  auto* cmd_solve = app.add_subcommand("solve", "solve one emission model");
  cmd_solve->add_option("--model", model_name, "linear|quadratic|fn")->required();
  cmd_solve->add_option("--a", a_value, "dimensionless emission strength")->required();
  auto* solve_b = cmd_solve->add_option("--b", b_value, "dimensionless FN exponent");
  add_output_flags(cmd_solve, out);

  // sweep
  double a_min = 0.01, a_max = 10.0;
  int sweep_points = 101;
  bool sweep_log = false;
  auto* cmd_sweep = app.add_subcommand("sweep", "sweep emission strength a");
  cmd_sweep->add_option("--model", model_name, "linear|quadratic|fn")->required();
  cmd_sweep->add_option("--amin", a_min, "lower a")->required();
  cmd_sweep->add_option("--amax", a_max, "upper a")->required();
  cmd_sweep->add_option("--points", sweep_points)->check(CLI::PositiveNumber);
  auto* sweep_b = cmd_sweep->add_option("--b", b_value, "FN exponent");
  cmd_sweep->add_flag("--log", sweep_log, "log-spaced a grid");
  add_output_flags(cmd_sweep, out);

  // fncurve
  double l_nm = 1000.0, mu = 7.0, phi = 4.0;
  double v_min = 5000.0, v_max = 45000.0;
  int curve_points = 101, threads = 1;
  bool um = false, fnplot = false;
  double c_factor = 1.0;
  std::string phi_eff_model = "none";
  auto* cmd_fncurve = app.add_subcommand(
      "fncurve", "space-charge vs bare Fowler-Nordheim current over a voltage grid");
  cmd_fncurve->add_option("--L", l_nm, "gap length [nm]")->required();
  cmd_fncurve->add_flag("--um", um, "interpret --L in microns");
  cmd_fncurve->add_option("--mu", mu, "chemical potential [eV]")->required();
  cmd_fncurve->add_option("--phi", phi, "work function [eV]")->required();
  cmd_fncurve->add_option("--vmin", v_min, "lower anode potential [eV]")->required();
  cmd_fncurve->add_option("--vmax", v_max, "upper anode potential [eV]")->required();
  cmd_fncurve->add_option("--points", curve_points)->check(CLI::PositiveNumber);
  cmd_fncurve->add_flag("--fnplot", fnplot, "emit (1/V, ln(J/V^2)) columns");
  cmd_fncurve->add_option("--C", c_factor, "scale factor applied to the solved current");
  cmd_fncurve->add_option("--phi-eff", phi_eff_model,
                          "effective work function model: none|standard|fv");
  cmd_fncurve->add_option("--parallel", threads, "worker threads")->check(CLI::PositiveNumber);
  add_output_flags(cmd_fncurve, out);

  // vtrans
  double guess = 10000.0;
  auto* cmd_vtrans =
      app.add_subcommand("vtrans", "transition voltage of the FN diode");
  cmd_vtrans->add_option("--L", l_nm, "gap length [nm]")->required();
  cmd_vtrans->add_flag("--um", um, "interpret --L in microns");
  cmd_vtrans->add_option("--mu", mu, "chemical potential [eV]")->required();
  cmd_vtrans->add_option("--phi", phi, "work function [eV]")->required();
  cmd_vtrans->add_option("--guess", guess, "starting guess [eV]");
  add_output_flags(cmd_vtrans, out);

  // array
  std::string array_what = "field", array_model = "monopole",
              array_scan = "diagonal";
  double n_param = 5.0, m_param = 10.0, d_param = 0.0;
  std::vector<double> z_values;
  double z_min = 0.5, z_max = 4.0, extent = 2.0, v0 = 0.0;
  int z_steps = 41, map_res = 81, diag_samples = 401;
  auto* cmd_array =
      app.add_subcommand("array", "periodic emitter-array electrostatics");
  cmd_array->add_option("what", array_what, "field|potential|ripple")->required();
  cmd_array->add_option("--model", array_model, "monopole|dipole");
  cmd_array->add_option("--N", n_param, "anode image index (anode at z=N/2)");
  cmd_array->add_option("--M", m_param, "truncation disk radius")->required();
  auto* opt_d = cmd_array->add_option("--d", d_param, "dipole half-spacing (0,1)");
  cmd_array->add_option("--z", z_values, "z values (field/potential scans)");
  cmd_array->add_option("--zmin", z_min, "ripple: lower z");
  cmd_array->add_option("--zmax", z_max, "ripple: upper z");
  cmd_array->add_option("--zsteps", z_steps, "ripple: grid size");
  cmd_array->add_option("--scan", array_scan, "field: diagonal|axis; potential: map");
  cmd_array->add_option("--extent", extent, "map half-width in pitches");
  cmd_array->add_option("--res", map_res, "map resolution per axis");
  cmd_array->add_option("--samples", diag_samples, "diagonal scan samples");
  cmd_array->add_option("--V0", v0, "anode potential offset for maps [eV]");
  cmd_array->add_option("--parallel", threads, "worker threads")->check(CLI::PositiveNumber);
  add_output_flags(cmd_array, out);

  // saturn
  double q_tip = 1.0, q_ring = 1.0, theta = 0.0, r_min = 1.5, r_max = 50.0,
         sat_tol = 1e-12;
  int l_max = 40, sat_points = 101;
  bool sat_log = false;
  auto* cmd_saturn =
      app.add_subcommand("saturn", "gated tip (point + ring) potential decay");
  cmd_saturn->add_option("--qtip", q_tip, "tip charge")->required();
  cmd_saturn->add_option("--qring", q_ring, "ring charge")->required();
  cmd_saturn->add_option("--lmax", l_max, "series truncation order");
  cmd_saturn->add_option("--tol", sat_tol, "term stopping tolerance");
  cmd_saturn->add_option("--rmin", r_min, "lower r (units of ring radius, > 1)");
  cmd_saturn->add_option("--rmax", r_max, "upper r");
  cmd_saturn->add_option("--points", sat_points)->check(CLI::PositiveNumber);
  cmd_saturn->add_option("--theta", theta, "polar angle [rad]");
  cmd_saturn->add_flag("--log", sat_log, "log-spaced r grid");
  add_output_flags(cmd_saturn, out);

  // oracle
  double oracle_f = 0.5;
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "shooting-integrator verification of the universal relation");
  cmd_oracle->require_subcommand(1);
  auto* cmd_oracle_verify = cmd_oracle->add_subcommand("verify", "integrate and report phi(1)");
  cmd_oracle_verify->add_option("--f", oracle_f, "cathode field fraction in (0,1]")->required();
  add_output_flags(cmd_oracle_verify, out);

  // reproduce-figures
  std::string fig_out;
  bool fig_svg = false;
  auto* cmd_figures = app.add_subcommand(
      "reproduce-figures", "regenerate all bundled datasets with a manifest");
  cmd_figures->add_option("--out", fig_out,
                          "output directory (default $SCE_OUT_DIR or ./figures)");
  cmd_figures->add_flag("--svg", fig_svg, "also render SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const double l_eff = um ? l_nm * 1000.0 : l_nm;
    if (cmd_universal->parsed()) {
      if (!(f_min < f_max))
        throw CLI::ValidationError("universal: require fmin < fmax");
      emit(table_universal(f_min, f_max, steps), out);
    } else if (cmd_solve->parsed()) {
      emit(table_solve(parse_model(model_name, a_value, b_value,
                                   !solve_b->empty())),
           out);
    } else if (cmd_sweep->parsed()) {
      emit(table_sweep(model_name, a_min, a_max, sweep_points, b_value,
                       !sweep_b->empty(), sweep_log),
           out);
    } else if (cmd_fncurve->parsed()) {
      emit(table_fncurve(l_eff, units::Material(mu, phi), v_min, v_max,
                         curve_points, fnplot,
                         curve_options(phi_eff_model, c_factor), threads),
           out);
    } else if (cmd_vtrans->parsed()) {
      emit(table_vtrans(l_eff, units::Material(mu, phi), guess), out);
    } else if (cmd_array->parsed()) {
      lattice::LatticeGeometry geom{1.0, 0.0, n_param, m_param, d_param};
      const auto model = array_model == "dipole" ? lattice::ArrayModel::dipole
                                                 : lattice::ArrayModel::monopole;
      if (array_model == "dipole" && opt_d->empty())
        throw CLI::ValidationError("--model dipole requires --d");
      if (array_what == "ripple") {
        emit(table_array_ripple(geom, model, z_min, z_max, z_steps, threads), out);
      } else if (array_what == "field") {
        if (array_scan == "axis") {
          emit(table_array_axis(geom, z_min, z_max, z_steps), out);
        } else {
          if (z_values.empty()) z_values = {0.4, 0.8, 1.6};
          emit(table_array_field_diagonal(geom, z_values, diag_samples), out);
        }
      } else if (array_what == "potential") {
        if (z_values.empty())
          throw CLI::ValidationError("array potential requires --z");
        emit(table_array_map(geom, z_values.front(), extent, map_res, v0), out);
      } else {
        throw CLI::ValidationError("array: first argument must be field|potential|ripple");
      }
    } else if (cmd_saturn->parsed()) {
      saturn::SaturnConfig cfg(q_tip, q_ring, l_max, sat_tol);
      if (const auto warn = cfg.charge_balance_warning())
        std::cerr << "warning: " << *warn << "\n";
      if (!(r_min > 1.0))
        throw CLI::ValidationError("saturn: r grid must stay above the ring radius (r > 1)");
      emit(table_saturn(cfg, r_min, r_max, sat_points, theta, sat_log), out);
    } else if (cmd_oracle_verify->parsed()) {
      if (!(oracle_f > 0.0 && oracle_f <= 1.0))
        throw CLI::ValidationError("oracle verify: require f in (0,1]");
      emit(table_oracle(oracle_f), out);
    } else if (cmd_figures->parsed()) {
      return run_reproduce_figures(fig_out, fig_svg);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
