#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "prionkit/errors.hpp"
#include "prionkit/operator.hpp"
#include "prionkit/scaling.hpp"
#include "prionkit/strain_fit.hpp"
#include "serialize.hpp"

namespace prionkit_cli {

namespace {

using json = nlohmann::ordered_json;
using namespace prionkit;

std::string out_path(const RunContext& ctx, const std::string& stem) {
  return (std::filesystem::path(ctx.out_dir) /
          (stem + (ctx.object_format ? ".json" : ".tsv")))
      .string();
}

void emit(const RunContext& ctx, const std::string& stem,
          const TableBuilder& table, const json& object) {
  write_text(out_path(ctx, stem),
             ctx.object_format ? object.dump(2) + "\n" : table.str());
}

void say(const RunContext& ctx, const std::string& text) {
  if (!ctx.quiet) std::fputs(text.c_str(), stdout);
}

json grid_meta(const SizeGrid& g) {
  return json{{"n", g.n()}, {"x_min", g.x_min()}, {"x_max", g.x_max()},
              {"ratio", g.ratio}};
}

// The physical eigenproblem: advection at the steady monomer level, the
// configured fragmentation intensity, and the death rate shifting the
// eigenvalue. Returns the solution plus the physical growth rate.
struct PhysicalEigen {
  EigenSolution sol;
  double growth_rate;
};

PhysicalEigen solve_physical(const ToolConfig& cfg, const SizeGrid& grid) {
  const ValidationReport rep = validate_params(cfg.params);
  if (!rep.pass()) {
    std::string msg = "invalid parameters:";
    for (const auto& c : rep.checks)
      if (!c.ok) msg += " [" + c.name + ": " + c.detail + "]";
    throw ValidationError(msg);
  }
  const auto op =
      assemble_operator(grid, cfg.kernel, cfg.params.gamma, cfg.params.nu);
  const double ai = steady_monomer(cfg.params) * cfg.params.tau0;
  EigenSolution sol = principal_eigenpair(op, cfg.solver, ai, cfg.params.beta0);
  return {std::move(sol), sol.eigenvalue - cfg.params.mu0};
}

}  // namespace

int cmd_eigen(const RunContext& ctx) {
  const ToolConfig& cfg = ctx.cfg;
  const SizeGrid grid = make_grid(cfg.x_min, cfg.x_max, cfg.grid_n);
  const PhysicalEigen pe = solve_physical(cfg, grid);
  const EigenSolution& sol = pe.sol;

  TableBuilder t;
  t.comment("principal eigenpair of the aggregation-fragmentation operator");
  t.comment("gamma " + fmt(cfg.params.gamma) + "  nu " + fmt(cfg.params.nu) +
            "  mu0 " + fmt(cfg.params.mu0));
  t.comment("grid n " + fmt(grid.n()) + "  x_min " + fmt(grid.x_min()) +
            "  x_max " + fmt(grid.x_max()) + "  ratio " + fmt(grid.ratio));
  t.comment("growth_rate " + fmt(pe.growth_rate));
  t.comment("operator_eigenvalue " + fmt(sol.eigenvalue));
  t.comment("mean_size " + fmt(sol.mean_size));
  t.comment("residual " + fmt(sol.residual));
  t.comment("iterations " + fmt(sol.iterations));
  t.row({"x", "w", "density"});
  for (std::size_t i = 0; i < grid.n(); ++i)
    t.row({fmt(grid.x[i]), fmt(grid.w[i]),
           fmt(sol.density[static_cast<Eigen::Index>(i)])});

  json obj{{"gamma", cfg.params.gamma},
           {"nu", cfg.params.nu},
           {"mu0", cfg.params.mu0},
           {"grid", grid_meta(grid)},
           {"growth_rate", pe.growth_rate},
           {"operator_eigenvalue", sol.eigenvalue},
           {"mean_size", sol.mean_size},
           {"residual", sol.residual},
           {"iterations", sol.iterations}};
  json full = obj;
  full["x"] = grid.x;
  full["w"] = grid.w;
  full["density"] = std::vector<double>(sol.density.begin(), sol.density.end());
  emit(ctx, "eigensolution", t, full);

  if (ctx.object_format) {
    say(ctx, obj.dump(2) + "\n");
  } else {
    std::string s;
    s += "eigen: growth rate " + fmt(pe.growth_rate) + ", mean size " +
         fmt(sol.mean_size) + "\n";
    s += "  operator eigenvalue " + fmt(sol.eigenvalue) + " (death rate " +
         fmt(cfg.params.mu0) + " subtracted)\n";
    s += "  residual " + fmt(sol.residual) + " after " + fmt(sol.iterations) +
         " iterations on n=" + fmt(grid.n()) + " grid [" + fmt(grid.x_min()) +
         ", " + fmt(grid.x_max()) + "]\n";
    say(ctx, s);
  }
  return 0;
}

int cmd_scale_check(const RunContext& ctx) {
  const ToolConfig& cfg = ctx.cfg;
  const SizeGrid base_grid = make_grid(cfg.x_min, cfg.x_max, cfg.grid_n);
  const auto base_op = assemble_operator(base_grid, cfg.kernel,
                                         cfg.params.gamma, cfg.params.nu);
  const EigenSolution base = principal_eigenpair(base_op, cfg.solver);

  const double tol = cfg.sweep_tolerance;
  if (!(tol >= 0.0))
    throw ValidationError("scale-check: tolerance must be >= 0");

  TableBuilder t;
  t.comment("scale map vs direct solve across the (beta0, V*tau0) sweep");
  t.comment("base grid n " + fmt(base_grid.n()) + "  x_min " +
            fmt(base_grid.x_min()) + "  x_max " + fmt(base_grid.x_max()));
  t.comment("eigenvalue tolerance " + fmt(tol) + ", L1 tolerance " +
            fmt(2.0 * tol));
  t.row({"beta0", "vtau", "r_mapped", "r_direct", "rel_error", "l1_distance",
         "pass"});

  json rows = json::array();
  bool all_pass = true;
  for (const double b : cfg.sweep_beta0) {
    for (const double vt : cfg.sweep_vtau) {
      ModelParams p = cfg.params;
      p.beta0 = b;
      p.tau0 = vt;  // evaluated at V = 1, so V*tau0 = vt
      const EigenSolution mapped = scale_eigenfunction(base, p, 1.0);

      const double factor = mapped.grid.x_min() / base_grid.x_min();
      const SizeGrid dgrid = make_grid(cfg.x_min * factor, cfg.x_max * factor,
                                       cfg.grid_n);
      const auto dop =
          assemble_operator(dgrid, cfg.kernel, cfg.params.gamma, cfg.params.nu);
      const EigenSolution direct = principal_eigenpair(dop, cfg.solver, vt, b);
      const double r_direct = direct.eigenvalue - cfg.params.mu0;

      const double rel = std::abs(mapped.eigenvalue - r_direct) /
                         std::max(std::abs(r_direct), 1e-30);
      double l1 = 0.0;
      for (std::size_t i = 0; i < dgrid.n(); ++i)
        l1 += dgrid.w[i] *
              std::abs(mapped.density[static_cast<Eigen::Index>(i)] -
                       direct.density[static_cast<Eigen::Index>(i)]);
      const bool pass = rel <= tol && l1 <= 2.0 * tol;
      all_pass = all_pass && pass;

      t.row({fmt(b), fmt(vt), fmt(mapped.eigenvalue), fmt(r_direct), fmt(rel),
             fmt(l1), pass ? "yes" : "no"});
      rows.push_back(json{{"beta0", b},
                          {"vtau", vt},
                          {"r_mapped", mapped.eigenvalue},
                          {"r_direct", r_direct},
                          {"rel_error", rel},
                          {"l1_distance", l1},
                          {"pass", pass}});
    }
  }

  const json obj{{"tolerance", tol},
                 {"l1_tolerance", 2.0 * tol},
                 {"base_grid", grid_meta(base_grid)},
                 {"rows", rows},
                 {"pass", all_pass}};
  emit(ctx, "scale_check", t, obj);

  if (ctx.object_format) {
    say(ctx, obj.dump(2) + "\n");
  } else {
    std::string s = "scale-check: " + fmt(cfg.sweep_beta0.size()) + "x" +
                    fmt(cfg.sweep_vtau.size()) + " sweep, tolerance " +
                    fmt(tol) + ": " + (all_pass ? "all pairs pass" : "FAIL") +
                    "\n";
    say(ctx, s);
  }
  return all_pass ? 0 : 5;
}

int cmd_simulate(const RunContext& ctx) {
  const ToolConfig& cfg = ctx.cfg;
  SimConfig sc;
  sc.params = cfg.params;
  sc.kernel = cfg.kernel;
  sc.grid = make_grid(cfg.x_min, cfg.x_max, cfg.grid_n);
  sc.V0 = cfg.v0;
  sc.t_end = cfg.t_end;
  sc.dt = cfg.dt;
  sc.mode = cfg.mode;
  sc.output_stride = static_cast<int>(cfg.output_stride);
  sc.u0 = cfg.initial == "gaussian"
              ? initial_gaussian(sc.grid, cfg.center, cfg.width)
              : initial_exponential(sc.grid);
  sc.u0 *= cfg.amplitude;

  const Trajectory traj = simulate(sc);

  TableBuilder t;
  t.comment("time series of the aggregation-fragmentation simulation");
  t.comment(std::string("mode ") +
            (cfg.mode == SimMode::FrozenV ? "frozen-v" : "full-nonlinear") +
            "  dt " + fmt(cfg.dt) + "  t_end " + fmt(cfg.t_end));
  t.comment("grid n " + fmt(sc.grid.n()) + "  x_min " + fmt(sc.grid.x_min()) +
            "  x_max " + fmt(sc.grid.x_max()));
  t.comment("outflow_mass " + fmt(traj.outflow_mass));
  t.comment("leak_mass " + fmt(traj.leak_mass));
  t.comment("protein_drift " + fmt(traj.protein_drift));
  t.comment("max_V_deviation " + fmt(traj.max_V_deviation));
  t.row({"time", "V", "P", "M"});
  for (const SimState& s : traj.states)
    t.row({fmt(s.time), fmt(s.V), fmt(s.P), fmt(s.M)});

  json samples = json::array();
  for (const SimState& s : traj.states)
    samples.push_back(
        json{{"time", s.time}, {"V", s.V}, {"P", s.P}, {"M", s.M}});
  json traj_obj{
      {"mode", cfg.mode == SimMode::FrozenV ? "frozen-v" : "full-nonlinear"},
      {"dt", cfg.dt},
      {"t_end", cfg.t_end},
      {"grid", grid_meta(sc.grid)},
      {"outflow_mass", traj.outflow_mass},
      {"leak_mass", traj.leak_mass},
      {"protein_drift", traj.protein_drift},
      {"max_V_deviation", traj.max_V_deviation},
      {"samples", samples}};
  emit(ctx, "trajectory", t, traj_obj);

  const Eigen::VectorXd& uf = traj.states.back().u;
  TableBuilder td;
  td.comment("polymer density at t_end");
  td.row({"x", "w", "u"});
  for (std::size_t i = 0; i < sc.grid.n(); ++i)
    td.row({fmt(sc.grid.x[i]), fmt(sc.grid.w[i]),
            fmt(uf[static_cast<Eigen::Index>(i)])});
  json dens_obj{{"time", traj.states.back().time},
                {"x", sc.grid.x},
                {"w", sc.grid.w},
                {"u", std::vector<double>(uf.begin(), uf.end())}};
  emit(ctx, "final_density", td, dens_obj);

  std::string summary =
      "simulate: " + fmt(traj.states.size()) + " samples to t=" +
      fmt(traj.states.back().time) + ", final P " +
      fmt(traj.states.back().P) + ", final M " + fmt(traj.states.back().M) +
      "\n";
  int exit_code = 0;
  json cmp;

  if (cfg.reference) {
    const PhysicalEigen pe = solve_physical(cfg, sc.grid);
    const ShapeDistanceSeries series = shape_convergence(traj, pe.sol);

    TableBuilder ts;
    ts.comment("weighted-L1 distance of u(.,t)/P(t) to the eigenfunction");
    ts.comment("reference growth rate " + fmt(pe.growth_rate));
    ts.row({"time", "distance"});
    for (std::size_t k = 0; k < series.time.size(); ++k)
      ts.row({fmt(series.time[k]), fmt(series.distance[k])});
    json shape_obj{{"reference_growth_rate", pe.growth_rate},
                   {"time", series.time},
                   {"distance", series.distance}};
    emit(ctx, "shape_distance", ts, shape_obj);

    // growth-rate comparison over the configured (or default second-half)
    // window, clamped to the sampled span
    const double t_back = traj.states.back().time;
    double lo = cfg.rate_window_lo, hi = cfg.rate_window_hi;
    if (std::isnan(lo)) lo = 0.5 * t_back;
    if (std::isnan(hi)) hi = t_back;
    hi = std::min(hi, t_back);
    const double r_emp = empirical_growth_rate(traj, lo, hi);
    const double rel = std::abs(r_emp - pe.growth_rate) /
                       std::max(std::abs(pe.growth_rate), 1e-30);
    const bool pass = rel <= cfg.rate_tolerance;
    if (!pass) exit_code = 5;

    cmp = json{{"empirical_growth_rate", r_emp},
               {"eigenvalue_growth_rate", pe.growth_rate},
               {"relative_error", rel},
               {"window", {lo, hi}},
               {"tolerance", cfg.rate_tolerance},
               {"pass", pass},
               {"final_shape_distance", series.distance.back()}};
    summary += "  growth rate " + fmt(r_emp) + " vs eigenvalue " +
               fmt(pe.growth_rate) + " (rel " + fmt(rel) + ", tol " +
               fmt(cfg.rate_tolerance) + "): " + (pass ? "pass" : "FAIL") +
               "\n";
    summary += "  final shape distance " + fmt(series.distance.back()) + "\n";
  }

  if (ctx.object_format) {
    json obj{{"samples", traj.states.size()},
             {"t_end", traj.states.back().time},
             {"final_P", traj.states.back().P},
             {"final_M", traj.states.back().M},
             {"protein_drift", traj.protein_drift},
             {"max_V_deviation", traj.max_V_deviation}};
    if (cfg.reference) obj["growth_rate_comparison"] = cmp;
    say(ctx, obj.dump(2) + "\n");
  } else {
    say(ctx, summary);
  }
  return exit_code;
}

int cmd_fit(const RunContext& ctx) {
  const ToolConfig& cfg = ctx.cfg;
  const std::string dataset = resolve_dataset(cfg);
  const std::vector<StrainRecord> recs = load_strains_file(dataset);

  std::vector<FitVariant> variants;
  if (cfg.variant == "mu0-zero" || cfg.variant == "both")
    variants.push_back(FitVariant::Mu0Zero);
  if (cfg.variant == "mu0-free" || cfg.variant == "both")
    variants.push_back(FitVariant::Mu0Free);

  FitOptions opts;
  opts.allow_nu_above_one = cfg.allow_nu_above_one;
  if (cfg.curve_points < 2)
    throw ValidationError("fit: curve_points must be >= 2");

  TableBuilder tr;
  tr.comment("reduced-model fits of the strain panel: G = A*(r+mu0)^(1/(nu-1)) + b");
  tr.comment("dataset " + dataset + " (" + fmt(recs.size()) + " strains)");
  tr.row({"variant", "nu", "mu0", "A", "b", "sse", "r_squared",
          "starts_tried", "converged"});
  TableBuilder tres;
  tres.comment("per-strain residuals G - G_hat");
  tres.row({"variant", "strain", "r", "G", "predicted", "residual"});

  json fits = json::array();
  std::vector<std::pair<std::string, FitResult>> results;
  for (const FitVariant v : variants) {
    const FitResult f = fit(recs, v, opts);
    const std::string name =
        v == FitVariant::Mu0Zero ? "mu0-zero" : "mu0-free";
    results.emplace_back(name, f);

    tr.row({name, fmt(f.nu), fmt(f.mu0), fmt(f.A), fmt(f.b), fmt(f.sse),
            fmt(f.r_squared), fmt(f.starts_tried),
            f.converged ? "yes" : "no"});

    json residuals = json::array();
    for (const StrainRecord& rec : recs) {
      const double g_hat = predict_G(rec.r, f.nu, f.mu0, f.A, f.b);
      tres.row({name, rec.name, fmt(rec.r), fmt(rec.G), fmt(g_hat),
                fmt(rec.G - g_hat)});
      residuals.push_back(json{{"strain", rec.name},
                               {"r", rec.r},
                               {"G", rec.G},
                               {"predicted", g_hat},
                               {"residual", rec.G - g_hat}});
    }

    // sampled stability curve for plotting
    TableBuilder tc;
    tc.comment("fitted stability curve, variant " + name);
    tc.comment("nu " + fmt(f.nu) + "  mu0 " + fmt(f.mu0) + "  A " + fmt(f.A) +
               "  b " + fmt(f.b));
    tc.row({"r", "G"});
    std::vector<double> rs, gs;
    for (long k = 0; k <= cfg.curve_points; ++k) {
      const double r =
          0.01 + (0.2 - 0.01) * static_cast<double>(k) /
                     static_cast<double>(cfg.curve_points);
      const double g = predict_G(r, f.nu, f.mu0, f.A, f.b);
      tc.row({fmt(r), fmt(g)});
      rs.push_back(r);
      gs.push_back(g);
    }
    const std::string stem =
        v == FitVariant::Mu0Zero ? "fit_curve_mu0_zero" : "fit_curve_mu0_free";
    json curve{{"variant", name}, {"r", rs}, {"G", gs}};
    emit(ctx, stem, tc, curve);

    fits.push_back(json{{"variant", name},
                        {"nu", f.nu},
                        {"mu0", f.mu0},
                        {"A", f.A},
                        {"b", f.b},
                        {"sse", f.sse},
                        {"r_squared", f.r_squared},
                        {"starts_tried", f.starts_tried},
                        {"converged", f.converged},
                        {"residuals", residuals}});
  }

  // the report carries both sections: the parameter table, then the
  // per-strain residuals (tres opens with its own comment as separator)
  const json report{{"dataset", dataset},
                    {"n_strains", recs.size()},
                    {"fits", fits}};
  write_text(out_path(ctx, "fit_report"), ctx.object_format
                                              ? report.dump(2) + "\n"
                                              : tr.str() + tres.str());

  if (ctx.object_format) {
    say(ctx, report.dump(2) + "\n");
  } else {
    // parameter block, one column per variant; rounded for reading — the
    // artifacts carry full precision
    std::string s = "fit of " + fmt(recs.size()) + " strains from " + dataset +
                    "\n";
    char line[160];
    const auto num = [&](double v) {
      std::snprintf(line, sizeof line, "%.6g", v);
      return std::string(line);
    };
    auto row = [&](const char* label, auto select) {
      std::string r = "  ";
      std::snprintf(line, sizeof line, "%-6s", label);
      r += line;
      for (const auto& [name, f] : results) {
        std::snprintf(line, sizeof line, "  %14s", select(f).c_str());
        r += line;
      }
      return r + "\n";
    };
    std::string header = "        ";
    for (const auto& [name, f] : results) {
      std::snprintf(line, sizeof line, "  %14s", name.c_str());
      header += line;
    }
    s += header + "\n";
    s += row("nu", [&](const FitResult& f) { return num(f.nu); });
    s += row("mu0", [&](const FitResult& f) {
      return f.variant == FitVariant::Mu0Zero ? std::string("0 (fixed)")
                                              : num(f.mu0);
    });
    s += row("A", [&](const FitResult& f) { return num(f.A); });
    s += row("b", [&](const FitResult& f) { return num(f.b); });
    s += row("R2", [&](const FitResult& f) { return num(f.r_squared); });
    s += row("sse", [&](const FitResult& f) { return num(f.sse); });
    say(ctx, s);
  }
  return 0;
}

}  // namespace prionkit_cli
