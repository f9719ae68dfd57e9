#include "conemet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "conemet/divisor.hpp"
#include "conemet/hopf.hpp"
#include "conemet/metriceval.hpp"
#include "conemet/monodromy.hpp"
#include "conemet/pathint.hpp"
#include "conemet/reducible.hpp"
#include "conemet/serialize.hpp"
#include "conemet/surface.hpp"

namespace conemet {

using nlohmann::json;

json js(const RunConfig& cfg) {
  return json{{"subcommand", cfg.subcommand},
              {"beta", cfg.beta_text},
              {"rtol", cfg.rtol},
              {"atol", cfg.atol},
              {"res", cfg.res},
              {"exclusion", cfg.exclusion},
              {"curvature_safe", cfg.curvature_safe},
              {"multistart", cfg.multistart},
              {"seed", cfg.seed},
              {"deterministic", cfg.deterministic},
              {"out", cfg.out_dir},
              {"mesh", cfg.mesh_path}};
}

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitNonexistent = 2;
constexpr int kExitUndetermined = 3;
constexpr int kExitUsage = 64;

int exit_of(Existence e) {
  switch (e) {
    case Existence::Exists: return kExitOk;
    case Existence::ProvenNonexistent: return kExitNonexistent;
    case Existence::Undetermined: return kExitUndetermined;
  }
  return kExitFail;
}

IntegratorConfig integrator_cfg(const RunConfig& cfg) {
  IntegratorConfig c;
  c.rtol = cfg.rtol;
  c.atol = cfg.atol;
  return c;
}

SolverConfig solver_cfg(const RunConfig& cfg) {
  SolverConfig s;
  s.multistart = cfg.multistart;
  s.seed = cfg.seed;
  return s;
}

// Prints the artifact to stdout and mirrors it to <out>/<name>.json.
void emit(const RunConfig& cfg, const std::string& name, json& out) {
  out["run_config"] = js(cfg);
  std::string text = out.dump(2);
  text.push_back('\n');
  std::fwrite(text.data(), 1, text.size(), stdout);
  std::fflush(stdout);
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream f(std::filesystem::path(cfg.out_dir) / (name + ".json"), std::ios::binary);
    f << text;
  }
}

std::string class_string(const Divisor& d) {
  try {
    return json_reducibility(classify_reducibility(d));
  } catch (const Error& e) {
    if (e.code == Err::TwoIntegers) return "two-integer";
    throw;
  }
}

std::vector<ConePoint> divisor_cones(const Divisor& d) {
  return {{Chart::Z, Complex(0), d.beta[0]},
          {Chart::Z, Complex(1), d.beta[1]},
          {Chart::W, Complex(0), d.beta[2]}};
}

struct IrreducibleMetric {
  MonodromyTriple m;
  std::array<double, 3> trace_residuals{};
  Unitarization u;
  std::unique_ptr<FrameSource> src;
};

IrreducibleMetric make_irreducible_metric(const Divisor& d, const RunConfig& cfg) {
  IrreducibleMetric out;
  IntegratorConfig ic = integrator_cfg(cfg);
  out.m = compute_monodromy(d, ic);
  out.trace_residuals = verify_traces(out.m, d);
  out.u = unitarize(out.m);
  HopfDifferential q = hopf_from_divisor(d);
  CoeffFn A = [q](Complex z) { return ode_coefficient(q, z); };
  CoeffFn Aw = [q](Complex w) { return ode_coefficient_wchart(q, w); };
  out.src = std::make_unique<FrameSource>(A, Aw, out.u.P.inv(), divisor_cones(d), ic);
  return out;
}

json traces_json(const MonodromyTriple& m) {
  return json::array({js(m.M1.tr()), js(m.M2.tr()), js(m.M3.tr())});
}

json cone_orders_json(MetricSource& src) {
  json arr = json::array();
  for (const ConePoint& cone : src.cones()) {
    json entry = js(cone);
    entry["estimate"] = conical_order_estimate(src, cone);
    arr.push_back(entry);
  }
  return arr;
}

double max_curvature_deviation(const MetricSampleGrid& grid) {
  double dev = 0;
  for (const GridSample& s : grid.samples)
    if (std::isfinite(s.K_est)) dev = std::max(dev, std::abs(s.K_est - 1.0));
  return dev;
}

void write_csv(const std::string& path, const MetricSampleGrid& grid) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Err::BadArgument, "cannot open CSV output file: " + path);
  f << "z_re,z_im,lambda,K_est\n";
  char buf[200];
  for (const GridSample& s : grid.samples) {
    int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", s.z.real(), s.z.imag(),
                          s.lambda);
    f.write(buf, n);
    if (std::isfinite(s.K_est)) {
      n = std::snprintf(buf, sizeof buf, "%.17g\n", s.K_est);
      f.write(buf, n);
    } else {
      f << "nan\n";
    }
  }
}

// ---- subcommands -----------------------------------------------------------

int cmd_classify(const RunConfig& cfg, const Divisor& d, bool terse) {
  json out;
  out["class"] = class_string(d);
  out["L"] = trace_condition_value(d);
  SolveResult r = decide_existence(d, solver_cfg(cfg));
  out["existence"] = existence_name(r.existence);
  out["exists"] = r.existence == Existence::Exists
                      ? json(true)
                      : (r.existence == Existence::ProvenNonexistent ? json(false) : json());
  if (!r.note.empty()) out["note"] = r.note;
  if (terse) {
    json t{{"exists", out["exists"]}, {"existence", out["existence"]}, {"class", out["class"]}};
    emit(cfg, "exists", t);
  } else {
    emit(cfg, "classify", out);
  }
  return exit_of(r.existence);
}

int cmd_monodromy(const RunConfig& cfg, const Divisor& d) {
  MonodromyTriple m = compute_monodromy(d, integrator_cfg(cfg));
  json out;
  out["monodromy"] = js(m);
  out["traces"] = traces_json(m);
  out["trace_residuals"] = verify_traces(m, d);
  try {
    Unitarization u = unitarize(m);
    out["unitarization"] = js(u);
    DeformationClass dc = classify_deformation({u.U1, u.U2, u.U3});
    out["deformation"] = deformation_name(dc.tag);
  } catch (const Error& e) {
    if (e.code != Err::NotUnitarizable && e.code != Err::NoInvariantForm) throw;
    out["unitarization"] = nullptr;
    out["deformation"] = nullptr;
    out["note"] = e.what();
  }
  emit(cfg, "monodromy", out);
  return kExitOk;
}

int cmd_unitarize(const RunConfig& cfg, const Divisor& d) {
  MonodromyTriple m = compute_monodromy(d, integrator_cfg(cfg));
  json out;
  out["monodromy"] = js(m);
  try {
    Unitarization u = unitarize(m);
    out["unitarization"] = js(u);
  } catch (const Error& e) {
    if (e.code != Err::NotUnitarizable && e.code != Err::NoInvariantForm) throw;
    out["error"] = e.what();
    out["exists"] = false;
    emit(cfg, "unitarize", out);
    return kExitNonexistent;
  }
  emit(cfg, "unitarize", out);
  return kExitOk;
}

int cmd_solve_reducible(const RunConfig& cfg, const Divisor& d) {
  std::string klass = class_string(d);
  if (klass == "irreducible") {
    std::fprintf(stderr, "solve-reducible: divisor is irreducible; use monodromy/unitarize\n");
    return kExitUsage;
  }
  SolveResult r = decide_existence(d, solver_cfg(cfg));
  json out;
  out["class"] = klass;
  out["existence"] = existence_name(r.existence);
  if (!r.note.empty()) out["note"] = r.note;
  if (r.existence == Existence::Exists && !r.solutions.empty()) {
    const ReducibleSolution& sol = r.solutions.front();
    out.update(js(sol));
    out["g"] = js(build_developing_map(sol));
    out["residue_max"] = residue_check(sol);
  }
  emit(cfg, "solve-reducible", out);
  return exit_of(r.existence);
}

// Constructed metric for an existing divisor: numeric frame continuation in
// the irreducible class, closed-form pullback otherwise.
struct MetricBundle {
  std::unique_ptr<MetricSource> src;
  std::optional<IrreducibleMetric> irr;
  std::optional<ReducibleSolution> sol;
  std::optional<DevelopingMap> g;
};

MetricBundle make_metric(const Divisor& d, const SolveResult& r, const RunConfig& cfg) {
  MetricBundle b;
  if (classify_reducibility(d) == ReducibilityClass::Irreducible) {
    b.irr = make_irreducible_metric(d, cfg);
    b.src = std::move(b.irr->src);
  } else {
    b.sol = r.solutions.front();
    b.g = build_developing_map(*b.sol);
    b.src = std::make_unique<PullbackSource>(*b.g, b.sol->perm, d.beta);
  }
  return b;
}

int cmd_sample(const RunConfig& cfg, const Divisor& d) {
  SolveResult r = decide_existence(d, solver_cfg(cfg));
  if (r.existence != Existence::Exists) {
    json out{{"class", class_string(d)}, {"existence", existence_name(r.existence)}};
    if (!r.note.empty()) out["note"] = r.note;
    emit(cfg, "sample", out);
    return exit_of(r.existence);
  }
  MetricBundle b = make_metric(d, r, cfg);
  MetricSampleGrid grid = sample_metric(*b.src, cfg.res, cfg.exclusion);
  std::string csv =
      (std::filesystem::path(cfg.out_dir.empty() ? "." : cfg.out_dir) / "sample.csv").string();
  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
  write_csv(csv, grid);
  json out;
  out["class"] = class_string(d);
  out["area"] = total_area(*b.src, cfg.res);
  out["cone_order_estimates"] = cone_orders_json(*b.src);
  out["max_curvature_deviation"] = max_curvature_deviation(grid);
  out["csv"] = csv;
  out["retained_samples"] = grid.samples.size();
  emit(cfg, "sample", out);
  return kExitOk;
}

int cmd_surface(const RunConfig& cfg, const Divisor& d) {
  SurfaceSpec s;
  try {
    s = make_surface(d);
  } catch (const Error& e) {
    if (e.code != Err::ConditionViolated) throw;
    json out{{"exists", false}, {"error", e.what()}};
    emit(cfg, "surface", out);
    return kExitNonexistent;
  }
  SurfaceFrame sf = build_surface_frame(s, integrator_cfg(cfg));
  auto sigma = surface_sigma_source(sf, integrator_cfg(cfg));

  // Pointwise positivity scan of the end metric over both chart grids; the
  // density is evaluated in the chart where the point is represented.
  double dmin = std::numeric_limits<double>::infinity();
  int res = cfg.res;
  for (int chart = 0; chart < 2; ++chart) {
    for (int iy = 0; iy < res; ++iy) {
      for (int ix = 0; ix < res; ++ix) {
        double step = 3.0 / res;
        Complex zeta(-1.5 + (ix + 0.5) * step, -1.5 + (iy + 0.5) * step);
        bool zside = std::abs(zeta) <= std::sqrt(2.0);
        if ((chart == 0) != zside) continue;
        Complex z = chart == 0 ? zeta : 1.0 / zeta;
        if (std::abs(z) < cfg.exclusion || std::abs(z - 1.0) < cfg.exclusion) continue;
        double val = dsharp_metric(s, z);
        // w-chart density picks up |dz/dw|^2 = 1/|w|^4.
        if (chart == 1) val /= std::norm(zeta) * std::norm(zeta);
        dmin = std::min(dmin, val);
      }
    }
  }

  json out;
  out["exists"] = true;
  out["TA"] = total_abs_curvature(s);
  out["umbilics"] = json::array({js(s.q1), js(s.q2)});
  out["L"] = s.L;
  out["cone_orders"] = cone_orders_json(*sigma);
  out["dsharp_min"] = dmin;
  out["unitarity_residual"] = sf.unit.max_unitary_defect;
  if (!cfg.mesh_path.empty()) {
    export_mesh_obj(sf, cfg.mesh_path);
    out["mesh"] = cfg.mesh_path;
  }
  emit(cfg, "surface", out);
  return kExitOk;
}

int cmd_pipeline(const RunConfig& cfg, const Divisor& d) {
  std::string klass = class_string(d);
  SolveResult r = decide_existence(d, solver_cfg(cfg));
  if (r.existence != Existence::Exists) {
    // No artifacts for nonexistent/undetermined divisors.
    json out{{"class", klass}, {"existence", existence_name(r.existence)}};
    if (!r.note.empty()) out["note"] = r.note;
    out["run_config"] = js(cfg);
    std::string text = out.dump(2);
    text.push_back('\n');
    std::fwrite(text.data(), 1, text.size(), stdout);
    return exit_of(r.existence);
  }

  bool ok = true;
  json out;
  out["class"] = klass;
  out["existence"] = existence_name(r.existence);
  MetricBundle b = make_metric(d, r, cfg);
  if (b.irr) {
    out["traces"] = traces_json(b.irr->m);
    out["trace_residuals"] = b.irr->trace_residuals;
    out["unitarity_residual"] = b.irr->u.max_unitary_defect;
    out["monodromy_product_residual"] = b.irr->m.product_residual;
    for (double res : b.irr->trace_residuals) ok = ok && res < 1e-6;
    ok = ok && b.irr->u.max_unitary_defect < 1e-6 && b.irr->m.product_residual < 1e-6;
  } else {
    const ReducibleSolution& sol = *b.sol;
    out["case"] = sol.h1_case ? json(h1_case_name(*sol.h1_case)) : json(nullptr);
    out["N"] = sol.N;
    out["roots"] = js(sol.roots);
    double residue_max = residue_check(sol);
    out["residue_max"] = residue_max;
    out["g"] = js(*b.g);
    ok = ok && residue_max < 1e-6 * (1.0 + std::abs(sol.c));
  }

  MetricSampleGrid grid = sample_metric(*b.src, cfg.res, cfg.exclusion);
  double kdev = max_curvature_deviation(grid);
  out["K_dev"] = kdev;
  double area = total_area(*b.src, cfg.res);
  double target = 2.0 * kPi * (2.0 + d.beta[0] + d.beta[1] + d.beta[2]);
  double rel = std::abs(area - target) / target;
  out["area"] = area;
  out["area_rel_err"] = rel;
  out["cone_orders"] = cone_orders_json(*b.src);
  ok = ok && kdev < 1e-3 && rel < 0.01;
  out["checks_passed"] = ok;
  emit(cfg, "pipeline", out);
  return ok ? kExitOk : kExitFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"constant-curvature cone metrics on the sphere and their hyperbolic surfaces"};
  app.require_subcommand(1);

  const std::pair<const char*, const char*> subs[] = {
      {"classify", "reducibility class, trace condition value and existence verdict"},
      {"exists", "existence verdict only (exit 0/2/3)"},
      {"monodromy", "loop monodromy, traces, residuals, deformation class"},
      {"unitarize", "conjugate the monodromy into SU(2)"},
      {"solve-reducible", "residue-vanishing solve for integer-order divisors"},
      {"sample", "metric grid CSV plus area/curvature/cone-order summary"},
      {"surface", "three-ended constant-mean-curvature-1 surface data"},
      {"pipeline", "classify, construct, sample and verify in one run"},
  };
  for (auto [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--beta", cfg.beta_text, "cone orders b1,b2,b3 (decimals or p/q rationals)")
        ->required();
    sub->add_option("--rtol", cfg.rtol, "integrator relative tolerance")->capture_default_str();
    sub->add_option("--atol", cfg.atol, "integrator absolute tolerance")->capture_default_str();
    sub->add_option("--res", cfg.res, "grid resolution per chart")->capture_default_str();
    sub->add_option("--exclusion", cfg.exclusion, "sample exclusion radius around cones")
        ->capture_default_str();
    sub->add_option("--multistart", cfg.multistart, "Newton multistart budget")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "artifact output directory");
    sub->add_flag("--deterministic", cfg.deterministic,
                  "pin the seeded deterministic mode (outputs are byte-stable)");
    if (std::string(name) == "surface")
      sub->add_option("--mesh", cfg.mesh_path, "write a triangulated OBJ sample of the immersion");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();

  Divisor d;
  try {
    d = parse_divisor(cfg.beta_text);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s: %s\n", cfg.subcommand.c_str(), e.what());
    return kExitUsage;
  }

  try {
    if (cfg.subcommand == "classify") return cmd_classify(cfg, d, false);
    if (cfg.subcommand == "exists") return cmd_classify(cfg, d, true);
    if (cfg.subcommand == "monodromy") return cmd_monodromy(cfg, d);
    if (cfg.subcommand == "unitarize") return cmd_unitarize(cfg, d);
    if (cfg.subcommand == "solve-reducible") return cmd_solve_reducible(cfg, d);
    if (cfg.subcommand == "sample") return cmd_sample(cfg, d);
    if (cfg.subcommand == "surface") return cmd_surface(cfg, d);
    if (cfg.subcommand == "pipeline") return cmd_pipeline(cfg, d);
  } catch (const Error& e) {
    json out{{"error", e.what()}, {"error_code", err_name(e.code)}, {"run_config", js(cfg)}};
    std::string text = out.dump(2);
    text.push_back('\n');
    std::fwrite(text.data(), 1, text.size(), stdout);
    return e.code == Err::BadArgument ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}

}  // namespace conemet
