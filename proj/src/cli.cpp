#include "dcs/cli.hpp"

#include <cmath>
#include <ostream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/analysis.hpp"
#include "dcs/curvature.hpp"
#include "dcs/error.hpp"
#include "dcs/gauge.hpp"
#include "dcs/io.hpp"
#include "dcs/solver.hpp"
#include "dcs/structures.hpp"

namespace dcs {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string mesh;
  std::string structure;
  std::string target;
  std::string out;
  std::string report;
  double tolerance = 1e-10;
};

ordered_json violation_json(const TriangulatedSurface& S, const Violation& v) {
  ordered_json j;
  j["kind"] = v.kind;
  if (v.edge >= 0) {
    auto [a, b] = S.edges()[v.edge];
    j["edge"] = std::to_string(a) + "-" + std::to_string(b);
  }
  if (v.face >= 0) j["face"] = S.faces()[v.face];
  j["value"] = v.value;
  if (v.warning) j["warning"] = true;
  return j;
}

// Exit 1 for domain failures, 2 for IO/schema problems.
int exit_code_for(Errc c) { return c == Errc::SchemaError ? 2 : 1; }

struct CommandOutcome {
  int exit_code = 0;
};

// Collects per-face compatibility residuals and the partial-length sum
// residual of a realized metric.
ordered_json metric_residuals(const TriangulatedSurface& S, const ConformalData& data,
                              const PartialMetric& m) {
  double max_compat = 0.0;
  for (int f = 0; f < S.face_count(); ++f) {
    const auto& v = S.faces()[f];
    const std::array<double, 6> d{m.partial(S, v[0], v[1]), m.partial(S, v[1], v[0]),
                                  m.partial(S, v[1], v[2]), m.partial(S, v[2], v[1]),
                                  m.partial(S, v[2], v[0]), m.partial(S, v[0], v[2])};
    max_compat = std::max(max_compat, check_compatibility(data.geometry, d));
  }
  double max_sum = 0.0;
  for (int e = 0; e < S.edge_count(); ++e)
    max_sum = std::max(max_sum, std::abs(m.d_fwd[e] + m.d_bwd[e] - m.l[e]));
  ordered_json r;
  r["max_compatibility"] = max_compat;
  r["max_partial_sum_defect"] = max_sum;
  return r;
}

double max_length_drift(const TriangulatedSurface& S, const ConformalData& before,
                        const ConformalData& after) {
  double drift = 0.0;
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    const double l0 = edge_length(before.family[e], before.f[i], before.f[j],
                                  before.alpha_at(i), before.alpha_at(j), before.eta[e],
                                  before.C_edge(e));
    const double l1 = edge_length(after.family[e], after.f[i], after.f[j], after.alpha_at(i),
                                  after.alpha_at(j), after.eta[e], after.C_edge(e));
    drift = std::max(drift, std::abs(l1 - l0));
  }
  return drift;
}

CommandOutcome run_check(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  const auto violations = validate_data(S, data);
  ordered_json vj = ordered_json::array();
  bool blocking = false;
  for (const auto& v : violations) {
    vj.push_back(violation_json(S, v));
    blocking = blocking || !v.warning;
  }
  report["violations"] = vj;
  if (blocking) {
    report["status"] = "invalid";
    return {1};
  }
  try {
    const PartialMetric m = realize(S, data);
    report["residuals"] = metric_residuals(S, data, m);
    report["status"] = "ok";
    return {0};
  } catch (const Error& e) {
    report["status"] = "invalid";
    report["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    return {1};
  }
}

CommandOutcome run_realize(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  const PartialMetric m = realize(S, data);
  report["residuals"] = metric_residuals(S, data, m);
  if (!opt.out.empty()) {
    write_file(opt.out, dump_deterministic(metric_to_json(S, m)));
    report["output"] = opt.out;
  }
  report["status"] = "ok";
  return {0};
}

CommandOutcome run_classify(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  if (data.geometry == Geometry::Euclidean)
    fail(Errc::WrongGeometry, "the classifier covers hyperbolic and spherical structures");

  ordered_json edges = ordered_json::array();
  bool all_match = true;
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    const FamilyTag tag = data.family[e];
    const double ai = data.alpha_at(i), aj = data.alpha_at(j);
    const double eta = data.eta[e], C = data.C_edge(e);
    EdgeProvider provider = [=](double fi, double fj) {
      return partial_lengths(tag, fi, fj, ai, aj, eta, C);
    };
    ordered_json ej;
    ej["edge"] = std::to_string(i) + "-" + std::to_string(j);
    ej["declared"] = family_name(tag);
    bool classified = false;
    std::string last_error;
    for (double half : {0.25, 0.125, 0.0625, 0.03125, 0.015625}) {
      const SearchBox box{data.f[i] - half, data.f[i] + half, data.f[j] - half,
                          data.f[j] + half};
      try {
        const ClassificationResult r = classify_edge(provider, data.geometry, box);
        ej["recovered"] = family_name(r.family);
        ej["case"] = r.case_two ? 2 : 1;
        if (r.case_two) {
          ej["C"] = r.C_ij;
        } else {
          ej["alpha_i"] = r.alpha_i;
          ej["alpha_j"] = r.alpha_j;
        }
        ej["eta"] = r.eta;
        ej["fit_residual"] = r.fit_residual;
        classified = true;
        all_match = all_match && r.family == tag;
        break;
      } catch (const Error& err) {
        last_error = err.what();
        if (err.code() != Errc::ProviderFailure) break;  // shrink only on invalid probes
      }
    }
    if (!classified) {
      ej["error"] = last_error;
      all_match = false;
    }
    edges.push_back(ej);
  }
  report["edges"] = edges;
  report["status"] = all_match ? "ok" : "invalid";
  return {all_match ? 0 : 1};
}

CommandOutcome run_normalize_alpha(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  const ConformalData out = normalize_alpha(S, data);
  report["residuals"] = {{"max_length_drift", max_length_drift(S, data, out)}};
  if (!opt.out.empty()) {
    save_structure(opt.out, S, out);
    report["output"] = opt.out;
  }
  report["status"] = "ok";
  return {0};
}

CommandOutcome run_fix_gauge(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  const ConformalData out = fix_gauge(S, data);
  report["residuals"] = {{"max_length_drift", max_length_drift(S, data, out)}};
  if (!opt.out.empty()) {
    save_structure(opt.out, S, out);
    report["output"] = opt.out;
  }
  report["status"] = "ok";
  return {0};
}

CommandOutcome run_convert(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  const WeightedConformalData w = to_weighted(S, data);
  double drift = 0.0;
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    const double l0 = edge_length(data.family[e], data.f[i], data.f[j], data.alpha_at(i),
                                  data.alpha_at(j), data.eta[e], data.C_edge(e));
    const double l1 = weighted_edge_length(w.geometry, w.epsilon[i], w.epsilon[j], w.u[i], w.u[j],
                                           w.zeta[e]);
    drift = std::max(drift, std::abs(l1 - l0));
  }
  report["residuals"] = {{"max_length_drift", drift}};
  if (!opt.out.empty()) {
    write_file(opt.out, dump_deterministic(weighted_to_json(S, w)));
    report["output"] = opt.out;
  }
  report["status"] = "ok";
  return {0};
}

CommandOutcome run_reduce(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  ordered_json edges = ordered_json::array();
  bool ok = true;
  double max_residual = 0.0;
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    ordered_json ej;
    ej["edge"] = std::to_string(i) + "-" + std::to_string(j);
    if (data.family[e] != FamilyTag::SphC3) {
      ej["error"] = "not a c3 edge";
      ok = false;
      edges.push_back(ej);
      continue;
    }
    try {
      const ReducedForm r =
          reduce_c3(data.alpha_at(i), data.alpha_at(j), data.eta[e], data.f[i], data.f[j]);
      ej["type"] = r.type_label;
      ej["r_i"] = r.r_i;
      ej["r_j"] = r.r_j;
      ej["residual"] = r.residual;
      max_residual = std::max(max_residual, r.residual);
    } catch (const Error& err) {
      ej["error"] = err.what();
      ok = false;
    }
    edges.push_back(ej);
  }
  report["edges"] = edges;
  report["residuals"] = {{"max_reduction_residual", max_residual}};
  report["status"] = ok ? "ok" : "invalid";
  return {ok ? 0 : 1};
}

CommandOutcome run_curvature(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  const PartialMetric m = realize(S, data);
  const CurvatureVector K = vertex_curvatures(S, data.geometry, m);
  report["K"] = K.K;
  double sum = 0.0;
  for (double k : K.K) sum += k;
  report["residuals"] = {{"gauss_bonnet", gauss_bonnet_residual(S, data.geometry, m)},
                         {"total_defect", sum}};
  report["status"] = "ok";
  return {0};
}

CommandOutcome run_solve(const Options& opt, ordered_json& report) {
  const TriangulatedSurface S = load_mesh(opt.mesh);
  const ConformalData data = load_structure(opt.structure, S);
  if (opt.target.empty()) fail(Errc::SchemaError, "solve needs --target");
  const std::vector<double> K_target = load_target(opt.target, S);
  SolverConfig cfg;
  cfg.tolerance = opt.tolerance;
  const SolveResult r = solve_prescribed_curvature(S, data, K_target, cfg);
  report["iterations"] = r.iterations;
  report["residuals"] = {{"max_curvature_defect", r.residual}};
  if (!opt.out.empty()) {
    ConformalData solved = data;
    solved.f = r.f;
    save_structure(opt.out, S, solved);
    report["output"] = opt.out;
  }
  report["status"] = "ok";
  return {0};
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"discrete conformal structure toolkit", "dcs"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, CommandOutcome (*)(const Options&, ordered_json&)>>
      commands = {
          {"check", run_check},           {"realize", run_realize},
          {"classify", run_classify},     {"normalize-alpha", run_normalize_alpha},
          {"fix-gauge", run_fix_gauge},   {"convert", run_convert},
          {"reduce", run_reduce},         {"curvature", run_curvature},
          {"solve", run_solve},
      };

  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--mesh", opt.mesh)->required();
    sub->add_option("--structure", opt.structure)->required();
    sub->add_option("--target", opt.target);
    sub->add_option("--out", opt.out);
    sub->add_option("--tolerance", opt.tolerance);
    sub->add_option("--report", opt.report);
  }

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  ordered_json report;
  int code = 0;
  for (const auto& [name, fn] : commands) {
    if (!app.get_subcommand(name)->parsed()) continue;
    report["command"] = name;
    report["status"] = "ok";  // keeps the key position; handlers overwrite it
    try {
      code = fn(opt, report).exit_code;
    } catch (const Error& e) {
      report["status"] = "error";
      report["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
      code = exit_code_for(e.code());
    } catch (const std::exception& e) {
      report["status"] = "error";
      report["error"] = {{"code", "internal"}, {"message", e.what()}};
      code = 2;
    }
    break;
  }

  const std::string text = dump_deterministic(report);
  out << text;
  if (!opt.report.empty()) {
    try {
      write_file(opt.report, text);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace dcs
