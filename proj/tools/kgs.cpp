#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kgs/analysis.hpp"
#include "kgs/errors.hpp"
#include "kgs/hypotheses.hpp"
#include "kgs/io.hpp"
#include "kgs/solvers.hpp"

#ifndef KGS_VERSION
#define KGS_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using kgs::Json;

namespace {

enum Exit { ok = 0, input_error = 1, hypotheses_fail = 2, solver_fail = 3, refuted = 4, vacuous = 5 };

struct Common {
  std::string graph;
  std::string instance;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct Run {
  std::string command;
  Common common;
  Json config;
  fs::path dir;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  // Embedded in every artifact; excludes the duration so artifacts of
  // identical runs are byte-identical.
  Json manifest() const {
    return {{"command", command},
            {"inputs", {{"graph", common.graph}, {"instance", common.instance}}},
            {"config", config},
            {"seed", common.seed},
            {"threads", common.threads},
            {"version", KGS_VERSION}};
  }

  void write(const std::string& name, Json body) const {
    body["manifest"] = manifest();
    kgs::write_json(dir / name, body);
  }

  void finish(int exit_code) const {
    Json m = manifest();
    m["exit_code"] = exit_code;
    m["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    kgs::write_json(dir / "manifest.json", m);
  }
};

std::uint64_t resolve_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("KGS_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw kgs::InputError(std::string("KGS_SEED is not an unsigned integer: ") + env);
    }
  }
  return flag;
}

fs::path run_directory(const Common& c, const std::string& command) {
  if (!c.out.empty()) return c.out;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream name;
  name << command << '-' << std::put_time(&tm, "%Y%m%dT%H%M%SZ") << "-seed" << c.seed;
  return fs::path("runs") / name.str();
}

Run open_run(const std::string& command, Common common, Json config) {
  common.seed = resolve_seed(common.seed);
  Run run{command, common, std::move(config), {}};
  run.dir = run_directory(run.common, command);
  fs::create_directories(run.dir);
  return run;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--graph", c.graph, "graph JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--instance", c.instance, "instance JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "run directory (default runs/<command>-<timestamp>-seed<N>)");
  sub->add_option("--seed", c.seed, "RNG seed; KGS_SEED overrides");
  sub->add_option("--threads", c.threads, "worker threads; 1 is bitwise reproducible")->check(CLI::PositiveNumber);
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << std::scientific << x;
  return s.str();
}

kgs::EmbeddingOptions embedding_options(const Common& c) {
  kgs::EmbeddingOptions o;
  o.threads = c.threads;
  return o;
}

void print_report(const kgs::HypothesisReport& r) {
  std::cout << std::left << std::setw(8) << "hyp" << std::setw(8) << "holds" << std::setw(44) << "inequality"
            << "margin\n";
  for (const auto& v : r.verdicts) {
    for (std::size_t i = 0; i < v.margins.size(); ++i) {
      const auto& m = v.margins[i];
      std::cout << std::left << std::setw(8) << (i == 0 ? v.name : "") << std::setw(8)
                << (m.holds() ? "yes" : "NO") << std::setw(44) << m.label << fmt(m.value) << '\n';
    }
  }
  std::cout << "C_1p = " << fmt(r.c_p) << "  C_1q = " << fmt(r.c_q) << '\n';
  if (r.geometry) {
    const auto& g = *r.geometry;
    std::cout << "M1 = " << fmt(g.m1) << "  M2 = " << fmt(g.m2) << "  z* = " << fmt(g.zstar)
              << "  g(z*) = " << fmt(g.g_at_zstar) << "  g''(z*) = " << fmt(g.g2nd_at_zstar) << '\n';
  }
  for (const auto& w : r.warnings) std::cout << "warning: " << w << '\n';
  std::cout << (r.all_hold() ? "all hypotheses hold" : "hypotheses violated") << '\n';
}

struct Loaded {
  std::shared_ptr<const kgs::Domain> domain;
  std::optional<kgs::KirchhoffInstance> instance;
};

Loaded load(const Common& c, std::optional<kgs::H4Mode> mode = std::nullopt) {
  Loaded l;
  l.domain = kgs::load_domain(fs::path(c.graph));
  auto inst = kgs::load_instance(fs::path(c.instance), l.domain);
  l.instance.emplace(mode ? inst.with_mode(*mode) : inst);
  return l;
}

int cmd_check(const Common& common, const std::string& mode_flag) {
  std::optional<kgs::H4Mode> mode;
  if (!mode_flag.empty()) mode = kgs::h4_mode_from_string(mode_flag);
  const auto l = load(common, mode);
  const auto& inst = *l.instance;
  auto run = open_run("check", common, {{"h4_mode", kgs::to_string(inst.h4_mode())}});
  const auto emb = kgs::compute_embeddings(inst, embedding_options(run.common));
  const auto report = kgs::check_hypotheses(inst, emb);
  print_report(report);
  run.write("hypotheses.json", {{"report", kgs::to_json(report)},
                                {"embedding_p", kgs::to_json(emb.p)},
                                {"embedding_q", kgs::to_json(emb.q)}});
  const int code = report.all_hold() ? ok : hypotheses_fail;
  run.finish(code);
  std::cout << "wrote " << (run.dir / "hypotheses.json").string() << '\n';
  return code;
}

void write_path_csv(const Run& run, const std::vector<kgs::PathSample>& path) {
  std::ofstream csv(run.dir / "path.csv");
  csv << "# manifest: " << run.manifest().dump() << '\n';
  csv << "node,t,energy\n" << std::setprecision(17);
  for (const auto& s : path) csv << s.node << ',' << s.t << ',' << s.energy << '\n';
}

bool accepted(const kgs::SolveOutcome& o) {
  return o.success && o.point.verified && o.point.classification != kgs::Classification::trivial;
}

void report_point(const std::string& label, const kgs::SolveOutcome& o) {
  std::cout << label << ": " << (accepted(o) ? "verified" : "FAILED") << "  energy = " << fmt(o.point.energy)
            << "  |grad| = " << fmt(o.point.grad_norm) << "  residual = " << fmt(o.point.max_residual)
            << "  class = " << kgs::to_string(o.point.classification) << '\n';
  if (!o.diagnostic.empty()) std::cout << "  " << o.diagnostic << '\n';
}

int cmd_solve(const Common& common, const std::string& method, kgs::SolverConfig cfg) {
  const auto l = load(common);
  const auto& inst = *l.instance;
  cfg.seed = resolve_seed(common.seed);
  cfg.threads = common.threads;
  cfg.validate();
  auto run = open_run("solve", common, {{"method", method}, {"solver", kgs::to_json(cfg)}});

  const auto emb = kgs::compute_embeddings(inst, embedding_options(run.common));
  const auto report = kgs::check_hypotheses(inst, emb);
  double rho = 1.0;
  double barrier = 0.0;
  if (report.geometry && std::isfinite(report.geometry->zstar) && report.geometry->zstar > 0.0) {
    rho = report.geometry->rho;
    barrier = report.geometry->g_at_zstar;
  }
  Json geometry{{"hypotheses_hold", report.all_hold()}, {"rho", rho}, {"g_at_zstar", kgs::number(barrier)}};

  bool all_ok = true;
  if (method == "minimize" || method == "both") {
    const auto out = kgs::minimize_in_ball(inst, rho, cfg);
    report_point("minimize", out);
    run.write("minimize.json", {{"success", accepted(out)},
                                {"diagnostic", out.diagnostic},
                                {"geometry", geometry},
                                {"point", kgs::to_json(inst, out.point)}});
    all_ok = all_ok && accepted(out);
  }
  if (method == "mountain-pass" || method == "both") {
    const auto ep = kgs::find_endpoint(inst, rho, cfg);
    kgs::MountainPassOutcome out;
    if (ep.endpoint) {
      out = kgs::mountain_pass(inst, *ep.endpoint, cfg, barrier > 0.0 ? 0.5 * barrier : 0.0);
    } else {
      out.diagnostic = ep.diagnostic;
      out.point = kgs::verify(inst, kgs::StatePair::zero(inst), cfg, "mountain-pass");
    }
    report_point("mountain-pass", out);
    Json body{{"success", accepted(out)},
              {"diagnostic", out.diagnostic},
              {"geometry", geometry},
              {"endpoint_t", kgs::number(ep.t)},
              {"path_max", kgs::number(out.path_max)},
              {"point", kgs::to_json(inst, out.point)}};
    run.write("mountain_pass.json", body);
    write_path_csv(run, out.path);
    all_ok = all_ok && accepted(out);
  }
  const int code = all_ok ? ok : solver_fail;
  run.finish(code);
  std::cout << "wrote " << run.dir.string() << '\n';
  return code;
}

int cmd_scalar(const Common& common, const std::string& component, bool multiplicity, kgs::SolverConfig cfg) {
  const auto l = load(common);
  const auto& inst = *l.instance;
  cfg.seed = resolve_seed(common.seed);
  cfg.threads = common.threads;
  cfg.validate();
  const auto comp = component == "u" ? kgs::Component::u : kgs::Component::v;
  auto run = open_run("scalar", common,
                      {{"component", component}, {"multiplicity", multiplicity}, {"solver", kgs::to_json(cfg)}});

  std::vector<std::string> warnings;
  if (multiplicity && !(inst.g_vanishes(1) && inst.g_vanishes(2))) {
    warnings.emplace_back("g1 or g2 is nonzero, so psi is not even and the multiplicity search does not apply; "
                          "running a single scalar solve");
    multiplicity = false;
  }
  Json body;
  int code = ok;
  if (multiplicity) {
    const auto rep = kgs::scalar_multiplicity(inst, comp, cfg);
    body = kgs::to_json(inst, rep);
    std::cout << "found " << rep.pairs << " antipodal pairs (target " << rep.target_pairs << ")"
              << (rep.under_count ? ", under-count" : "") << '\n';
    for (const auto& w : rep.warnings) warnings.push_back(w);
    if (rep.points.empty()) code = solver_fail;
  } else {
    const auto out = kgs::scalar_solve(inst, comp, cfg);
    report_point("scalar", out);
    body = {{"success", accepted(out)}, {"diagnostic", out.diagnostic}, {"points", Json::array()}};
    if (accepted(out)) {
      body["points"].push_back(kgs::to_json(inst, out.point));
    } else {
      body["best"] = kgs::to_json(inst, out.point);
      code = solver_fail;
    }
    body["target_pairs"] = inst.dimension();
  }
  body["warnings"] = Json(body.value("warnings", std::vector<std::string>{}));
  for (const auto& w : warnings) {
    body["warnings"].push_back(w);
    std::cout << "warning: " << w << '\n';
  }
  run.write("solutions.json", body);
  run.finish(code);
  std::cout << "wrote " << (run.dir / "solutions.json").string() << '\n';
  return code;
}

int cmd_certify(const Common& common, const std::string& mode, kgs::NonexistenceSearch search) {
  const auto l = load(common);
  const auto& inst = *l.instance;
  search.threads = common.threads;
  const auto m = kgs::nonexistence_mode_from_string(mode);
  auto run = open_run("certify", common,
                      {{"mode", mode},
                       {"T_max", search.t_max},
                       {"grid", search.grid},
                       {"r_min", search.r_min},
                       {"polish", search.polish}});
  const auto v = kgs::certify_nonexistence(inst, m, search);
  std::cout << "verdict: " << kgs::to_string(v.verdict) << "  F_max = " << fmt(v.f_max) << " at (s, t) = ("
            << v.s << ", " << v.t << ")" << (v.vertex.empty() ? "" : " vertex " + v.vertex) << '\n'
            << "asymptotics: " << v.asymptotics << (v.conclusive ? " (conclusive)" : "") << '\n';
  run.write("verdict.json", kgs::to_json(v));
  int code = ok;
  if (v.verdict == kgs::VerdictKind::refuted) code = refuted;
  if (v.verdict == kgs::VerdictKind::vacuous_at_origin) code = vacuous;
  run.finish(code);
  return code;
}

void add_solver_options(CLI::App* sub, kgs::SolverConfig& cfg) {
  sub->add_option("--grad-tol", cfg.grad_tol)->capture_default_str();
  sub->add_option("--residual-tol", cfg.residual_tol)->capture_default_str();
  sub->add_option("--max-iters", cfg.max_iters)->capture_default_str();
  sub->add_option("--path-points", cfg.path_points)->capture_default_str();
  sub->add_option("--restarts", cfg.restarts)->capture_default_str();
  sub->add_option("--dedup-radius", cfg.dedup_radius)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgs: (p,q)-Kirchhoff systems on weighted graphs"};
  app.set_version_flag("--version", KGS_VERSION);
  app.require_subcommand(1);

  Common common;
  std::string h4_mode;
  auto* check = app.add_subcommand("check", "evaluate the hypotheses and mountain-pass constants");
  add_common(check, common);
  check->add_option("--h4-mode", h4_mode, "override the instance's tail mode")->check(CLI::IsMember({"proof", "literal"}));

  kgs::SolverConfig cfg;
  std::string method = "both";
  auto* solve = app.add_subcommand("solve", "find the negative-energy minimizer and the mountain-pass solution");
  add_common(solve, common);
  add_solver_options(solve, cfg);
  solve->add_option("--method", method)->check(CLI::IsMember({"mountain-pass", "minimize", "both"}))->capture_default_str();

  std::string component = "u";
  bool multiplicity = false;
  auto* scalar = app.add_subcommand("scalar", "semi-trivial solutions of the decoupled scalar problem");
  add_common(scalar, common);
  add_solver_options(scalar, cfg);
  scalar->add_option("--component", component)->check(CLI::IsMember({"u", "v"}))->capture_default_str();
  scalar->add_flag("--multiplicity", multiplicity, "search for antipodal pairs");

  std::string cert_mode = "integral";
  kgs::NonexistenceSearch search;
  auto* certify = app.add_subcommand("certify", "search for a sign change of the nonexistence function");
  add_common(certify, common);
  certify->add_option("--mode", cert_mode)->check(CLI::IsMember({"integral", "pointwise", "literal"}))->capture_default_str();
  certify->add_option("--t-max", search.t_max)->check(CLI::PositiveNumber)->capture_default_str();
  certify->add_option("--grid", search.grid)->check(CLI::Range(3, 100001))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (*check) return cmd_check(common, h4_mode);
    if (*solve) return cmd_solve(common, method, cfg);
    if (*scalar) return cmd_scalar(common, component, multiplicity, cfg);
    if (*certify) return cmd_certify(common, cert_mode, search);
  } catch (const kgs::ValidationError& e) {
    std::cerr << "error: violated invariant " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  }
  return input_error;
}
