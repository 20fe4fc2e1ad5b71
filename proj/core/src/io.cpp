#include "kgs/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kgs/errors.hpp"

namespace kgs {
namespace {

template <class Fn>
auto with_schema(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("schema", std::string(what) + ": " + e.what());
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

Eigen::VectorXd vector_from(const Json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_from(a[i]);
  return v;
}

Json by_vertex(const Domain& d, const Eigen::VectorXd& v) {
  Json o = Json::object();
  for (Eigen::Index i = 0; i < v.size(); ++i) o[d.id(static_cast<std::size_t>(i))] = number(v[i]);
  return o;
}

Eigen::VectorXd from_vertex_map(const Domain& d, const Json& o, const std::string& name) {
  const auto n = static_cast<Eigen::Index>(d.interior_size());
  if (!o.is_object()) throw ValidationError("schema", name + " must be an object");
  if (o.contains("const")) {
    if (o.size() != 1) throw ValidationError("schema", name + ": 'const' cannot be mixed with vertex values");
    return Eigen::VectorXd::Constant(n, o.at("const").get<double>());
  }
  Eigen::VectorXd v(n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& [id, val] : o.items()) {
    if (!d.contains(id) || !d.is_interior(d.local_index(id))) {
      throw ValidationError("coefficient_support", name + " has a value at '" + id + "', which is not in Omega");
    }
    const auto i = d.local_index(id);
    v[static_cast<Eigen::Index>(i)] = number_from(val);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError("coefficient_support", name + " has no value at '" + d.id(i) + "'");
  }
  return v;
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("json_syntax", path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ValidationError("schema", "expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

std::shared_ptr<const Domain> load_domain(const Json& j) {
  return with_schema("graph", [&] {
    std::vector<VertexSpec> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back({v.at("id").get<std::string>(), v.at("mu").get<double>()});
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("w").get<double>()});
    }
    const auto omega = j.at("omega").get<std::vector<std::string>>();
    auto graph = std::make_shared<const WeightedGraph>(std::move(vertices), std::move(edges));
    return std::make_shared<const Domain>(graph, omega);
  });
}

std::shared_ptr<const Domain> load_domain(const std::filesystem::path& path) { return load_domain(read_json(path)); }

Json to_json(const Domain& domain) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : domain.graph().vertex_specs()) j["vertices"].push_back({{"id", v.id}, {"mu", v.mu}});
  j["edges"] = Json::array();
  for (const auto& e : domain.graph().edge_specs()) j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"w", e.w}});
  j["omega"] = domain.omega_ids();
  return j;
}

std::string to_string(H4Mode m) { return m == H4Mode::proof ? "proof" : "literal"; }

H4Mode h4_mode_from_string(const std::string& s) {
  if (s == "proof") return H4Mode::proof;
  if (s == "literal") return H4Mode::literal;
  throw ValidationError("schema", "h4_mode must be 'proof' or 'literal', got '" + s + "'");
}

KirchhoffInstance load_instance(const Json& j, std::shared_ptr<const Domain> domain) {
  return with_schema("instance", [&] {
    const auto& p = j.at("params");
    KirchhoffParams P;
    P.p = p.at("p").get<double>();
    P.q = p.at("q").get<double>();
    P.r = p.at("r").get<double>();
    P.k = p.at("k").get<double>();
    P.alpha = p.at("alpha").get<double>();
    P.beta = p.at("beta").get<double>();
    P.a1 = p.at("a1").get<double>();
    P.a2 = p.at("a2").get<double>();
    P.b1 = p.at("b1").get<double>();
    P.b2 = p.at("b2").get<double>();
    P.lambda1 = p.at("lambda1").get<double>();
    P.lambda2 = p.at("lambda2").get<double>();

    const auto& c = j.at("coefficients");
    static const std::set<std::string> known{"h1", "h2", "h3", "g1", "g2"};
    for (const auto& [name, _] : c.items()) {
      if (!known.count(name)) throw ValidationError("schema", "unknown coefficient '" + name + "'");
    }
    const auto& d = *domain;
    const auto zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.interior_size()));
    Coefficients coeffs{from_vertex_map(d, c.at("h1"), "h1"), from_vertex_map(d, c.at("h2"), "h2"),
                        from_vertex_map(d, c.at("h3"), "h3"),
                        c.contains("g1") ? from_vertex_map(d, c.at("g1"), "g1") : Eigen::VectorXd(zero),
                        c.contains("g2") ? from_vertex_map(d, c.at("g2"), "g2") : Eigen::VectorXd(zero)};
    const H4Mode mode = j.contains("h4_mode") ? h4_mode_from_string(j.at("h4_mode").get<std::string>()) : H4Mode::proof;
    return KirchhoffInstance(domain, P, std::move(coeffs), mode);
  });
}

KirchhoffInstance load_instance(const std::filesystem::path& path, std::shared_ptr<const Domain> domain) {
  return load_instance(read_json(path), std::move(domain));
}

Json to_json(const KirchhoffInstance& inst) {
  const auto& P = inst.params();
  const auto& c = inst.coefficients();
  const auto& d = inst.domain();
  Json j;
  j["params"] = {{"p", P.p},         {"q", P.q},       {"r", P.r},   {"k", P.k},   {"alpha", P.alpha},
                 {"beta", P.beta},   {"a1", P.a1},     {"a2", P.a2}, {"b1", P.b1}, {"b2", P.b2},
                 {"lambda1", P.lambda1}, {"lambda2", P.lambda2}};
  j["coefficients"] = {{"h1", by_vertex(d, c.h1)}, {"h2", by_vertex(d, c.h2)}, {"h3", by_vertex(d, c.h3)},
                       {"g1", by_vertex(d, c.g1)}, {"g2", by_vertex(d, c.g2)}};
  j["h4_mode"] = to_string(inst.h4_mode());
  return j;
}

Json to_json(const EmbeddingReport& r) {
  return {{"l", number(r.l)},
          {"gamma", number(r.gamma)},
          {"best_constant", number(r.best_constant)},
          {"l_constant", number(r.l_constant)},
          {"closed_form_constant", number(r.closed_form_constant)},
          {"sup_constant", number(r.sup_constant)},
          {"closed_form_bound_holds", r.closed_form_bound_holds},
          {"witness", vector_json(r.witness)},
          {"witness_ids", r.witness_ids},
          {"converged", r.converged},
          {"iterations", r.iterations}};
}

EmbeddingReport embedding_report_from_json(const Json& j) {
  return with_schema("embedding report", [&] {
    EmbeddingReport r;
    r.l = number_from(j.at("l"));
    r.gamma = number_from(j.at("gamma"));
    r.best_constant = number_from(j.at("best_constant"));
    r.l_constant = number_from(j.at("l_constant"));
    r.closed_form_constant = number_from(j.at("closed_form_constant"));
    r.sup_constant = number_from(j.at("sup_constant"));
    r.closed_form_bound_holds = j.at("closed_form_bound_holds").get<bool>();
    r.witness = vector_from(j.at("witness"));
    r.witness_ids = j.at("witness_ids").get<std::vector<std::string>>();
    r.converged = j.at("converged").get<bool>();
    r.iterations = j.at("iterations").get<long>();
    return r;
  });
}

Json to_json(const ProfileGeometry& g) {
  return {{"M1", number(g.m1)},
          {"M2", number(g.m2)},
          {"lead_exponent", number(g.lead_exponent)},
          {"coupling_exponent", number(g.coupling_exponent)},
          {"tail", number(g.tail)},
          {"zstar", number(g.zstar)},
          {"rho", number(g.rho)},
          {"g_at_zstar", number(g.g_at_zstar)},
          {"g_second_derivative_at_zstar", number(g.g2nd_at_zstar)},
          {"peak", number(g.peak)}};
}

ProfileGeometry profile_geometry_from_json(const Json& j) {
  return with_schema("profile geometry", [&] {
    ProfileGeometry g;
    g.m1 = number_from(j.at("M1"));
    g.m2 = number_from(j.at("M2"));
    g.lead_exponent = number_from(j.at("lead_exponent"));
    g.coupling_exponent = number_from(j.at("coupling_exponent"));
    g.tail = number_from(j.at("tail"));
    g.zstar = number_from(j.at("zstar"));
    g.rho = number_from(j.at("rho"));
    g.g_at_zstar = number_from(j.at("g_at_zstar"));
    g.g2nd_at_zstar = number_from(j.at("g_second_derivative_at_zstar"));
    g.peak = number_from(j.at("peak"));
    return g;
  });
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["C_1p"] = number(r.c_p);
  j["C_1q"] = number(r.c_q);
  j["all_hold"] = r.all_hold();
  j["hypotheses"] = Json::array();
  for (const auto& v : r.verdicts) {
    Json h{{"name", v.name}, {"holds", v.holds()}, {"margins", Json::array()}};
    for (const auto& m : v.margins) {
      h["margins"].push_back({{"label", m.label}, {"value", number(m.value)}, {"strict", m.strict}, {"holds", m.holds()}});
    }
    j["hypotheses"].push_back(std::move(h));
  }
  j["geometry"] = r.geometry ? to_json(*r.geometry) : Json(nullptr);
  j["warnings"] = r.warnings;
  return j;
}

HypothesisReport hypothesis_report_from_json(const Json& j) {
  return with_schema("hypothesis report", [&] {
    HypothesisReport r;
    r.mode = h4_mode_from_string(j.at("mode").get<std::string>());
    r.c_p = number_from(j.at("C_1p"));
    r.c_q = number_from(j.at("C_1q"));
    for (const auto& h : j.at("hypotheses")) {
      HypothesisVerdict v{h.at("name").get<std::string>(), {}};
      for (const auto& m : h.at("margins")) {
        v.margins.push_back({m.at("label").get<std::string>(), number_from(m.at("value")), m.at("strict").get<bool>()});
      }
      r.verdicts.push_back(std::move(v));
    }
    if (!j.at("geometry").is_null()) r.geometry = profile_geometry_from_json(j.at("geometry"));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  });
}

Json to_json(const Domain& domain, const StatePair& s) {
  return {{"u", by_vertex(domain, s.u())}, {"v", by_vertex(domain, s.v())}};
}

StatePair state_from_json(const Json& j, const KirchhoffInstance& instance) {
  return with_schema("state", [&] {
    const auto& d = instance.domain();
    return StatePair(instance, from_vertex_map(d, j.at("u"), "u"), from_vertex_map(d, j.at("v"), "v"));
  });
}

Json to_json(const SolverConfig& c) {
  return {{"grad_tol", c.grad_tol},         {"residual_tol", c.residual_tol}, {"max_iters", c.max_iters},
          {"armijo_slope", c.armijo_slope}, {"backtrack", c.backtrack},       {"path_points", c.path_points},
          {"restarts", c.restarts},         {"dedup_radius", c.dedup_radius}, {"zero_tol", c.zero_tol},
          {"seed", c.seed},                 {"threads", c.threads}};
}

SolverConfig solver_config_from_json(const Json& j) {
  return with_schema("solver config", [&] {
    SolverConfig c;
    c.grad_tol = j.value("grad_tol", c.grad_tol);
    c.residual_tol = j.value("residual_tol", c.residual_tol);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.armijo_slope = j.value("armijo_slope", c.armijo_slope);
    c.backtrack = j.value("backtrack", c.backtrack);
    c.path_points = j.value("path_points", c.path_points);
    c.restarts = j.value("restarts", c.restarts);
    c.dedup_radius = j.value("dedup_radius", c.dedup_radius);
    c.zero_tol = j.value("zero_tol", c.zero_tol);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.validate();
    return c;
  });
}

Json to_json(const KirchhoffInstance& instance, const CriticalPoint& p) {
  Json j = to_json(instance.domain(), p.state);
  j["energy"] = number(p.energy);
  j["grad_norm"] = number(p.grad_norm);
  j["max_residual"] = number(p.max_residual);
  j["classification"] = std::string(to_string(p.classification));
  j["verified"] = p.verified;
  j["method"] = p.method;
  j["seed"] = p.seed;
  j["iterations"] = p.iterations;
  j["norm_u"] = number(p.state.norm_u());
  j["norm_v"] = number(p.state.norm_v());
  return j;
}

CriticalPoint critical_point_from_json(const Json& j, const KirchhoffInstance& instance) {
  return with_schema("critical point", [&] {
    CriticalPoint p;
    p.state = state_from_json(j, instance);
    p.energy = number_from(j.at("energy"));
    p.grad_norm = number_from(j.at("grad_norm"));
    p.max_residual = number_from(j.at("max_residual"));
    p.classification = classification_from_string(j.at("classification").get<std::string>());
    p.verified = j.at("verified").get<bool>();
    p.method = j.at("method").get<std::string>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.iterations = j.at("iterations").get<long>();
    return p;
  });
}

Json to_json(const KirchhoffInstance& instance, const MultiplicityReport& r) {
  Json j;
  j["pairs"] = r.pairs;
  j["target_pairs"] = r.target_pairs;
  j["under_count"] = r.under_count;
  j["warnings"] = r.warnings;
  j["points"] = Json::array();
  for (const auto& p : r.points) j["points"].push_back(to_json(instance, p));
  return j;
}

Json to_json(const NecessaryCondition& c) {
  return {{"side", c.side == Component::u ? "u" : "v"},
          {"lhs", number(c.lhs)},
          {"rhs", number(c.rhs)},
          {"margin", number(c.margin)},
          {"holds", c.holds}};
}

Json to_json(const NonexistenceVerdict& v) {
  return {{"mode", to_string(v.mode)},
          {"verdict", to_string(v.verdict)},
          {"F_max", number(v.f_max)},
          {"argmax", {{"s", number(v.s)}, {"t", number(v.t)}}},
          {"vertex", v.vertex},
          {"region",
           {{"T_max", number(v.search.t_max)},
            {"grid", v.search.grid},
            {"r_min", number(v.search.r_min)},
            {"polish", v.search.polish}}},
          {"points_tested", v.points_tested},
          {"conclusive", v.conclusive},
          {"asymptotics", v.asymptotics}};
}

NonexistenceVerdict nonexistence_verdict_from_json(const Json& j) {
  return with_schema("nonexistence verdict", [&] {
    NonexistenceVerdict v;
    v.mode = nonexistence_mode_from_string(j.at("mode").get<std::string>());
    v.verdict = verdict_kind_from_string(j.at("verdict").get<std::string>());
    v.f_max = number_from(j.at("F_max"));
    v.s = number_from(j.at("argmax").at("s"));
    v.t = number_from(j.at("argmax").at("t"));
    v.vertex = j.at("vertex").get<std::string>();
    const auto& r = j.at("region");
    v.search.t_max = number_from(r.at("T_max"));
    v.search.grid = r.at("grid").get<int>();
    v.search.r_min = number_from(r.at("r_min"));
    v.search.polish = r.at("polish").get<bool>();
    v.points_tested = j.at("points_tested").get<std::size_t>();
    v.conclusive = j.at("conclusive").get<bool>();
    v.asymptotics = j.at("asymptotics").get<std::string>();
    return v;
  });
}

Json to_json(const NontrivialityReport& r) {
  Json j{{"applicable", r.applicable}, {"checked", r.checked}, {"all_fully_nontrivial", r.all_fully_nontrivial()}};
  j["violations"] = Json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"index", v.index},
                               {"classification", std::string(to_string(v.classification))},
                               {"verified", v.verified},
                               {"vertex", v.vertex},
                               {"residual", number(v.residual)}});
  }
  return j;
}

}  // namespace kgs
