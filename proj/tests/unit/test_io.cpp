#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "kgs/errors.hpp"
#include "kgs/io.hpp"
#include "oracles.hpp"
#include "paths.hpp"

using namespace kgs;
namespace o = kgs::oracle;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "kgs_test_io";
  fs::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string invariant_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  return "";
}

Json p3_graph() { return read_json(test::data("graphs/p3.json")); }

}  // namespace

TEST_CASE("load graph files") {
  const auto d = load_domain(test::data("graphs/p3.json"));
  CHECK(d->interior_size() == 1);
  CHECK(d->boundary_size() == 2);
  CHECK(d->id(0) == "b");
  const auto k4 = load_domain(test::data("graphs/k4.json"));
  CHECK(k4->working_size() >= 3);
  const auto p7 = load_domain(test::data("graphs/p7_acceptance.json"));
  CHECK(p7->interior_size() == 5);

  const auto back = load_domain(to_json(*p7));
  REQUIRE(back->working_size() == p7->working_size());
  for (std::size_t i = 0; i < p7->working_size(); ++i) {
    CHECK(back->id(i) == p7->id(i));
    CHECK(back->measure(i) == p7->measure(i));
  }
}

TEST_CASE("graph validation names the invariant") {
  auto mutated = [](auto f) {
    auto j = p3_graph();
    f(j);
    return invariant_of([&] { load_domain(j); });
  };
  CHECK(mutated([](Json& j) { j["vertices"][0]["mu"] = 0.0; }) == "positive_measure");
  CHECK(mutated([](Json& j) { j["edges"][0]["w"] = -1.0; }) == "positive_weight");
  CHECK(mutated([](Json& j) { j["edges"][0]["b"] = "zz"; }) == "known_vertex");
  CHECK(mutated([](Json& j) { j["edges"][0]["b"] = "a"; }) == "no_self_loop");
  CHECK(mutated([](Json& j) { j["vertices"][1]["id"] = "a"; }) == "vertex_id");
  CHECK(mutated([](Json& j) { j["edges"].push_back({{"a", "b"}, {"b", "a"}, {"w", 2.0}}); }) == "symmetric_weight");
  CHECK(mutated([](Json& j) { j["edges"].erase(1); }) == "connected");
  CHECK(mutated([](Json& j) { j.erase("edges"); }) == "schema");
  CHECK(mutated([](Json& j) { j["vertices"][0]["mu"] = "heavy"; }) == "schema");
  CHECK_THROWS_AS(load_domain(Json{{"vertices", Json::array()}, {"edges", Json::array()}, {"omega", Json::array()}}),
                  InputError);
}

TEST_CASE("file errors") {
  CHECK(invariant_of([] { read_json(scratch("bad.json", "{\"vertices\": [")); }) == "json_syntax");
  CHECK_THROWS_AS(read_json(fs::temp_directory_path() / "kgs_test_io" / "missing.json"), InputError);
  const auto p = scratch("ok.json", "{\"x\": 1}");
  CHECK(read_json(p)["x"] == 1);
  write_json(p, Json{{"y", 2}});
  CHECK(read_json(p)["y"] == 2);
}

TEST_CASE("instance loading") {
  auto d = load_domain(test::data("graphs/p5.json"));
  const auto inst = load_instance(test::data("instances/p5_multiplicity.json"), d);
  CHECK(inst.params().lambda1 == 2.0);
  CHECK(inst.coefficients().h1 == Eigen::VectorXd::Ones(3));
  CHECK(inst.coefficients().g1.isZero(0.0));
  CHECK(inst.h4_mode() == H4Mode::proof);

  auto j = read_json(test::data("instances/p5_multiplicity.json"));
  j["h4_mode"] = "literal";
  j["coefficients"]["g2"] = Json::object();
  for (std::size_t i = 0; i < d->interior_size(); ++i) j["coefficients"]["g2"][d->id(i)] = 0.5 * static_cast<double>(i);
  const auto lit = load_instance(j, d);
  CHECK(lit.h4_mode() == H4Mode::literal);
  CHECK(lit.coefficients().g2[2] == 1.0);

  const auto back = load_instance(to_json(lit), d);
  CHECK(back.h4_mode() == H4Mode::literal);
  CHECK(back.coefficients().g2 == lit.coefficients().g2);
  CHECK(back.params().alpha == lit.params().alpha);

  auto broken = [&](auto f) {
    auto k = read_json(test::data("instances/p5_multiplicity.json"));
    f(k);
    return invariant_of([&] { load_instance(k, d); });
  };
  CHECK(broken([](Json& k) { k["coefficients"]["h4"] = {{"const", 1}}; }) == "schema");
  CHECK(broken([](Json& k) { k["coefficients"].erase("h2"); }) == "schema");
  CHECK(broken([](Json& k) { k["coefficients"]["h1"] = {{"a", 1.0}}; }) == "coefficient_support");
  CHECK(broken([&](Json& k) { k["coefficients"]["h1"] = {{d->id(0), 1.0}}; }) == "coefficient_support");
  CHECK(broken([](Json& k) { k["coefficients"]["h1"] = {{"const", 1.0}, {"b", 2.0}}; }) == "schema");
  CHECK(broken([](Json& k) { k["h4_mode"] = "strict"; }) == "schema");
  CHECK(broken([](Json& k) { k["params"].erase("p"); }) == "schema");

  auto bad = read_json(test::data("instances/p5_multiplicity.json"));
  bad["params"]["p"] = 0.5;
  CHECK_THROWS_AS(load_instance(bad, d), ParameterError);
}

TEST_CASE("non-finite numbers") {
  CHECK(number(INFINITY) == "inf");
  CHECK(number(-INFINITY) == "-inf");
  CHECK(number(NAN) == "nan");
  CHECK(number(1.5) == 1.5);
  CHECK(std::isinf(number_from(number(INFINITY))));
  CHECK(number_from(number(-INFINITY)) < 0.0);
  CHECK(std::isnan(number_from(number(NAN))));
  CHECK(number_from(Json(2.25)) == 2.25);
  CHECK_THROWS_AS(number_from(Json("many")), ValidationError);
}

TEST_CASE("report round trips") {
  auto d = load_domain(test::data("graphs/p7_acceptance.json"));
  const auto inst = load_instance(test::data("instances/p7_acceptance.json"), d);
  const auto e = compute_embeddings(inst);

  const auto er = embedding_report_from_json(to_json(e.p));
  CHECK(er.l == e.p.l);
  CHECK(er.best_constant == e.p.best_constant);
  CHECK(er.closed_form_constant == e.p.closed_form_constant);
  CHECK(er.witness == e.p.witness);
  CHECK(er.witness_ids == e.p.witness_ids);
  CHECK(er.converged == e.p.converged);

  const auto rep = check_hypotheses(inst, e);
  const auto rr = hypothesis_report_from_json(to_json(rep));
  CHECK(rr.all_hold() == rep.all_hold());
  REQUIRE(rr.verdicts.size() == rep.verdicts.size());
  for (std::size_t i = 0; i < rep.verdicts.size(); ++i) {
    CHECK(rr.verdicts[i].name == rep.verdicts[i].name);
    REQUIRE(rr.verdicts[i].margins.size() == rep.verdicts[i].margins.size());
    for (std::size_t k = 0; k < rep.verdicts[i].margins.size(); ++k) {
      CHECK(rr.verdicts[i].margins[k].value == rep.verdicts[i].margins[k].value);
      CHECK(rr.verdicts[i].margins[k].strict == rep.verdicts[i].margins[k].strict);
    }
  }
  REQUIRE(rr.geometry);
  CHECK(rr.geometry->zstar == rep.geometry->zstar);
  CHECK(rr.geometry->g_at_zstar == rep.geometry->g_at_zstar);
  CHECK(to_json(rr) == to_json(rep));

  SolverConfig cfg;
  cfg.seed = 77;
  cfg.restarts = 9;
  const auto cb = solver_config_from_json(to_json(cfg));
  CHECK(cb.seed == 77);
  CHECK(cb.restarts == 9);
  CHECK(cb.grad_tol == cfg.grad_tol);
  CHECK(to_json(cb) == to_json(cfg));

  const auto lo = minimize_in_ball(inst, rep.geometry->rho, cfg);
  REQUIRE(lo.success);
  const auto cp = critical_point_from_json(to_json(inst, lo.point), inst);
  CHECK(cp.state.u() == lo.point.state.u());
  CHECK(cp.state.v() == lo.point.state.v());
  CHECK(cp.energy == lo.point.energy);
  CHECK(cp.classification == lo.point.classification);
  CHECK(cp.verified == lo.point.verified);
  CHECK(cp.method == lo.point.method);
  CHECK(cp.seed == lo.point.seed);
  CHECK(to_json(inst, cp) == to_json(inst, lo.point));

  const auto sj = to_json(*d, lo.point.state);
  CHECK(sj["u"].contains(d->id(0)));
  CHECK(state_from_json(sj, inst).u() == lo.point.state.u());

  const auto v = certify_nonexistence(inst, NonexistenceMode::pointwise);
  const auto vb = nonexistence_verdict_from_json(to_json(v));
  CHECK(vb.verdict == v.verdict);
  CHECK(vb.mode == v.mode);
  CHECK(vb.f_max == v.f_max);
  CHECK(vb.vertex == v.vertex);
  CHECK(vb.search.grid == v.search.grid);
  CHECK(to_json(vb) == to_json(v));
}
