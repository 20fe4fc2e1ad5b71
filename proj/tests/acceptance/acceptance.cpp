// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgs/analysis.hpp"
#include "kgs/calculus.hpp"
#include "kgs/functional.hpp"
#include "kgs/hypotheses.hpp"
#include "kgs/io.hpp"
#include "kgs/solvers.hpp"
#include "kgs/spaces.hpp"
#include "oracles.hpp"
#include "paths.hpp"

using namespace kgs;
namespace o = kgs::oracle;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0 = no runtime bound
  std::function<void(Outcome&)> run;
};

VertexFunction random_function(std::mt19937_64& rng, const Domain& d, bool zero_boundary) {
  Eigen::VectorXd v = o::random_vector(rng, static_cast<Eigen::Index>(d.working_size()));
  if (zero_boundary) v.tail(static_cast<Eigen::Index>(d.boundary_size())).setZero();
  return VertexFunction(d, v);
}

StatePair random_state(std::mt19937_64& rng, const KirchhoffInstance& inst, double scale = 1.0) {
  const auto n = static_cast<Eigen::Index>(inst.dimension());
  return StatePair(inst, o::random_vector(rng, n, scale), o::random_vector(rng, n, scale));
}

double omega_integral(const Domain& d, const Eigen::VectorXd& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.interior_size(); ++i) s += d.measure(i) * f[static_cast<Eigen::Index>(i)];
  return s;
}

struct Acceptance {
  std::shared_ptr<const Domain> p3, p5, p7;
  KirchhoffInstance closed_form, multiplicity, existence, decoupled;
  // the existence parameters and coefficients on P3
  std::optional<KirchhoffInstance> forced;
  // semi-trivial points from criteria 5 and 6, with their instances
  std::vector<std::pair<const KirchhoffInstance*, CriticalPoint>> semitrivial;

  Acceptance()
      : p3(load_domain(test::data("graphs/p3.json"))),
        p5(load_domain(test::data("graphs/p5.json"))),
        p7(load_domain(test::data("graphs/p7_acceptance.json"))),
        closed_form(load_instance(test::data("instances/p3_closed_form.json"), p3)),
        multiplicity(load_instance(test::data("instances/p5_multiplicity.json"), p5)),
        existence(load_instance(test::data("instances/p7_acceptance.json"), p7)),
        decoupled(load_instance(test::data("instances/p3_decoupled_negative.json"), p3)) {
    const auto& tc = existence.coefficients();
    auto one = [](double x) { return Eigen::VectorXd::Constant(1, x); };
    forced.emplace(p3, existence.params(),
                   Coefficients{one(tc.h1[0]), one(tc.h2[0]), one(tc.h3[0]), one(tc.g1[0]), one(tc.g2[0])});
  }

  void calculus(Outcome& out) {
    std::mt19937_64 rng(1001);
    const double ls[] = {1.5, 2.0, 3.0, 4.0};
    double worst = 0.0;
    for (int c = 0; c < 200; ++c) {
      const double l = ls[c % 4];
      auto d = o::make_domain(o::random_graph(rng, 30));
      const auto psi = random_function(rng, *d, false);
      const auto phi = random_function(rng, *d, true);
      const auto lap = l_laplacian_all(*d, psi.values(), l);
      const auto len = gradient_lengths(*d, psi.values());
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t x = 0; x < d->interior_size(); ++x) {
        lhs += d->measure(x) * phi(x) * lap[static_cast<Eigen::Index>(x)];
      }
      for (std::size_t x = 0; x < d->working_size(); ++x) {
        rhs -= d->measure(x) * gradient_power(len[static_cast<Eigen::Index>(x)], l - 2.0) * gamma(*d, psi, phi, x);
      }
      const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      worst = std::max(worst, err);
      out.require(err < 1e-10, "integration by parts");
      for (std::size_t x = 0; x < d->working_size(); ++x) {
        const double L = laplacian(*d, psi, x);
        out.require(std::abs(l_laplacian(*d, psi, x, 2.0) - L) <= 1e-14 * std::max(1.0, std::abs(L)),
                    "l = 2 Laplacian");
      }
    }
    out.detail << "200 cases, worst rel err " << worst;
  }

  void gradient(Outcome& out) {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int c = 0; c < 100; ++c) {
      auto d = o::make_domain(o::random_graph(rng, 20));
      const auto inst = o::random_instance(rng, d);
      const auto s = random_state(rng, inst);
      const auto dir = random_state(rng, inst);
      const double eps = 1e-6 * std::max(1.0, s.norm());
      const double fd = (energy(inst, StatePair(inst, s.u() + eps * dir.u(), s.v() + eps * dir.v())) -
                         energy(inst, StatePair(inst, s.u() - eps * dir.u(), s.v() - eps * dir.v()))) /
                        (2.0 * eps);
      const double dd = directional_derivative(inst, s, dir);
      const double err = std::abs(fd - dd) / std::max(1.0, std::abs(dd));
      worst = std::max(worst, err);
      out.require(err < 1e-6, "finite difference");
    }
    out.detail << "100 triples, worst rel err " << worst;
  }

  void embedding(Outcome& out) {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> ld(1.2, 4.0);
    long samples = 0, violations = 0, bound_failures = 0;
    for (int g = 0; g < 10; ++g) {
      auto d = o::make_domain(o::random_graph(rng, 20));
      const double l = ld(rng);
      const double gammas[] = {1.0, 2.0, l, 2.0 * l, kInfinity};
      std::vector<EmbeddingReport> reps;
      for (double gm : gammas) {
        reps.push_back(embedding_constants(*d, l, gm));
        if (!(reps.back().best_constant <= reps.back().closed_form_constant)) ++bound_failures;
      }
      for (int k = 0; k < 1000; ++k) {
        const auto u = o::random_vector(rng, static_cast<Eigen::Index>(d->interior_size()));
        const double w = w0_norm(*d, u, l);
        const auto f = VertexFunction::from_interior(*d, u);
        for (std::size_t i = 0; i < reps.size(); ++i) {
          const double lg = lp_norm(*d, f, gammas[i]);
          if (lg > reps[i].closed_form_constant * w * (1 + 1e-12)) ++violations;
          if (lg > reps[i].best_constant * w * (1 + 1e-9)) ++violations;
        }
        if (lp_norm(*d, f, kInfinity) > reps[0].sup_constant * w * (1 + 1e-12)) ++violations;
        ++samples;
      }
    }
    out.require(violations == 0, "embedding inequality violated");
    out.require(bound_failures == 0, "best constant above the closed-form constant");
    const auto r = embedding_constants(*p3, 2.0, 2.0);
    const double err = std::abs(r.best_constant - 1.0 / std::sqrt(2.0));
    out.require(err < 1e-10, "P3 constant");
    out.detail << samples << " functions, " << violations << " violations, " << bound_failures
               << " constant failures; P3 err " << err;
  }

  void existence_pair(Outcome& out) {
    const auto e = compute_embeddings(existence);
    const auto rep = check_hypotheses(existence, e);
    out.require(rep.all_hold(), "hypotheses");
    for (const auto& v : rep.verdicts) {
      for (const auto& m : v.margins) out.require(m.value > 0.0 || !m.strict, v.name + " " + m.label);
    }
    if (!rep.geometry) {
      out.require(false, "no geometry");
      return;
    }
    const auto& geo = *rep.geometry;
    out.require(geo.g_at_zstar > 0.0, "g(z*) > 0");
    SolverConfig cfg;
    const auto lo = minimize_in_ball(existence, geo.rho, cfg);
    out.require(lo.success && lo.point.verified, "minimize verified");
    out.require(lo.point.energy < 0.0, "minimize energy < 0");
    const auto ep = find_endpoint(existence, geo.rho, cfg);
    out.require(ep.endpoint.has_value(), "endpoint");
    if (!ep.endpoint) return;
    const auto mp = mountain_pass(existence, *ep.endpoint, cfg, geo.g_at_zstar / 2);
    out.require(mp.success && mp.point.verified, "mountain pass verified");
    out.require(mp.point.energy >= geo.g_at_zstar - 1e-8, "mountain pass level");
    for (const auto* p : {&lo.point, &mp.point}) {
      out.require(p->classification == Classification::fully_nontrivial, "fully non-trivial");
      out.require(p->grad_norm < 1e-8 && p->max_residual < 1e-8, "residuals");
    }
    out.require(fully_nontrivial_check(existence, {lo.point, mp.point}).all_fully_nontrivial(), "non-triviality report");
    out.detail << "g(z*) = " << geo.g_at_zstar << ", mountain pass " << mp.point.energy << ", minimum "
               << lo.point.energy;
  }

  void oracle(Outcome& out) {
    std::size_t matched = 0;
    for (const KirchhoffInstance* inst : {&closed_form, &*forced}) {
      const auto& c = inst->coefficients();
      const o::P3Reduced red{inst->params(), c.h1[0], c.h2[0], c.h3[0], c.g1[0], c.g2[0]};
      const auto crit = red.critical_points(10.0, 0.01, 1e-10);
      SolverConfig cfg;
      std::vector<CriticalPoint> outputs;
      const auto e = compute_embeddings(*inst);
      const auto geo = check_hypotheses(*inst, e).geometry;
      const double rho = geo && std::isfinite(geo->rho) ? geo->rho : 1.0;
      const auto lo = minimize_in_ball(*inst, rho, cfg);
      if (lo.success) outputs.push_back(lo.point);
      const auto ep = find_endpoint(*inst, rho, cfg);
      if (ep.endpoint) {
        const auto mp = mountain_pass(*inst, *ep.endpoint, cfg, geo && geo->g_at_zstar > 0 ? geo->g_at_zstar / 2 : 0.0);
        if (mp.success) outputs.push_back(mp.point);
      }
      if (inst->g_vanishes(1) && inst->g_vanishes(2)) {
        for (auto comp : {Component::u, Component::v}) {
          const auto s = scalar_solve(*inst, comp, cfg);
          if (s.success) outputs.push_back(s.point);
          for (const auto& p : scalar_multiplicity(*inst, comp, cfg).points) outputs.push_back(p);
        }
      }
      for (const auto& p : outputs) {
        double best = INFINITY;
        for (const auto& x : crit) best = std::min(best, (x - Eigen::Vector2d(p.state.u()[0], p.state.v()[0])).norm());
        out.require(p.verified, "verified output");
        out.require(best < 1e-6, "oracle match for " + p.method);
        if (best < 1e-6) ++matched;
        if (p.classification == Classification::semi_trivial_u || p.classification == Classification::semi_trivial_v) {
          semitrivial.emplace_back(inst, p);
        }
      }
    }
    const auto& P = closed_form.params();
    const double closed = std::pow(P.lambda1 * closed_form.coefficients().h1[0] / (2.0 * (P.a1 + P.b1)), 1.0 / (2.0 - P.r));
    const auto s = scalar_solve(closed_form, Component::u, SolverConfig{});
    const double err = std::abs(std::abs(s.point.state.u()[0]) - closed);
    out.require(std::abs(closed - 1.0) < 1e-15, "closed-form root is 1");
    out.require(s.success && err < 1e-10, "closed-form root recovered");
    out.detail << matched << " outputs matched; root err " << err;
  }

  void clark(Outcome& out) {
    SolverConfig cfg;
    const auto m = scalar_multiplicity(multiplicity, Component::u, cfg);
    out.require(m.pairs >= 3, "at least #Omega pairs");
    for (const auto& p : m.points) {
      out.require(p.verified, "verified");
      out.require(p.energy < 0.0, "negative energy");
      semitrivial.emplace_back(&multiplicity, p);
    }
    out.detail << m.pairs << " pairs (target " << m.target_pairs << ")";
  }

  void necessary(Outcome& out) {
    double worst = INFINITY;
    for (const auto& [inst, p] : semitrivial) {
      const auto nc = semitrivial_necessary(*inst, compute_embeddings(*inst), p);
      worst = std::min(worst, nc.margin);
      out.require(nc.margin >= -1e-10, "necessary inequality");
    }
    out.require(!semitrivial.empty(), "no semi-trivial points collected");
    out.detail << semitrivial.size() << " points, smallest margin " << worst;
  }

  void nonexistence(Outcome& out) {
    std::mt19937_64 rng(1008);
    int refuted = 0;
    for (int c = 0; c < 50; ++c) {
      auto d = o::make_domain(o::random_graph(rng, 20));
      const auto inst = o::random_instance(rng, d);
      out.require(omega_integral(*d, inst.coefficients().h2) > 0.0, "int h2 > 0");
      const auto v = certify_nonexistence(inst, NonexistenceMode::integral);
      const bool ok = v.verdict == VerdictKind::refuted && (v.s != 0.0 || v.t != 0.0) &&
                      reevaluate_witness(inst, v) >= -1e-12;
      out.require(ok, "refuted with witness");
      refuted += ok;
    }
    const auto hold = certify_nonexistence(decoupled, NonexistenceMode::integral);
    out.require(hold.verdict == VerdictKind::holds_numerically, "decoupled holds");
    SolverConfig cfg;
    cfg.restarts = 50;
    const auto sweep = descent_sweep(decoupled, cfg);
    out.require(sweep.empty(), "sweep finds nothing");
    out.require(certify_nonexistence(decoupled, NonexistenceMode::literal).verdict == VerdictKind::vacuous_at_origin,
                "literal vacuous");
    out.detail << refuted << "/50 refuted; decoupled F_max " << hold.f_max << ", sweep found " << sweep.size();
  }

  void inequalities(Outcome& out) {
    std::mt19937_64 rng(1009);
    const auto e = compute_embeddings(existence);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    long sphere_bad = 0, ps_bad = 0;
    double sphere_gap = INFINITY;
    for (int k = 0; k < 500; ++k) {
      const double z = std::max(1e-6, u01(rng));
      const auto s = random_state(rng, existence);
      const double w = k % 10 == 0 ? 0.0 : (k % 10 == 1 ? 1.0 : u01(rng));
      const StatePair t(existence, s.u() * (w * z / s.norm_u()), s.v() * ((1.0 - w) * z / s.norm_v()));
      const double gap = energy(existence, t) - g_profile(existence, e, t.norm());
      sphere_gap = std::min(sphere_gap, gap);
      if (gap < -1e-10) ++sphere_bad;
    }
    for (int c = 0; c < 5; ++c) {
      auto d = o::make_domain(o::random_graph(rng, 15));
      const auto inst = o::random_ordered_instance(rng, d);
      const auto ei = compute_embeddings(inst);
      const double ab = inst.params().alpha + inst.params().beta;
      for (int k = 0; k < 100; ++k) {
        const auto s = random_state(rng, inst, std::exp(std::uniform_real_distribution<double>(-3.0, 2.0)(rng)));
        const double lhs = energy(inst, s) - directional_derivative(inst, s, s) / ab;
        if (lhs < ps_lower_bound(inst, ei, s) - 1e-10 * std::max(1.0, std::abs(lhs))) ++ps_bad;
      }
    }
    out.require(sphere_bad == 0, "sphere bound");
    out.require(ps_bad == 0, "Palais-Smale bound");
    out.detail << "sphere violations " << sphere_bad << " (min gap " << sphere_gap << "), PS violations " << ps_bad;
  }
};

}  // namespace

int main() {
  Acceptance a;
  const std::vector<Criterion> criteria{
      {1, "calculus identities", 5, [&](Outcome& o) { a.calculus(o); }},
      {2, "gradient soundness", 10, [&](Outcome& o) { a.gradient(o); }},
      {3, "embedding constants", 0, [&](Outcome& o) { a.embedding(o); }},
      {4, "mountain pass and local minimum", 60, [&](Outcome& o) { a.existence_pair(o); }},
      {5, "P3 oracle equivalence", 30, [&](Outcome& o) { a.oracle(o); }},
      {6, "semi-trivial multiplicity", 60, [&](Outcome& o) { a.clark(o); }},
      {7, "necessary inequality", 0, [&](Outcome& o) { a.necessary(o); }},
      {8, "nonexistence certificates", 60, [&](Outcome& o) { a.nonexistence(o); }},
      {9, "sphere and Palais-Smale bounds", 0, [&](Outcome& o) { a.inequalities(o); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0) out.require(secs < c.budget_s, "runtime");
    std::printf("criterion %d %s: %s (%s; %.2f s)\n", c.id, c.title, out.pass ? "PASS" : "FAIL",
                out.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed == 0 ? 0 : 1;
}
