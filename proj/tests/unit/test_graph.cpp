#include <doctest.h>

#include <cmath>
#include <random>

#include "kgs/calculus.hpp"
#include "kgs/domain.hpp"
#include "kgs/errors.hpp"
#include "kgs/graph.hpp"
#include "kgs/vertex_function.hpp"
#include "oracles.hpp"

using namespace kgs;
namespace o = kgs::oracle;

namespace {

std::string invariant_of(std::vector<VertexSpec> v, std::vector<EdgeSpec> e) {
  try {
    WeightedGraph g(std::move(v), std::move(e));
  } catch (const ValidationError& err) {
    return err.invariant();
  }
  return "";
}

std::shared_ptr<const Domain> p3() { return o::make_domain(o::path(3)); }

VertexFunction random_function(std::mt19937_64& rng, const Domain& d, bool zero_boundary) {
  Eigen::VectorXd v = o::random_vector(rng, static_cast<Eigen::Index>(d.working_size()));
  if (zero_boundary) v.tail(static_cast<Eigen::Index>(d.boundary_size())).setZero();
  return VertexFunction(d, v, zero_boundary);
}

}  // namespace

TEST_CASE("graph loader names the violated invariant") {
  CHECK(invariant_of({}, {}) == "nonempty_graph");
  CHECK(invariant_of({{"a", 1}, {"a", 1}}, {}) == "vertex_id");
  CHECK(invariant_of({{"", 1}}, {}) == "vertex_id");
  CHECK(invariant_of({{"a", 0}}, {}) == "positive_measure");
  CHECK(invariant_of({{"a", -1}}, {}) == "positive_measure");
  CHECK(invariant_of({{"a", 1}, {"b", 1}}, {{"a", "z", 1}}) == "known_vertex");
  CHECK(invariant_of({{"a", 1}, {"b", 1}}, {{"a", "a", 1}, {"a", "b", 1}}) == "no_self_loop");
  CHECK(invariant_of({{"a", 1}, {"b", 1}}, {{"a", "b", 0}}) == "positive_weight");
  CHECK(invariant_of({{"a", 1}, {"b", 1}}, {{"a", "b", 1}, {"b", "a", 2}}) == "symmetric_weight");
  CHECK(invariant_of({{"a", 1}, {"b", 1}, {"c", 1}}, {{"a", "b", 1}}) == "connected");
  CHECK(invariant_of({{"a", 1}, {"b", 1}}, {{"a", "b", 1}, {"b", "a", 1}}) == "");
}

TEST_CASE("graph accessors") {
  WeightedGraph g({{"a", 2}, {"b", 0.5}, {"c", 1}}, {{"a", "b", 3}, {"b", "c", 1}});
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.min_measure() == 0.5);
  CHECK(g.weight(g.index_of("a"), g.index_of("b")) == 3);
  CHECK(g.weight(g.index_of("b"), g.index_of("a")) == 3);
  CHECK(g.weight(g.index_of("a"), g.index_of("c")) == 0);
  CHECK_THROWS_AS(g.index_of("zz"), InputError);
}

TEST_CASE("boundary of Omega") {
  SUBCASE("P3") {
    auto d = p3();
    CHECK(d->omega_ids() == std::vector<std::string>{"b"});
    CHECK(d->boundary_ids() == std::vector<std::string>{"a", "c"});
  }
  SUBCASE("P5") {
    auto d = o::make_domain(o::path(5));
    CHECK(d->omega_ids() == std::vector<std::string>{"b", "c", "d"});
    CHECK(d->boundary_ids() == std::vector<std::string>{"a", "e"});
  }
  SUBCASE("K4 with Omega = V has an empty boundary") {
    o::GraphSpec k4;
    for (auto id : {"a", "b", "c", "d"}) k4.vertices.push_back({id, 1});
    const char* ids[] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) k4.edges.push_back({ids[i], ids[j], 1});
    k4.omega = {"a", "b", "c", "d"};
    auto d = o::make_domain(k4);
    CHECK(d->boundary_size() == 0);
    CHECK(d->interior_size() == 4);
  }
  SUBCASE("unknown, repeated and empty Omega") {
    auto g = std::make_shared<const WeightedGraph>(o::path(3).vertices, o::path(3).edges);
    std::vector<std::string> bad{"zz"}, rep{"b", "b"}, none{};
    CHECK_THROWS_AS(compute_boundary(g, bad), InputError);
    CHECK_THROWS_AS(compute_boundary(g, rep), InputError);
    CHECK_THROWS_AS(compute_boundary(g, none), InputError);
  }
  SUBCASE("random graphs agree with the dense model") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
      auto spec = o::random_graph(rng);
      auto d = o::make_domain(spec);
      o::DenseModel m(spec);
      CHECK(d->omega_ids() == m.omega());
      CHECK(d->boundary_ids() == m.boundary());
    }
  }
}

TEST_CASE("vertex functions keep the zero-boundary contract") {
  auto d = p3();
  Eigen::VectorXd v(3);
  v << 1, 1, 0;  // local order b, a, c
  CHECK_THROWS_AS(VertexFunction(*d, v, true), ContractError);
  CHECK_NOTHROW(VertexFunction(*d, v, false));
  CHECK_THROWS_AS(VertexFunction(*d, Eigen::VectorXd::Zero(2)), InputError);
  auto ib = VertexFunction::indicator(*d, "b");
  CHECK(ib.zero_boundary());
  CHECK_FALSE(VertexFunction::indicator(*d, "a").zero_boundary());
  auto sum = ib + 2.0 * ib;
  CHECK(sum.zero_boundary());
  CHECK(sum(d->local_index("b")) == 3.0);
  auto mixed = ib + VertexFunction::indicator(*d, "a");
  CHECK_FALSE(mixed.zero_boundary());
}

TEST_CASE("gradient form, gradient length, Laplacian on P3") {
  auto d = p3();
  const auto b = d->local_index("b"), a = d->local_index("a");
  const auto ib = VertexFunction::indicator(*d, "b");
  CHECK(gamma(*d, ib, ib, b) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma(*d, ib, ib, a) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(grad_norm(*d, ib, b) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(grad_norm(*d, ib, a) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(laplacian(*d, ib, b) == -2.0);
  CHECK(laplacian(*d, ib, a) == 1.0);
  CHECK(l_laplacian(*d, ib, b, 3.0) == doctest::Approx(-(1.0 + std::sqrt(0.5))).epsilon(1e-14));
  CHECK(integrate_omega(*d, ib) == 1.0);
  CHECK_THROWS_AS(gamma(*d, ib, ib, 17), InputError);
  CHECK_THROWS_AS(l_laplacian(*d, ib, b, 1.0), ParameterError);
  CHECK_THROWS_AS(l_laplacian(*d, ib, b, 0.5), ParameterError);

  const auto c = VertexFunction::constant(*d, 4.2);
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(gamma(*d, c, ib, x) == 0.0);
    CHECK(grad_norm(*d, c, x) == 0.0);
    CHECK(laplacian(*d, c, x) == 0.0);
    for (double l : {1.5, 2.0, 3.0}) CHECK(l_laplacian(*d, c, x, l) == 0.0);
  }
}

TEST_CASE("integration on P5 with mu = 2") {
  auto d = o::make_domain(o::path(5, 2.0));
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
  CHECK(integrate_omega(*d, VertexFunction::from_interior(*d, ones)) == 6.0);
  CHECK(integrate_omega(*d, VertexFunction::zero(*d)) == 0.0);
  std::vector<std::size_t> region{d->local_index("b")};
  CHECK(integrate(*d, VertexFunction::from_interior(*d, ones), region) == 2.0);
}

TEST_CASE("calculus matches the dense oracle on random graphs") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto spec = o::random_graph(rng);
    auto d = o::make_domain(spec);
    o::DenseModel m(spec);
    auto f1 = random_function(rng, *d, false), f2 = random_function(rng, *d, false);
    auto v1 = o::to_values(*d, f1.values()), v2 = o::to_values(*d, f2.values());
    const auto E = l_laplacian_all(*d, f1.values(), 3.0);
    const auto G = gradient_lengths(*d, f1.values());
    for (std::size_t x = 0; x < d->working_size(); ++x) {
      const auto& id = d->id(x);
      CHECK(gamma(*d, f1, f2, x) == doctest::Approx(m.gamma(v1, v2, id)).epsilon(1e-12));
      CHECK(laplacian(*d, f1, x) == doctest::Approx(m.laplacian(v1, id)).epsilon(1e-12));
      CHECK(l_laplacian(*d, f1, x, 3.0) == doctest::Approx(m.l_laplacian(v1, id, 3.0)).epsilon(1e-12));
      CHECK(l_laplacian(*d, f1, x, 1.5) == doctest::Approx(m.l_laplacian(v1, id, 1.5)).epsilon(1e-12));
      CHECK(E[static_cast<Eigen::Index>(x)] == doctest::Approx(l_laplacian(*d, f1, x, 3.0)).epsilon(1e-13));
      CHECK(G[static_cast<Eigen::Index>(x)] == doctest::Approx(m.grad(v1, id)).epsilon(1e-12));
    }
    CHECK(gradient_energy(*d, f1.values(), 2.5) == doctest::Approx(m.gradient_energy(v1, 2.5)).epsilon(1e-12));
  }
}

TEST_CASE("gradient form is symmetric and bilinear") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-3, 3);
  for (int t = 0; t < 200; ++t) {
    auto spec = o::random_graph(rng);
    auto d = o::make_domain(spec);
    auto f1 = random_function(rng, *d, false), f2 = random_function(rng, *d, false),
         f3 = random_function(rng, *d, false);
    const double a = coef(rng), b = coef(rng);
    for (std::size_t x = 0; x < d->working_size(); ++x) {
      CHECK(gamma(*d, f1, f2, x) == gamma(*d, f2, f1, x));
      const double lhs = gamma(*d, a * f1 + b * f2, f3, x);
      const double rhs = a * gamma(*d, f1, f3, x) + b * gamma(*d, f2, f3, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)) * 10);
    }
  }
}

TEST_CASE("l = 2 collapses to the Laplacian") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto d = o::make_domain(o::random_graph(rng));
    auto f = random_function(rng, *d, false);
    for (std::size_t x = 0; x < d->working_size(); ++x) {
      const double L = laplacian(*d, f, x);
      CHECK(std::abs(l_laplacian(*d, f, x, 2.0) - L) <= 1e-14 * std::max(1.0, std::abs(L)));
    }
  }
}

TEST_CASE("integration by parts") {
  std::mt19937_64 rng(13);
  for (double l : {1.5, 2.0, 3.0, 4.0}) {
    for (int t = 0; t < 25; ++t) {
      auto d = o::make_domain(o::random_graph(rng));
      auto psi = random_function(rng, *d, false);
      auto phi = random_function(rng, *d, true);
      const auto lap = l_laplacian_all(*d, psi.values(), l);
      const auto len = gradient_lengths(*d, psi.values());
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t x = 0; x < d->interior_size(); ++x) {
        lhs += d->measure(x) * phi(x) * lap[static_cast<Eigen::Index>(x)];
      }
      for (std::size_t x = 0; x < d->working_size(); ++x) {
        rhs -= d->measure(x) * gradient_power(len[static_cast<Eigen::Index>(x)], l - 2.0) * gamma(*d, psi, phi, x);
      }
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("gradient_power conventions") {
  CHECK(gradient_power(0.0, 0.0) == 1.0);
  CHECK(gradient_power(0.0, -0.5) == 0.0);
  CHECK(gradient_power(0.0, 1.0) == 0.0);
  CHECK(gradient_power(4.0, 0.5) == 2.0);
}
