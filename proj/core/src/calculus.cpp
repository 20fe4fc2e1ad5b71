#include "kgs/calculus.hpp"

#include <cmath>
#include <string>

#include "kgs/errors.hpp"

namespace kgs {
namespace {

void check_vertex(const Domain& domain, std::size_t x) {
  if (x >= domain.working_size()) {
    throw InputError("vertex index " + std::to_string(x) + " is outside the working set");
  }
}

void check_function(const Domain& domain, const VertexFunction& f) {
  if (f.size() != domain.working_size() || f.interior_size() != domain.interior_size()) {
    throw InputError("vertex function does not belong to this domain");
  }
}

void check_exponent(double l) {
  if (!(l > 1.0)) throw ParameterError("l-Laplacian requires l > 1, got " + std::to_string(l));
}

// 2 mu(x) Gamma(psi, psi)(x)
double doubled_gamma_diag(const Domain& domain, const Eigen::VectorXd& v, std::size_t x) {
  const double vx = v[static_cast<Eigen::Index>(x)];
  double s = 0.0;
  for (const auto& nb : domain.neighbors(x)) {
    const double d = v[static_cast<Eigen::Index>(nb.index)] - vx;
    s += nb.weight * d * d;
  }
  return s;
}

}  // namespace

double gradient_power(double length, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (length == 0.0) return 0.0;
  return std::pow(length, exponent);
}

double gamma(const Domain& domain, const VertexFunction& psi1, const VertexFunction& psi2,
             std::size_t x) {
  check_vertex(domain, x);
  check_function(domain, psi1);
  check_function(domain, psi2);
  double s = 0.0;
  for (const auto& nb : domain.neighbors(x)) {
    s += nb.weight * ((psi1(nb.index) - psi1(x)) * (psi2(nb.index) - psi2(x)));
  }
  return s / (2.0 * domain.measure(x));
}

double grad_norm(const Domain& domain, const VertexFunction& psi, std::size_t x) {
  check_vertex(domain, x);
  check_function(domain, psi);
  return std::sqrt(doubled_gamma_diag(domain, psi.values(), x) / (2.0 * domain.measure(x)));
}

double laplacian(const Domain& domain, const VertexFunction& psi, std::size_t x) {
  check_vertex(domain, x);
  check_function(domain, psi);
  double s = 0.0;
  for (const auto& nb : domain.neighbors(x)) {
    s += nb.weight * (psi(nb.index) - psi(x));
  }
  return s / domain.measure(x);
}

double l_laplacian(const Domain& domain, const VertexFunction& psi, std::size_t x, double l) {
  check_exponent(l);
  check_vertex(domain, x);
  check_function(domain, psi);
  const auto& v = psi.values();
  auto power_at = [&](std::size_t z) {
    return gradient_power(std::sqrt(doubled_gamma_diag(domain, v, z) / (2.0 * domain.measure(z))),
                          l - 2.0);
  };
  const double px = power_at(x);
  double s = 0.0;
  for (const auto& nb : domain.neighbors(x)) {
    s += (power_at(nb.index) + px) * nb.weight * (psi(nb.index) - psi(x));
  }
  return s / (2.0 * domain.measure(x));
}

double integrate(const Domain& domain, const VertexFunction& psi,
                 std::span<const std::size_t> region) {
  check_function(domain, psi);
  double s = 0.0;
  for (auto x : region) {
    check_vertex(domain, x);
    s += domain.measure(x) * psi(x);
  }
  return s;
}

double integrate_omega(const Domain& domain, const VertexFunction& psi) {
  check_function(domain, psi);
  double s = 0.0;
  for (std::size_t x = 0; x < domain.interior_size(); ++x) s += domain.measure(x) * psi(x);
  return s;
}

double integrate_working(const Domain& domain, const VertexFunction& psi) {
  check_function(domain, psi);
  double s = 0.0;
  for (std::size_t x = 0; x < domain.working_size(); ++x) s += domain.measure(x) * psi(x);
  return s;
}

Eigen::VectorXd gradient_lengths(const Domain& domain, const Eigen::VectorXd& values) {
  const auto n = domain.working_size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    out[static_cast<Eigen::Index>(x)] =
        std::sqrt(doubled_gamma_diag(domain, values, x) / (2.0 * domain.measure(x)));
  }
  return out;
}

Eigen::VectorXd l_laplacian_all(const Domain& domain, const Eigen::VectorXd& values, double l) {
  check_exponent(l);
  const auto n = domain.working_size();
  Eigen::VectorXd power(static_cast<Eigen::Index>(n));
  const Eigen::VectorXd len = gradient_lengths(domain, values);
  for (Eigen::Index i = 0; i < len.size(); ++i) power[i] = gradient_power(len[i], l - 2.0);

  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    const auto ix = static_cast<Eigen::Index>(x);
    double s = 0.0;
    for (const auto& nb : domain.neighbors(x)) {
      const auto iy = static_cast<Eigen::Index>(nb.index);
      s += (power[iy] + power[ix]) * nb.weight * (values[iy] - values[ix]);
    }
    out[ix] = s / (2.0 * domain.measure(x));
  }
  return out;
}

double gradient_energy(const Domain& domain, const Eigen::VectorXd& values, double l) {
  double s = 0.0;
  for (std::size_t x = 0; x < domain.working_size(); ++x) {
    const double mu = domain.measure(x);
    const double g = doubled_gamma_diag(domain, values, x) / (2.0 * mu);
    if (g > 0.0) s += mu * std::pow(g, 0.5 * l);
  }
  return s;
}

}  // namespace kgs
