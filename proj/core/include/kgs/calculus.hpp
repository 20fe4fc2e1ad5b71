#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "kgs/domain.hpp"
#include "kgs/vertex_function.hpp"

namespace kgs {

// Discrete calculus on the working subgraph of a Domain. The vertex argument
// x is a local index; anything outside the working set is an InputError.

/// Gamma(psi1, psi2)(x) = 1/(2 mu(x)) sum_{y~x} w_xy (psi1(y)-psi1(x)) (psi2(y)-psi2(x))
double gamma(const Domain& domain, const VertexFunction& psi1, const VertexFunction& psi2,
             std::size_t x);

/// |grad psi|(x) = sqrt(Gamma(psi, psi)(x))
double grad_norm(const Domain& domain, const VertexFunction& psi, std::size_t x);

/// Delta psi(x) = 1/mu(x) sum_{y~x} w_xy (psi(y)-psi(x))
double laplacian(const Domain& domain, const VertexFunction& psi, std::size_t x);

/// Delta_l psi(x) = 1/(2 mu(x)) sum_{y~x} (|grad psi|^{l-2}(y) + |grad psi|^{l-2}(x)) w_xy (psi(y)-psi(x)).
/// For l < 2 a vanishing gradient length contributes a zero factor.
/// Throws ParameterError when l <= 1.
double l_laplacian(const Domain& domain, const VertexFunction& psi, std::size_t x, double l);

/// sum_{x in region} mu(x) psi(x); region holds local indices.
double integrate(const Domain& domain, const VertexFunction& psi,
                 std::span<const std::size_t> region);
double integrate_omega(const Domain& domain, const VertexFunction& psi);
double integrate_working(const Domain& domain, const VertexFunction& psi);

/// |grad psi|^exponent with the zero-length convention for negative exponents
/// (exponent 0 always gives exactly 1).
double gradient_power(double length, double exponent);

// Batch forms over raw working-set values, used on hot paths.

/// |grad psi| at every working vertex.
Eigen::VectorXd gradient_lengths(const Domain& domain, const Eigen::VectorXd& values);
/// Delta_l psi at every working vertex.
Eigen::VectorXd l_laplacian_all(const Domain& domain, const Eigen::VectorXd& values, double l);
/// sum_{x in working set} mu(x) |grad psi|^l(x), i.e. ||psi||^l in W_0^{1,l}.
double gradient_energy(const Domain& domain, const Eigen::VectorXd& values, double l);

}  // namespace kgs
