#pragma once

#include <Eigen/Core>

#include "kgs/instance.hpp"

namespace kgs {

/// |t|^{s-2} t, written sign(t)|t|^{s-1}; 0 at t = 0.
double signed_power(double t, double s);

/// M_i(s) = a_i + b_i s^k for i in {1, 2}. Throws ParameterError for s < 0.
double kirchhoff_m(const KirchhoffParams& params, int i, double s);

/// The pieces of phi(u, v), each with its sign as it enters the sum.
struct EnergyTerms {
  double kirchhoff_u = 0.0;  // a1/p ||u||^p + b1/(p(k+1)) ||u||^{p(k+1)}
  double kirchhoff_v = 0.0;
  double sublinear_u = 0.0;  // -lambda1/r int h1 |u|^r
  double sublinear_v = 0.0;
  double coupling = 0.0;     // -1/(alpha+beta) int h2 |u|^alpha |v|^beta
  double forcing_u = 0.0;    // -int g1 u
  double forcing_v = 0.0;
  double total() const {
    return kirchhoff_u + kirchhoff_v + sublinear_u + sublinear_v + coupling + forcing_u + forcing_v;
  }
};

EnergyTerms energy_terms(const KirchhoffInstance& instance, const StatePair& state);
double energy(const KirchhoffInstance& instance, const StatePair& state);

/// <phi'(u, v), (phi1, phi2)> from the gradient form Gamma.
double directional_derivative(const KirchhoffInstance& instance, const StatePair& state,
                              const StatePair& direction);

/// Derivatives against the canonical basis, [d/du_1 .. d/du_n, d/dv_1 .. d/dv_n].
Eigen::VectorXd gradient_vector(const KirchhoffInstance& instance, const StatePair& state);

/// LHS - RHS of both equations at every vertex of Omega.
struct StrongResidual {
  Eigen::VectorXd first;
  Eigen::VectorXd second;
  double max_abs() const;
};

StrongResidual strong_residual(const KirchhoffInstance& instance, const StatePair& state);

/// phi and its gradient on flat coefficient vectors x = [u; v], for the
/// solvers. Evaluations are pure.
class SystemFunctional {
 public:
  explicit SystemFunctional(const KirchhoffInstance& instance) : instance_(instance) {}

  const KirchhoffInstance& instance() const noexcept { return instance_; }
  Eigen::Index size() const noexcept { return 2 * static_cast<Eigen::Index>(instance_.dimension()); }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  /// ||(u, v)||_X
  double x_norm(const Eigen::VectorXd& x) const;
  StatePair state(const Eigen::VectorXd& x) const { return StatePair::from_flat(instance_, x); }

 private:
  const KirchhoffInstance& instance_;
};

}  // namespace kgs
