#pragma once

#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "kgs/functional.hpp"
#include "kgs/solvers.hpp"

namespace kgs::detail {

// phi on flat vectors with an optional coordinate subset; coordinates outside
// the subset are held fixed.
struct Objective {
  const SystemFunctional* phi = nullptr;
  std::vector<Eigen::Index> active;  // empty: all coordinates

  double value(const Eigen::VectorXd& x) const { return phi->value(x); }
  // Full-length gradient, zero on inactive coordinates.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  double norm(const Eigen::VectorXd& x) const { return phi->x_norm(x); }
};

struct DescentOptions {
  double slope = 1e-4;
  double backtrack = 0.5;
  long max_iters = 100000;
  // switch to the Newton polish below this gradient norm
  double stop_grad = 1e-6;
  // closed X-ball constraint; infinite means none
  double radius = std::numeric_limits<double>::infinity();
  // abandon runs whose norm exceeds this (unbounded-below directions)
  double blowup_norm = 1e8;
  // per-coordinate sign constraint (+1: x >= 0, -1: x <= 0, 0: free); empty means none
  Eigen::VectorXd orthant;
};

struct DescentResult {
  Eigen::VectorXd x;
  double f = 0.0;
  long iterations = 0;
  bool converged = false;
  bool on_boundary = false;
  bool blew_up = false;
  bool monotone = true;
};

// Armijo descent; with a finite radius, iterates are radially retracted into
// the X-ball and the step is accepted on the projected Armijo condition.
DescentResult armijo_descent(const Objective& obj, Eigen::VectorXd x, const DescentOptions& opt);

struct PolishResult {
  Eigen::VectorXd x;
  double grad_norm = 0.0;
  int iterations = 0;
};

// Newton iterations on grad phi = 0 with a central-difference Jacobian of the
// analytic gradient; a step is taken only if it lowers ||grad||. Local only.
PolishResult newton_polish(const Objective& obj, Eigen::VectorXd x, double tol, int max_iters = 60);

Eigen::VectorXd retract(const Objective& obj, Eigen::VectorXd x, double radius);
// retract, then clamp onto the closed orthant of opt
Eigen::VectorXd project(const Objective& obj, Eigen::VectorXd x, const DescentOptions& opt);

}  // namespace kgs::detail
