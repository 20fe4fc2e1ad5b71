#include "local_solvers.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace kgs::detail {

Eigen::VectorXd Objective::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = phi->gradient(x);
  if (active.empty()) return g;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.size());
  for (auto i : active) out[i] = g[i];
  return out;
}

Eigen::VectorXd retract(const Objective& obj, Eigen::VectorXd x, double radius) {
  if (!std::isfinite(radius)) return x;
  const double n = obj.norm(x);
  if (n > radius) x *= radius / n;
  return x;
}

Eigen::VectorXd project(const Objective& obj, Eigen::VectorXd x, const DescentOptions& opt) {
  for (Eigen::Index i = 0; i < opt.orthant.size(); ++i) {
    if (opt.orthant[i] > 0.0) x[i] = std::max(x[i], 0.0);
    if (opt.orthant[i] < 0.0) x[i] = std::min(x[i], 0.0);
  }
  return retract(obj, std::move(x), opt.radius);
}

DescentResult armijo_descent(const Objective& obj, Eigen::VectorXd x, const DescentOptions& opt) {
  DescentResult out;
  const bool constrained = std::isfinite(opt.radius) || opt.orthant.size() > 0;
  x = project(obj, std::move(x), opt);
  double f = obj.value(x);
  Eigen::VectorXd g = obj.gradient(x);
  double step = 1.0;
  long it = 0;
  for (; it < opt.max_iters; ++it) {
    const double measure =
        constrained ? (x - project(obj, x - g, opt)).norm() : g.norm();
    if (measure <= opt.stop_grad) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    Eigen::VectorXd trial;
    double ft = f;
    while (step > 1e-20) {
      trial = project(obj, x - step * g, opt);
      ft = obj.value(trial);
      if (std::isfinite(ft) && ft < f && ft <= f + opt.slope * g.dot(trial - x)) {
        accepted = true;
        break;
      }
      step *= opt.backtrack;
    }
    if (!accepted) break;
    if (ft > f) out.monotone = false;
    x = std::move(trial);
    f = ft;
    g = obj.gradient(x);
    step = std::min(step * 2.0, 1e6);
    if (obj.norm(x) > opt.blowup_norm) {
      out.blew_up = true;
      break;
    }
  }
  out.iterations = it;
  out.on_boundary = std::isfinite(opt.radius) && obj.norm(x) >= opt.radius * (1.0 - 1e-9);
  out.f = f;
  out.x = std::move(x);
  return out;
}

PolishResult newton_polish(const Objective& obj, Eigen::VectorXd x, double tol, int max_iters) {
  std::vector<Eigen::Index> idx = obj.active;
  if (idx.empty()) {
    for (Eigen::Index i = 0; i < x.size(); ++i) idx.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  auto gather = [&](const Eigen::VectorXd& full) {
    Eigen::VectorXd r(m);
    for (Eigen::Index j = 0; j < m; ++j) r[j] = full[idx[static_cast<std::size_t>(j)]];
    return r;
  };

  PolishResult out;
  Eigen::VectorXd g = gather(obj.gradient(x));
  double gn = g.norm();
  int it = 0;
  for (; it < max_iters && gn > tol; ++it) {
    Eigen::MatrixXd J(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto c = idx[static_cast<std::size_t>(j)];
      const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
      Eigen::VectorXd xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      J.col(j) = (gather(obj.gradient(xp)) - gather(obj.gradient(xm))) / (2.0 * h);
    }
    const Eigen::VectorXd d = J.colPivHouseholderQr().solve(-g);
    if (!d.allFinite()) break;
    bool accepted = false;
    double s = 1.0;
    for (int k = 0; k < 40; ++k, s *= 0.5) {
      Eigen::VectorXd xt = x;
      for (Eigen::Index j = 0; j < m; ++j) xt[idx[static_cast<std::size_t>(j)]] += s * d[j];
      const Eigen::VectorXd gt = gather(obj.gradient(xt));
      const double gtn = gt.norm();
      if (std::isfinite(gtn) && gtn < gn) {
        x = std::move(xt);
        g = gt;
        gn = gtn;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.x = std::move(x);
  out.grad_norm = gn;
  out.iterations = it;
  return out;
}

}  // namespace kgs::detail
