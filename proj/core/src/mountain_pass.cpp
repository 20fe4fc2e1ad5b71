#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kgs/errors.hpp"
#include "kgs/solvers.hpp"
#include "local_solvers.hpp"

namespace kgs {
namespace {

using Path = std::vector<Eigen::VectorXd>;

// Re-spaces nodes [first, last] at equal X-arc length along their own polyline.
void redistribute(const SystemFunctional& phi, Path& z, std::size_t first, std::size_t last) {
  if (last <= first + 1) return;
  std::vector<double> arc(last - first + 1, 0.0);
  for (std::size_t k = first + 1; k <= last; ++k) {
    arc[k - first] = arc[k - first - 1] + phi.x_norm(z[k] - z[k - 1]);
  }
  const double total = arc.back();
  if (!(total > 0.0)) return;
  Path fresh(z.begin() + static_cast<std::ptrdiff_t>(first), z.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::size_t seg = 0;
  for (std::size_t j = 1; j + first < last; ++j) {
    const double s = total * static_cast<double>(j) / static_cast<double>(last - first);
    while (seg + 1 < arc.size() - 1 && arc[seg + 1] < s) ++seg;
    const double len = arc[seg + 1] - arc[seg];
    const double w = len > 0.0 ? (s - arc[seg]) / len : 0.0;
    z[first + j] = (1.0 - w) * fresh[seg] + w * fresh[seg + 1];
  }
}

Eigen::VectorXd along(const Path& z, std::size_t i, double s) {
  return s < 0.0 ? Eigen::VectorXd(z[i] + s * (z[i] - z[i - 1])) : Eigen::VectorXd(z[i] + s * (z[i + 1] - z[i]));
}

// Golden-section maximisation of phi on the two segments adjacent to node i.
void refine_max_node(const SystemFunctional& phi, Path& z, std::vector<double>& E, std::size_t i) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = -1.0, b = 1.0;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = phi.value(along(z, i, c)), fd = phi.value(along(z, i, d));
  for (int k = 0; k < 60 && b - a > 1e-12; ++k) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = phi.value(along(z, i, c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = phi.value(along(z, i, d));
    }
  }
  const double s = 0.5 * (a + b);
  const Eigen::VectorXd cand = along(z, i, s);
  const double fs = phi.value(cand);
  if (fs > E[i]) {
    z[i] = cand;
    E[i] = fs;
  }
}

}  // namespace

MountainPassOutcome mountain_pass(const KirchhoffInstance& instance, const StatePair& endpoint,
                                  const SolverConfig& config, double collapse_level) {
  config.validate();
  if (endpoint.dimension() != instance.dimension()) throw InputError("endpoint does not match the instance");
  SystemFunctional phi(instance);
  const detail::Objective obj{&phi, {}};

  MountainPassOutcome out;
  out.point = verify(instance, StatePair::zero(instance), config, "mountain-pass");
  const Eigen::VectorXd e = endpoint.flat();
  if (!(phi.value(e) < 0.0)) {
    out.diagnostic = "endpoint energy is not negative";
    return out;
  }

  const auto N = static_cast<std::size_t>(config.path_points);
  Path z(N);
  std::vector<double> E(N);
  for (std::size_t i = 0; i < N; ++i) {
    z[i] = (static_cast<double>(i) / static_cast<double>(N - 1)) * e;
    E[i] = phi.value(z[i]);
  }

  double step = 1.0;
  double switch_tol = 1e-5;
  long it = 0;
  auto try_polish = [&](const Eigen::VectorXd& x) {
    auto p = detail::newton_polish(obj, x, 1e-3 * config.grad_tol);
    auto cp = verify(instance, phi.state(p.x), config, "mountain-pass");
    cp.iterations = it;
    const bool ok = cp.verified && cp.energy > 0.0 && cp.classification != Classification::trivial &&
                    cp.energy >= collapse_level;
    if (ok || cp.grad_norm < out.point.grad_norm) out.point = cp;
    return ok;
  };

  for (; it < config.max_iters; ++it) {
    std::size_t i = 1;
    for (std::size_t k = 2; k + 1 < N; ++k) {
      if (E[k] > E[i]) i = k;
    }
    refine_max_node(phi, z, E, i);
    out.path_max = E[i];
    if (collapse_level > 0.0 && E[i] < collapse_level) {
      out.diagnostic = "path maximum fell below half the barrier height";
      break;
    }

    const Eigen::VectorXd g = phi.gradient(z[i]);
    if (g.norm() <= switch_tol * std::max(1.0, std::abs(E[i]))) {
      if (try_polish(z[i])) {
        out.success = true;
        break;
      }
      switch_tol = std::max(0.1 * switch_tol, 1e-3 * config.grad_tol);
    }

    Eigen::VectorXd tau = z[i + 1] - z[i - 1];
    tau.normalize();
    const Eigen::VectorXd gp = g - g.dot(tau) * tau;
    const double gp2 = gp.squaredNorm();
    // phi is unbounded below, so a node may only move a fraction of the
    // distance to its neighbours per step.
    const double reach = 0.5 * std::min((z[i] - z[i - 1]).norm(), (z[i + 1] - z[i]).norm());
    if (gp2 > 0.0) step = std::min(step, reach / std::sqrt(gp2));
    bool accepted = false;
    while (step > 1e-20) {
      const Eigen::VectorXd trial = z[i] - step * gp;
      const double ft = phi.value(trial);
      if (std::isfinite(ft) && ft <= E[i] - config.armijo_slope * step * gp2) {
        z[i] = trial;
        E[i] = ft;
        accepted = true;
        break;
      }
      step *= config.backtrack;
    }
    if (!accepted) {
      if (try_polish(z[i])) {
        out.success = true;
      } else {
        out.diagnostic = "path descent stalled before the gradient tolerance was reached";
      }
      break;
    }
    step = std::min(step * 2.0, 1e6);

    redistribute(phi, z, 0, i);
    redistribute(phi, z, i, N - 1);
    for (std::size_t k = 1; k + 1 < N; ++k) E[k] = phi.value(z[k]);
  }
  if (!out.success && out.diagnostic.empty()) out.diagnostic = "iteration limit reached";
  out.point.iterations = it;

  std::vector<double> arc(N, 0.0);
  for (std::size_t k = 1; k < N; ++k) arc[k] = arc[k - 1] + phi.x_norm(z[k] - z[k - 1]);
  for (std::size_t k = 0; k < N; ++k) {
    out.path.push_back({static_cast<int>(k), arc.back() > 0.0 ? arc[k] / arc.back() : 0.0, E[k]});
  }
  return out;
}

}  // namespace kgs
