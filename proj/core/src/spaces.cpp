#include "kgs/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kgs/calculus.hpp"
#include "kgs/errors.hpp"
#include "kgs/parallel.hpp"

namespace kgs {
namespace {

Eigen::VectorXd pad(const Domain& domain, const Eigen::VectorXd& interior) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(domain.working_size()));
  v.head(interior.size()) = interior;
  return v;
}

// Log of the embedding ratio and its gradient in the interior coefficients.
// For gamma = infinity the numerator is |u(target)|.
struct RatioObjective {
  const Domain& domain;
  double l;
  double gamma;
  Eigen::Index target;  // only used for gamma = infinity

  double value(const Eigen::VectorXd& x) const {
    const double e = gradient_energy(domain, pad(domain, x), l);
    if (!(e > 0.0)) return -kInfinity;
    double num;
    if (std::isinf(gamma)) {
      num = std::log(std::abs(x[target]));
    } else {
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        s += domain.measure(static_cast<std::size_t>(i)) * std::pow(std::abs(x[i]), gamma);
      }
      num = std::log(s) / gamma;
    }
    return num - std::log(e) / l;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd full = pad(domain, x);
    const double e = gradient_energy(domain, full, l);
    const Eigen::VectorXd lap = l_laplacian_all(domain, full, l);
    Eigen::VectorXd g(x.size());
    // d/dx_j (1/l) log E = -mu_j Delta_l x(j) / E
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      g[i] = domain.measure(static_cast<std::size_t>(i)) * lap[i] / e;
    }
    if (std::isinf(gamma)) {
      g[target] += 1.0 / x[target];
    } else {
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        s += domain.measure(static_cast<std::size_t>(i)) * std::pow(std::abs(x[i]), gamma);
      }
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]);
        const double signed_pow = a == 0.0 ? 0.0 : std::copysign(std::pow(a, gamma - 1.0), x[i]);
        g[i] += domain.measure(static_cast<std::size_t>(i)) * signed_pow / s;
      }
    }
    return g;
  }
};

struct AscentResult {
  double ratio = 0.0;
  Eigen::VectorXd x;
  long iterations = 0;
  bool converged = false;
};

void normalize(const Domain& domain, Eigen::VectorXd& x, double l) {
  x /= std::pow(gradient_energy(domain, pad(domain, x), l), 1.0 / l);
}

// Armijo ascent on the scale-invariant log-ratio, renormalised to the unit
// W_0^{1,l} sphere after every step.
AscentResult ascend(const RatioObjective& obj, Eigen::VectorXd x, const EmbeddingOptions& opt) {
  AscentResult out;
  normalize(obj.domain, x, obj.l);
  double f = obj.value(x);
  double step = 1.0;
  const double grad_stop = std::sqrt(opt.tolerance);
  long it = 0;
  for (; it < opt.max_iterations; ++it) {
    const Eigen::VectorXd g = obj.gradient(x);
    const double gn = g.norm();
    if (gn * x.norm() <= grad_stop) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    while (step > 1e-18) {
      Eigen::VectorXd trial = x + step * g;
      normalize(obj.domain, trial, obj.l);
      const double ft = obj.value(trial);
      if (std::isfinite(ft) && ft >= f + 1e-4 * step * gn * gn) {
        x = std::move(trial);
        f = ft;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Line search exhausted: at a (possibly nonsmooth) local maximum.
      out.converged = gn * x.norm() <= 1e-4;
      break;
    }
  }
  out.iterations = it;
  out.ratio = std::exp(f);
  out.x = std::move(x);
  return out;
}

AscentResult maximize_ratio(const Domain& domain, double l, double gamma,
                            const EmbeddingOptions& opt) {
  const auto n = static_cast<Eigen::Index>(domain.interior_size());

  struct Start {
    Eigen::Index target;
    Eigen::VectorXd x;
  };
  std::vector<Start> starts;
  if (std::isinf(gamma)) {
    for (Eigen::Index j = 0; j < n; ++j) starts.push_back({j, Eigen::VectorXd::Unit(n, j)});
  } else {
    for (Eigen::Index j = 0; j < n; ++j) starts.push_back({0, Eigen::VectorXd::Unit(n, j)});
    if (n > 1) {
      for (int r = 0; r < opt.random_starts; ++r) {
        auto rng = stream_rng(opt.seed, static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        Eigen::VectorXd x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = unif(rng);
        if (x.norm() == 0.0) x[0] = 1.0;
        starts.push_back({0, std::move(x)});
      }
    }
  }

  std::vector<AscentResult> results(starts.size());
  parallel_for(starts.size(), opt.threads, [&](std::size_t i) {
    RatioObjective obj{domain, l, gamma, starts[i].target};
    results[i] = ascend(obj, starts[i].x, opt);
  });

  AscentResult best = results.front();
  long total = 0;
  for (const auto& r : results) {
    total += r.iterations;
    if (r.ratio > best.ratio) best = r;
  }
  best.iterations = total;

  return best;
}

}  // namespace

double lp_norm(const Domain& domain, const VertexFunction& u, double gamma, Region region) {
  if (!(gamma >= 1.0)) throw ParameterError("L^gamma norm needs gamma >= 1, got " + std::to_string(gamma));
  if (u.size() != domain.working_size()) throw InputError("vertex function does not belong to this domain");
  const std::size_t end = region == Region::omega ? domain.interior_size() : domain.working_size();
  if (std::isinf(gamma)) {
    double m = 0.0;
    for (std::size_t x = 0; x < end; ++x) m = std::max(m, std::abs(u(x)));
    return m;
  }
  double s = 0.0;
  for (std::size_t x = 0; x < end; ++x) s += domain.measure(x) * std::pow(std::abs(u(x)), gamma);
  return std::pow(s, 1.0 / gamma);
}

SobolevElement::SobolevElement(VertexFunction f, double l) : f_(std::move(f)), l_(l) {
  if (!f_.zero_boundary()) {
    throw ContractError("W_0^{1,l} element must be flagged zero_boundary");
  }
  if (!(l > 1.0)) throw ParameterError("W_0^{1,l} needs l > 1, got " + std::to_string(l));
}

double w0_norm(const Domain& domain, const SobolevElement& u) {
  if (u.function().size() != domain.working_size()) {
    throw InputError("Sobolev element does not belong to this domain");
  }
  return std::pow(gradient_energy(domain, u.function().values(), u.exponent()), 1.0 / u.exponent());
}

double w0_norm(const Domain& domain, const Eigen::VectorXd& interior, double l) {
  return std::pow(gradient_energy(domain, pad(domain, interior), l), 1.0 / l);
}

std::vector<SobolevElement> canonical_basis(const Domain& domain, double l) {
  if (domain.interior_size() == 0) throw InputError("canonical basis of an empty Omega");
  std::vector<SobolevElement> basis;
  basis.reserve(domain.interior_size());
  for (std::size_t i = 0; i < domain.interior_size(); ++i) {
    basis.emplace_back(VertexFunction::indicator(domain, domain.id(i)), l);
  }
  return basis;
}

double embedding_ratio(const Domain& domain, const Eigen::VectorXd& interior, double l,
                       double gamma) {
  const auto f = VertexFunction::from_interior(domain, interior);
  const double w = w0_norm(domain, interior, l);
  if (!(w > 0.0)) throw InputError("embedding ratio is undefined for u = 0");
  return lp_norm(domain, f, gamma) / w;
}

EmbeddingReport embedding_constants(const Domain& domain, double l, double gamma,
                                    const EmbeddingOptions& options) {
  if (!(l > 1.0)) throw ParameterError("embedding needs l > 1, got " + std::to_string(l));
  if (!(gamma >= 1.0)) throw ParameterError("embedding needs gamma >= 1, got " + std::to_string(gamma));

  EmbeddingReport rep;
  rep.l = l;
  rep.gamma = gamma;

  auto best = maximize_ratio(domain, l, gamma, options);
  rep.best_constant = best.ratio;
  rep.converged = best.converged;
  rep.iterations = best.iterations;
  rep.witness = best.x;
  for (std::size_t i = 0; i < domain.interior_size(); ++i) rep.witness_ids.push_back(domain.id(i));

  if (gamma == l) {
    rep.l_constant = best.ratio;
  } else {
    auto at_l = maximize_ratio(domain, l, l, options);
    rep.l_constant = at_l.ratio;
    rep.converged = rep.converged && at_l.converged;
    rep.iterations += at_l.iterations;
  }
  rep.closed_form_constant = rep.l_constant / domain.min_interior_measure() *
                       (1.0 + std::abs(domain.interior_measure()));
  rep.sup_constant = rep.l_constant / std::pow(domain.graph().min_measure(), 1.0 / l);
  rep.closed_form_bound_holds = rep.best_constant <= rep.closed_form_constant;
  return rep;
}

}  // namespace kgs
