#include "kgs/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kgs/errors.hpp"
#include "kgs/parallel.hpp"
#include "local_solvers.hpp"

namespace kgs {

using detail::DescentOptions;
using detail::Objective;

void SolverConfig::validate() const {
  if (!(grad_tol > 0.0) || !(residual_tol > 0.0) || !(dedup_radius > 0.0) || !(zero_tol > 0.0)) {
    throw ParameterError("solver tolerances must be positive");
  }
  if (!(armijo_slope > 0.0 && armijo_slope < 1.0)) throw ParameterError("armijo slope must lie in (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw ParameterError("backtrack factor must lie in (0, 1)");
  if (path_points < 3) throw ParameterError("path_points must be at least 3");
  if (max_iters <= 0 || restarts < 0) throw ParameterError("iteration and restart counts must be positive");
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::trivial: return "trivial";
    case Classification::semi_trivial_u: return "semi-trivial-u";
    case Classification::semi_trivial_v: return "semi-trivial-v";
    case Classification::fully_nontrivial: return "fully-non-trivial";
  }
  return "trivial";
}

Classification classification_from_string(std::string_view s) {
  for (auto c : {Classification::trivial, Classification::semi_trivial_u,
                 Classification::semi_trivial_v, Classification::fully_nontrivial}) {
    if (to_string(c) == s) return c;
  }
  throw InputError("unknown classification '" + std::string(s) + "'");
}

Classification classify_solution(const StatePair& state, double tol) {
  const bool u0 = state.norm_u() < tol;
  const bool v0 = state.norm_v() < tol;
  if (u0 && v0) return Classification::trivial;
  if (v0) return Classification::semi_trivial_u;
  if (u0) return Classification::semi_trivial_v;
  return Classification::fully_nontrivial;
}

CriticalPoint verify(const KirchhoffInstance& instance, const StatePair& state,
                     const SolverConfig& config, std::string method) {
  CriticalPoint cp;
  cp.state = state;
  cp.energy = energy(instance, state);
  cp.grad_norm = gradient_vector(instance, state).norm();
  cp.max_residual = strong_residual(instance, state).max_abs();
  cp.classification = classify_solution(state, config.zero_tol);
  cp.verified = cp.grad_norm < config.grad_tol && cp.max_residual < config.residual_tol;
  cp.method = std::move(method);
  cp.seed = config.seed;
  return cp;
}

namespace {

DescentOptions descent_options(const SolverConfig& c) {
  DescentOptions o;
  o.slope = c.armijo_slope;
  o.backtrack = c.backtrack;
  o.max_iters = c.max_iters;
  o.stop_grad = std::max(c.grad_tol, 1e-6);
  return o;
}

// Descent to a loose tolerance, then Newton polish; if the polish falls short
// the descent continues at a tighter tolerance and the polish is retried.
struct LocalRun {
  Eigen::VectorXd x;
  long iterations = 0;
  bool on_boundary = false;
  bool blew_up = false;
  bool monotone = true;
};

LocalRun descend_and_polish(const Objective& obj, Eigen::VectorXd x0, DescentOptions opt,
                            double grad_tol) {
  LocalRun run;
  Eigen::VectorXd x = std::move(x0);
  for (int round = 0; round < 3; ++round) {
    auto d = detail::armijo_descent(obj, x, opt);
    run.iterations += d.iterations;
    run.monotone = run.monotone && d.monotone;
    run.on_boundary = d.on_boundary;
    if (d.blew_up) {
      run.blew_up = true;
      run.x = d.x;
      return run;
    }
    auto p = detail::newton_polish(obj, d.x, 1e-3 * grad_tol);
    run.iterations += p.iterations;
    const bool inside = !std::isfinite(opt.radius) || obj.norm(p.x) <= opt.radius;
    if (p.grad_norm < 1e-2 * grad_tol && inside) {
      run.x = std::move(p.x);
      run.on_boundary = false;
      return run;
    }
    x = d.x;
    run.x = d.x;
    opt.stop_grad *= 1e-2;
    if (opt.stop_grad < 1e-3 * grad_tol) break;
  }
  return run;
}

Objective component_objective(const SystemFunctional& phi, Component c) {
  Objective obj{&phi, {}};
  const auto n = phi.size() / 2;
  const Eigen::Index off = c == Component::u ? 0 : n;
  for (Eigen::Index i = 0; i < n; ++i) obj.active.push_back(off + i);
  return obj;
}

// c > 0 minimising t -> phi(t d) on (0, infinity), by bisection on the
// directional derivative; 1 when the derivative is nonnegative near 0.
// Sign faces {-1, 0, +1}^n up to the antipodal map (first nonzero entry
// positive): all of them while that is at most 3^8 / 2, otherwise a seeded
// sample of config.restarts.
std::vector<Eigen::VectorXd> sign_faces(Eigen::Index n, const SolverConfig& config) {
  std::vector<Eigen::VectorXd> faces;
  auto leading_positive = [](const Eigen::VectorXd& f) {
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      if (f[j] != 0.0) return f[j] > 0.0;
    }
    return false;
  };
  if (n <= 8) {
    long total = 1;
    for (Eigen::Index j = 0; j < n; ++j) total *= 3;
    for (long code = 1; code < total; ++code) {
      Eigen::VectorXd f(n);
      long c = code;
      for (Eigen::Index j = 0; j < n; ++j, c /= 3) f[j] = static_cast<double>(c % 3) - 1.0;
      if (leading_positive(f)) faces.push_back(std::move(f));
    }
    return faces;
  }
  for (int r = 0; r < config.restarts; ++r) {
    auto rng = stream_rng(config.seed ^ 0xfacefaceULL, static_cast<std::uint64_t>(r));
    std::uniform_int_distribution<int> pick(-1, 1);
    Eigen::VectorXd f(n);
    do {
      for (Eigen::Index j = 0; j < n; ++j) f[j] = pick(rng);
    } while (!leading_positive(f));
    faces.push_back(f);
  }
  return faces;
}

double ray_minimizer(const Objective& obj, const Eigen::VectorXd& d) {
  auto slope = [&](double t) { return obj.gradient(t * d).dot(d); };
  double lo = 1e-12;
  if (slope(lo) >= 0.0) return 1.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && slope(hi) < 0.0; ++i) hi *= 2.0;
  if (slope(hi) < 0.0) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

StatePair negate(const KirchhoffInstance& inst, const StatePair& s) {
  // adding +0.0 turns -0.0 into +0.0
  return StatePair(inst, (-s.u()).array() + 0.0, (-s.v()).array() + 0.0);
}

}  // namespace

std::vector<CriticalPoint> deduplicate(const KirchhoffInstance& instance,
                                       std::vector<CriticalPoint> points, double radius) {
  std::stable_sort(points.begin(), points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return lex_less(a.state.flat(), b.state.flat());
  });
  SystemFunctional phi(instance);
  std::vector<CriticalPoint> kept;
  for (auto& p : points) {
    const Eigen::VectorXd x = p.state.flat();
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const CriticalPoint& k) {
      return phi.x_norm(x - k.state.flat()) < radius;
    });
    if (!dup) kept.push_back(std::move(p));
  }
  return kept;
}

SolveOutcome minimize_in_ball(const KirchhoffInstance& instance, double rho, const SolverConfig& config) {
  config.validate();
  if (!(rho > 0.0)) throw ParameterError("ball radius must be positive");
  SystemFunctional phi(instance);
  Objective obj{&phi, {}};
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  const auto& c = instance.coefficients();
  const auto& d = instance.domain();

  SolveOutcome out;
  out.point = verify(instance, StatePair::zero(instance), config, "minimize");

  // Small-t start along a coupling-active direction whose forcing pairing is
  // nonnegative, so phi(t d) < 0 for small t whenever the theory says so.
  std::optional<Eigen::VectorXd> start;
  const int attempts = std::max(1, config.restarts);
  for (int a = 0; a < attempts && !start; ++a) {
    auto rng = stream_rng(config.seed, static_cast<std::uint64_t>(a));
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    Eigen::VectorXd u(n), v(n);
    for (Eigen::Index i = 0; i < n; ++i) u[i] = unif(rng);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = unif(rng);
    double gu = 0.0, gv = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      gu += d.measure(static_cast<std::size_t>(i)) * c.g1[i] * u[i];
      gv += d.measure(static_cast<std::size_t>(i)) * c.g2[i] * v[i];
    }
    if (gu < 0.0) u = -u;
    if (gv < 0.0) v = -v;
    Eigen::VectorXd x(2 * n);
    x << u, v;
    x *= rho / phi.x_norm(x);
    double t = 1.0;
    for (int h = 0; h <= 60; ++h, t *= 0.5) {
      if (phi.value(t * x) < 0.0) {
        start = t * x;
        break;
      }
    }
  }
  if (!start) {
    out.diagnostic = "no negative-energy start found in the ball";
    return out;
  }

  auto opt = descent_options(config);
  opt.radius = rho;
  auto run = descend_and_polish(obj, *start, opt, config.grad_tol);
  out.point = verify(instance, phi.state(run.x), config, "minimize");
  out.point.iterations = run.iterations;
  if (!run.monotone) {
    out.diagnostic = "descent energy sequence was not monotone";
  } else if (run.on_boundary && !out.point.verified) {
    out.diagnostic = "iterate stuck on the ball boundary with an inward-pointing gradient";
  } else if (!out.point.verified) {
    out.diagnostic = "gradient tolerance not reached";
  } else if (!(out.point.energy < 0.0)) {
    out.diagnostic = "critical point does not have negative energy";
  } else if (out.point.state.norm() > rho) {
    out.diagnostic = "critical point lies outside the ball";
  } else {
    out.success = true;
  }
  return out;
}

EndpointOutcome find_endpoint(const KirchhoffInstance& instance, double rho, const SolverConfig& config,
                              const std::optional<StatePair>& direction) {
  config.validate();
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  const StatePair dir = direction ? *direction
                                  : StatePair(instance, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(n));
  if (dir.dimension() != instance.dimension()) throw InputError("direction does not match the instance");
  SystemFunctional phi(instance);
  const Eigen::VectorXd x = dir.flat();
  EndpointOutcome out;
  for (double t = 1.0; t <= 1e30; t *= 2.0) {
    const Eigen::VectorXd e = t * x;
    if (phi.value(e) < 0.0 && phi.x_norm(e) > rho) {
      out.endpoint = phi.state(e);
      out.t = t;
      return out;
    }
  }
  out.diagnostic = "no sign change of phi along the ray up to t = 1e30";
  return out;
}

SolveOutcome scalar_solve(const KirchhoffInstance& instance, Component component, const SolverConfig& config) {
  config.validate();
  SystemFunctional phi(instance);
  const Objective obj = component_objective(phi, component);
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  const Eigen::Index off = component == Component::u ? 0 : n;
  const std::string method = component == Component::u ? "scalar-u" : "scalar-v";

  SolveOutcome out;
  out.point = verify(instance, StatePair::zero(instance), config, method);
  std::string warning;
  if (!instance.g_vanishes(component == Component::u ? 2 : 1)) {
    warning = "warning: the other forcing term is not zero, so the reduced solution need not solve the system; ";
  }

  double scale = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    scale = std::max(scale, ray_minimizer(obj, Eigen::VectorXd::Unit(2 * n, off + j)));
  }

  std::vector<Eigen::VectorXd> starts;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (double s : {1.0, -1.0}) starts.push_back(s * scale * Eigen::VectorXd::Unit(2 * n, off + j));
  }
  for (int r = 0; r < config.restarts; ++r) {
    auto rng = stream_rng(config.seed, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> unif(-scale, scale);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) x[off + i] = unif(rng);
    starts.push_back(std::move(x));
  }

  std::vector<std::optional<CriticalPoint>> slots(starts.size());
  parallel_for(starts.size(), config.threads, [&](std::size_t i) {
    auto run = descend_and_polish(obj, starts[i], descent_options(config), config.grad_tol);
    auto cp = verify(instance, phi.state(run.x), config, method);
    cp.iterations = run.iterations;
    slots[i] = std::move(cp);
  });

  std::optional<CriticalPoint> best;
  for (auto& s : slots) {
    if (!s || !s->verified) continue;
    if (!best || s->energy < best->energy - 1e-12 ||
        (std::abs(s->energy - best->energy) <= 1e-12 && lex_less(s->state.flat(), best->state.flat()))) {
      best = std::move(s);
    }
  }
  if (!best) {
    out.diagnostic = warning + "no restart reached the gradient tolerance";
    for (auto& s : slots) {
      if (s && s->grad_norm < out.point.grad_norm) out.point = *s;
    }
    return out;
  }
  out.point = std::move(*best);
  out.success = true;
  out.diagnostic = warning;
  return out;
}

MultiplicityReport scalar_multiplicity(const KirchhoffInstance& instance, Component component,
                                       const SolverConfig& config) {
  config.validate();
  if (!instance.g_vanishes(1) || !instance.g_vanishes(2)) {
    throw ParameterError("multiplicity search requires g1 = g2 = 0 (an even functional)");
  }
  const double lambda = component == Component::u ? instance.params().lambda1 : instance.params().lambda2;
  if (!(lambda > 0.0)) throw ParameterError("multiplicity search requires a positive lambda");

  SystemFunctional phi(instance);
  const Objective obj = component_objective(phi, component);
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  const Eigen::Index off = component == Component::u ? 0 : n;
  const std::string method = component == Component::u ? "multiplicity-u" : "multiplicity-v";

  std::vector<Eigen::VectorXd> starts;
  double scale = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(2 * n, off + j);
    const double c = ray_minimizer(obj, e);
    scale = std::max(scale, c);
    for (double sign : {1.0, -1.0}) {
      for (double f : {0.1, 0.5, 1.0, 2.0}) starts.push_back(sign * f * c * e);
    }
  }
  for (int r = 0; r < config.restarts; ++r) {
    auto rng = stream_rng(config.seed, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> unif(-scale, scale);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) x[off + i] = unif(rng);
    starts.push_back(std::move(x));
  }

  // Starts are tagged with a sign face in {-1, 0, +1}^n: zero coordinates
  // stay fixed, the others keep their sign. Face minimizers that are
  // critical for the full functional include saddles (e.g. (1, 0, -1) on
  // a path) that unconstrained descent never reaches. Verification below
  // uses the full gradient.
  std::vector<Eigen::VectorXd> faces;
  for (const auto& x : starts) {
    Eigen::VectorXd f(n);
    for (Eigen::Index j = 0; j < n; ++j) f[j] = x[off + j] < 0.0 ? -1.0 : 1.0;
    faces.push_back(std::move(f));
  }
  for (auto& f : sign_faces(n, config)) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n);
    x.segment(off, n) = scale * f;
    starts.push_back(std::move(x));
    faces.push_back(std::move(f));
  }

  std::vector<std::optional<CriticalPoint>> slots(starts.size());
  parallel_for(starts.size(), config.threads, [&](std::size_t i) {
    Objective face_obj{&phi, {}};
    auto opt = descent_options(config);
    opt.orthant = Eigen::VectorXd::Zero(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
      opt.orthant[off + j] = faces[i][j];
      if (faces[i][j] != 0.0) face_obj.active.push_back(off + j);
    }
    auto run = descend_and_polish(face_obj, starts[i], opt, config.grad_tol);
    auto cp = verify(instance, phi.state(run.x), config, method);
    cp.iterations = run.iterations;
    if (cp.verified && cp.classification != Classification::trivial) slots[i] = std::move(cp);
  });

  std::vector<CriticalPoint> found;
  for (auto& s : slots) {
    if (!s) continue;
    auto mirror = verify(instance, negate(instance, s->state), config, method);
    mirror.iterations = s->iterations;
    found.push_back(std::move(*s));
    if (mirror.verified) found.push_back(std::move(mirror));
  }

  MultiplicityReport rep;
  rep.points = deduplicate(instance, std::move(found), config.dedup_radius);
  const Eigen::Index comp_off = off;
  for (const auto& p : rep.points) {
    const Eigen::VectorXd x = p.state.flat().segment(comp_off, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x[i] != 0.0) {
        if (x[i] > 0.0) ++rep.pairs;
        break;
      }
    }
  }
  rep.target_pairs = static_cast<std::size_t>(n);
  rep.under_count = rep.pairs < rep.target_pairs;
  if (rep.under_count) {
    rep.warnings.push_back("found " + std::to_string(rep.pairs) + " of " + std::to_string(n) +
                           " antipodal pairs; the search is heuristic and does not refute existence");
  }
  return rep;
}

std::vector<CriticalPoint> descent_sweep(const KirchhoffInstance& instance, const SolverConfig& config) {
  config.validate();
  SystemFunctional phi(instance);
  const Objective obj{&phi, {}};
  const auto n = static_cast<Eigen::Index>(instance.dimension());

  std::vector<std::optional<CriticalPoint>> slots(static_cast<std::size_t>(config.restarts));
  parallel_for(slots.size(), config.threads, [&](std::size_t i) {
    auto rng = stream_rng(config.seed, i);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    Eigen::VectorXd x(2 * n);
    for (Eigen::Index k = 0; k < 2 * n; ++k) x[k] = unif(rng);
    auto run = descend_and_polish(obj, x, descent_options(config), config.grad_tol);
    if (run.blew_up) return;
    auto cp = verify(instance, phi.state(run.x), config, "sweep");
    cp.iterations = run.iterations;
    if (cp.verified && cp.classification != Classification::trivial) slots[i] = std::move(cp);
  });

  std::vector<CriticalPoint> found;
  for (auto& s : slots) {
    if (s) found.push_back(std::move(*s));
  }
  return deduplicate(instance, std::move(found), config.dedup_radius);
}

}  // namespace kgs
