#include "kgs/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kgs/errors.hpp"
#include "kgs/parallel.hpp"

namespace kgs {
namespace {

// F(s,t) = a1|s|^r + a3|t|^r + a2|s|^alpha|t|^beta + b1 s + b2 t
struct FTerms {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, b1 = 0.0, b2 = 0.0;
  double r = 2.0, alpha = 1.0, beta = 1.0;

  double operator()(double s, double t) const {
    const double as = std::abs(s), at = std::abs(t);
    return a1 * std::pow(as, r) + a3 * std::pow(at, r) + a2 * std::pow(as, alpha) * std::pow(at, beta) +
           b1 * s + b2 * t;
  }
};

FTerms integral_terms(const KirchhoffInstance& inst) {
  const auto& P = inst.params();
  const auto& c = inst.coefficients();
  const auto& d = inst.domain();
  FTerms f;
  f.r = P.r;
  f.alpha = P.alpha;
  f.beta = P.beta;
  for (Eigen::Index i = 0; i < c.h1.size(); ++i) {
    const double mu = d.measure(static_cast<std::size_t>(i));
    f.a1 += mu * c.h1[i];
    f.a2 += mu * c.h2[i];
    f.a3 += mu * c.h3[i];
    f.b1 += mu * c.g1[i];
    f.b2 += mu * c.g2[i];
  }
  f.a1 *= P.lambda1;
  f.a3 *= P.lambda2;
  return f;
}

FTerms vertex_terms(const KirchhoffInstance& inst, std::size_t x) {
  const auto& P = inst.params();
  const auto& c = inst.coefficients();
  const auto i = static_cast<Eigen::Index>(x);
  return {P.lambda1 * c.h1[i], c.h2[i], P.lambda2 * c.h3[i], c.g1[i], c.g2[i], P.r, P.alpha, P.beta};
}

struct Best {
  double f = -std::numeric_limits<double>::infinity();
  double s = 0.0, t = 0.0;
  void offer(double fv, double sv, double tv) {
    if (fv > f) {
      f = fv;
      s = sv;
      t = tv;
    }
  }
};

bool near_origin(double s, double t, double r_min) { return std::max(std::abs(s), std::abs(t)) < r_min; }

struct Asymptotics {
  bool negative_at_origin = false;
  bool negative_at_infinity = false;
  bool positive_at_infinity = false;
  std::string note;
};

Asymptotics asymptotics(const FTerms& f) {
  Asymptotics a;
  const double c = f.alpha + f.beta;
  a.negative_at_infinity = f.a1 < 0.0 && f.a3 < 0.0 && (f.a2 <= 0.0 || c < f.r);
  a.positive_at_infinity = f.a1 > 0.0 || f.a3 > 0.0 || (f.a2 > 0.0 && c > f.r);
  a.negative_at_origin = f.b1 == 0.0 && f.b2 == 0.0 && f.a1 < 0.0 && f.a3 < 0.0 && (f.a2 <= 0.0 || c > f.r);
  a.note = std::string("origin: ") +
           (f.b1 != 0.0 || f.b2 != 0.0 ? "linear terms lead (F changes sign)"
                                       : (a.negative_at_origin ? "power terms negative" : "undetermined")) +
           "; infinity: " +
           (a.negative_at_infinity ? "leading terms negative"
                                   : (a.positive_at_infinity ? "some leading term positive" : "undetermined"));
  return a;
}

// Doubles tau from t_max along direction (c, d) looking for F >= 0.
std::optional<std::array<double, 2>> ray_witness(const FTerms& f, double c, double d, double t_max) {
  for (double tau = t_max; tau <= 1e30; tau *= 2.0) {
    if (f(tau * c, tau * d) >= 0.0) return std::array<double, 2>{tau * c, tau * d};
  }
  return std::nullopt;
}

void polish(const FTerms& f, Best& b, const NonexistenceSearch& s) {
  double x = b.s, y = b.t, fx = b.f;
  double step = 1e-2 * s.t_max;
  for (int it = 0; it < 500 && step > 1e-15 * s.t_max; ++it) {
    const double hx = 1e-7 * std::max(1.0, std::abs(x));
    const double hy = 1e-7 * std::max(1.0, std::abs(y));
    double gx = (f(x + hx, y) - f(x - hx, y)) / (2.0 * hx);
    double gy = (f(x, y + hy) - f(x, y - hy)) / (2.0 * hy);
    const double gn = std::hypot(gx, gy);
    if (!(gn > 0.0)) break;
    gx /= gn;
    gy /= gn;
    const double nx = std::clamp(x + step * gx, -s.t_max, s.t_max);
    const double ny = std::clamp(y + step * gy, -s.t_max, s.t_max);
    const double fn = f(nx, ny);
    if (fn > fx && !near_origin(nx, ny, s.r_min)) {
      x = nx;
      y = ny;
      fx = fn;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  b.offer(fx, x, y);
}

struct TermsResult {
  Best best;
  std::size_t tested = 0;
  Asymptotics asym;
};

TermsResult search_terms(const FTerms& f, const NonexistenceSearch& s) {
  TermsResult out;
  const int G = s.grid;
  std::vector<Best> rows(static_cast<std::size_t>(G));
  std::vector<std::size_t> counts(static_cast<std::size_t>(G), 0);
  auto coord = [&](int i) { return -s.t_max + 2.0 * s.t_max * static_cast<double>(i) / (G - 1); };
  parallel_for(rows.size(), s.threads, [&](std::size_t i) {
    const double sv = coord(static_cast<int>(i));
    for (int j = 0; j < G; ++j) {
      const double tv = coord(j);
      if (near_origin(sv, tv, s.r_min)) continue;
      rows[i].offer(f(sv, tv), sv, tv);
      ++counts[i];
    }
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.best.offer(rows[i].f, rows[i].s, rows[i].t);
    out.tested += counts[i];
  }

  // Log-polar scan resolves the neighbourhood of the origin the grid skips.
  constexpr int kRadii = 240, kAngles = 720;
  const double lr0 = std::log(s.r_min), lr1 = std::log(s.t_max);
  for (int k = 0; k < kRadii; ++k) {
    const double rad = std::exp(lr0 + (lr1 - lr0) * k / (kRadii - 1));
    for (int a = 0; a < kAngles; ++a) {
      const double th = 2.0 * std::numbers::pi * a / kAngles;
      const double sv = rad * std::cos(th), tv = rad * std::sin(th);
      if (near_origin(sv, tv, s.r_min) || std::abs(sv) > s.t_max || std::abs(tv) > s.t_max) continue;
      out.best.offer(f(sv, tv), sv, tv);
      ++out.tested;
    }
  }
  if (s.polish) polish(f, out.best, s);

  out.asym = asymptotics(f);
  if (out.best.f < 0.0 && out.asym.positive_at_infinity) {
    constexpr double kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (const auto& d : kDirs) {
      if (auto w = ray_witness(f, d[0], d[1], s.t_max)) {
        out.best = Best{};
        out.best.offer(f((*w)[0], (*w)[1]), (*w)[0], (*w)[1]);
        out.asym.note += "; witness found beyond the grid along a ray";
        break;
      }
    }
  }
  return out;
}

}  // namespace

NecessaryCondition semitrivial_necessary(const KirchhoffInstance& instance, const EmbeddingPair& e,
                                         const CriticalPoint& point) {
  if (point.classification == Classification::fully_nontrivial) {
    throw InputError("necessary condition applies to semi-trivial points only");
  }
  const auto& P = instance.params();
  NecessaryCondition nc;
  nc.side = point.classification == Classification::semi_trivial_v ? Component::v : Component::u;
  double a, b, l, lam, H, G, C, N;
  if (nc.side == Component::u) {
    a = P.a1, b = P.b1, l = P.p, lam = P.lambda1, H = instance.h_extrema(1).max, G = instance.g_sup(1);
    C = e.c_p(), N = point.state.norm_u();
  } else {
    a = P.a2, b = P.b2, l = P.q, lam = P.lambda2, H = instance.h_extrema(3).max, G = instance.g_sup(2);
    C = e.c_q(), N = point.state.norm_v();
  }
  nc.lhs = a * std::pow(N, l) + b * std::pow(N, l * (P.k + 1.0));
  nc.rhs = lam * H * std::pow(C, P.r) * std::pow(N, P.r) + G * C * N;
  nc.margin = nc.rhs - nc.lhs;
  nc.holds = nc.margin >= 0.0;
  return nc;
}

std::string to_string(NonexistenceMode m) {
  switch (m) {
    case NonexistenceMode::integral: return "integral";
    case NonexistenceMode::pointwise: return "pointwise";
    case NonexistenceMode::literal: return "literal";
  }
  return "integral";
}

NonexistenceMode nonexistence_mode_from_string(const std::string& s) {
  for (auto m : {NonexistenceMode::integral, NonexistenceMode::pointwise, NonexistenceMode::literal}) {
    if (to_string(m) == s) return m;
  }
  throw InputError("unknown nonexistence mode '" + s + "'");
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::refuted: return "refuted";
    case VerdictKind::holds_numerically: return "holds-numerically";
    case VerdictKind::vacuous_at_origin: return "vacuous-at-origin";
  }
  return "refuted";
}

VerdictKind verdict_kind_from_string(const std::string& s) {
  for (auto k : {VerdictKind::refuted, VerdictKind::holds_numerically, VerdictKind::vacuous_at_origin}) {
    if (to_string(k) == s) return k;
  }
  throw InputError("unknown verdict '" + s + "'");
}

double nonexistence_function(const KirchhoffInstance& instance, double s, double t) {
  return integral_terms(instance)(s, t);
}

double nonexistence_function_at(const KirchhoffInstance& instance, std::size_t vertex, double s, double t) {
  if (vertex >= instance.dimension()) throw InputError("vertex index outside Omega");
  return vertex_terms(instance, vertex)(s, t);
}

double reevaluate_witness(const KirchhoffInstance& instance, const NonexistenceVerdict& v) {
  if (v.mode == NonexistenceMode::pointwise) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < instance.dimension(); ++x) {
      m = std::max(m, nonexistence_function_at(instance, x, v.s, v.t));
    }
    return m;
  }
  return nonexistence_function(instance, v.s, v.t);
}

NonexistenceVerdict certify_nonexistence(const KirchhoffInstance& instance, NonexistenceMode mode,
                                         const NonexistenceSearch& search) {
  if (!(search.t_max > 0.0) || search.grid < 3 || !(search.r_min > 0.0) || search.r_min >= search.t_max) {
    throw ParameterError("nonexistence search needs t_max > r_min > 0 and grid >= 3");
  }
  NonexistenceVerdict v;
  v.mode = mode;
  v.search = search;
  if (mode == NonexistenceMode::literal) {
    v.verdict = VerdictKind::vacuous_at_origin;
    v.f_max = nonexistence_function(instance, 0.0, 0.0);
    v.points_tested = 1;
    v.conclusive = true;
    v.asymptotics = "F(0,0) = 0, so F < 0 cannot hold for every (s,t)";
    return v;
  }

  if (mode == NonexistenceMode::integral) {
    auto r = search_terms(integral_terms(instance), search);
    v.f_max = r.best.f;
    v.s = r.best.s;
    v.t = r.best.t;
    v.points_tested = r.tested;
    v.asymptotics = r.asym.note;
    v.conclusive = r.best.f >= 0.0 || (r.asym.negative_at_origin && r.asym.negative_at_infinity);
  } else {
    v.conclusive = true;
    v.f_max = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < instance.dimension(); ++x) {
      auto r = search_terms(vertex_terms(instance, x), search);
      v.points_tested += r.tested;
      const bool ok = r.best.f >= 0.0 || (r.asym.negative_at_origin && r.asym.negative_at_infinity);
      v.conclusive = v.conclusive && ok;
      if (r.best.f > v.f_max) {
        v.f_max = r.best.f;
        v.s = r.best.s;
        v.t = r.best.t;
        v.vertex = instance.domain().id(x);
        v.asymptotics = r.asym.note;
      }
    }
  }
  v.verdict = v.f_max >= 0.0 ? VerdictKind::refuted : VerdictKind::holds_numerically;
  return v;
}

NontrivialityReport fully_nontrivial_check(const KirchhoffInstance& instance,
                                           const std::vector<CriticalPoint>& points) {
  NontrivialityReport rep;
  rep.applicable = !instance.g_vanishes(1) && !instance.g_vanishes(2);
  rep.checked = points.size();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    if (p.classification == Classification::fully_nontrivial) continue;
    const auto res = strong_residual(instance, p.state);
    // (u,0) must solve the second equation, (0,v) the first; trivial points both.
    Eigen::VectorXd r;
    if (p.classification == Classification::semi_trivial_u) {
      r = res.second;
    } else if (p.classification == Classification::semi_trivial_v) {
      r = res.first;
    } else {
      r = res.first.cwiseAbs().cwiseMax(res.second.cwiseAbs());
    }
    Eigen::Index at = 0;
    r.cwiseAbs().maxCoeff(&at);
    rep.violations.push_back({k, p.classification, p.verified, instance.domain().id(static_cast<std::size_t>(at)), r[at]});
  }
  return rep;
}

}  // namespace kgs
