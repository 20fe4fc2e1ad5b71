#include "kgs/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgs/errors.hpp"

namespace kgs {

bool HypothesisVerdict::holds() const {
  return std::all_of(margins.begin(), margins.end(), [](const Margin& m) { return m.holds(); });
}

bool HypothesisReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.holds(); });
}

const HypothesisVerdict& HypothesisReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw InputError("no hypothesis named " + name);
}

EmbeddingPair compute_embeddings(const KirchhoffInstance& instance, const EmbeddingOptions& options) {
  const auto& P = instance.params();
  EmbeddingPair pair;
  pair.p = embedding_constants(instance.domain(), P.p, P.p, options);
  pair.q = P.q == P.p ? pair.p : embedding_constants(instance.domain(), P.q, P.q, options);
  return pair;
}

ProfileGeometry profile_geometry(double m1, double m2, double m, double c, double tail) {
  if (!(c > m)) {
    throw ParameterError("barrier profile needs alpha+beta > max{p,q}(k+1), got " +
                         std::to_string(c) + " <= " + std::to_string(m));
  }
  if (!(m1 >= 0.0) || !(m2 >= 0.0)) throw ParameterError("M1 and M2 must be nonnegative");
  ProfileGeometry g;
  g.m1 = m1;
  g.m2 = m2;
  g.lead_exponent = m;
  g.coupling_exponent = c;
  g.tail = tail;
  const double gap = c - m;
  if (m2 == 0.0) {
    g.zstar = kInfinity;
    g.rho = kInfinity;
    g.peak = kInfinity;
    g.g_at_zstar = kInfinity;
    g.g2nd_at_zstar = m1 > 0.0 ? kInfinity : 0.0;
    return g;
  }
  g.zstar = std::pow(m * m1 / (c * m2), 1.0 / gap);
  g.rho = g.zstar;
  g.peak = gap / c * std::pow(m1, c / gap) * std::pow(m / (c * m2), m / gap);
  const double z = g.zstar;
  g.g_at_zstar = m1 * std::pow(z, m) - m2 * std::pow(z, c) - tail;
  g.g2nd_at_zstar = m * (m - 1.0) * m1 * std::pow(z, m - 2.0) - c * (c - 1.0) * m2 * std::pow(z, c - 2.0);
  return g;
}

double m1_constant(const KirchhoffParams& P) {
  const double m = std::max(P.p, P.q) * (P.k + 1.0);
  return std::pow(2.0, 1.0 - m) * std::min(P.b1 / (P.p * (P.k + 1.0)), P.b2 / (P.q * (P.k + 1.0)));
}

double m2_constant(const KirchhoffInstance& instance, const EmbeddingPair& e) {
  const auto& P = instance.params();
  const double c = P.alpha + P.beta;
  return instance.h2_sup() / (c * c) *
         std::max(P.alpha * std::pow(e.c_p(), c), P.beta * std::pow(e.c_q(), c));
}

double tail_constant(const KirchhoffInstance& instance) {
  const auto& P = instance.params();
  const double lam = std::max(P.lambda1 * (P.p - P.r) / (P.p * P.r), P.lambda2 * (P.q - P.r) / (P.q * P.r));
  const double gcoef = std::max((P.p - 1.0) / P.p, (P.q - 1.0) / P.q);
  return lam * instance.h_tail_norms() + gcoef * instance.g_tail_norms(instance.h4_mode());
}

namespace {

void check_embedding(const KirchhoffInstance& instance, const EmbeddingPair& e) {
  const auto& P = instance.params();
  if (e.p.l != P.p || e.q.l != P.q || !(e.c_p() > 0.0) || !(e.c_q() > 0.0)) {
    throw InputError("embedding reports must be computed for the instance exponents p and q");
  }
}

}  // namespace

ProfileGeometry mountain_pass_radius(const KirchhoffInstance& instance, const EmbeddingPair& e) {
  check_embedding(instance, e);
  const auto& P = instance.params();
  return profile_geometry(m1_constant(P), m2_constant(instance, e), std::max(P.p, P.q) * (P.k + 1.0),
                          P.alpha + P.beta, tail_constant(instance));
}

double g_profile(const KirchhoffInstance& instance, const EmbeddingPair& e, double z) {
  check_embedding(instance, e);
  if (!(z >= 0.0)) throw ParameterError("g(z) needs z >= 0");
  const auto& P = instance.params();
  return m1_constant(P) * std::pow(z, std::max(P.p, P.q) * (P.k + 1.0)) -
         m2_constant(instance, e) * std::pow(z, P.alpha + P.beta) - tail_constant(instance);
}

double ps_lower_bound(const KirchhoffInstance& instance, const EmbeddingPair& e, double nu,
                      double nv) {
  check_embedding(instance, e);
  const auto& P = instance.params();
  const double c = P.alpha + P.beta;
  const double kp = P.k + 1.0;
  const double cp = e.c_p();
  const double cq = e.c_q();
  return P.a1 * (1.0 / P.p - 1.0 / c) * std::pow(nu, P.p) +
         P.b1 * (1.0 / (P.p * kp) - 1.0 / c) * std::pow(nu, P.p * kp) +
         P.a2 * (1.0 / P.q - 1.0 / c) * std::pow(nv, P.q) +
         P.b2 * (1.0 / (P.q * kp) - 1.0 / c) * std::pow(nv, P.q * kp) -
         P.lambda1 * (1.0 / P.r - 1.0 / c) * instance.h_extrema(1).max * std::pow(cp, P.r) * std::pow(nu, P.r) -
         P.lambda2 * (1.0 / P.r - 1.0 / c) * instance.h_extrema(3).max * std::pow(cq, P.r) * std::pow(nv, P.r) -
         (1.0 - 1.0 / c) * (instance.g_sup(1) * cp * nu + instance.g_sup(2) * cq * nv);
}

double ps_lower_bound(const KirchhoffInstance& instance, const EmbeddingPair& e, const StatePair& s) {
  return ps_lower_bound(instance, e, s.norm_u(), s.norm_v());
}

HypothesisReport check_hypotheses(const KirchhoffInstance& instance, const EmbeddingPair& e) {
  check_embedding(instance, e);
  const auto& P = instance.params();
  const auto& d = instance.domain();
  const double cp = e.c_p();
  const double cq = e.c_q();
  const double m = std::max(P.p, P.q) * (P.k + 1.0);
  const double c = P.alpha + P.beta;

  HypothesisReport rep;
  rep.mode = instance.h4_mode();
  rep.c_p = cp;
  rep.c_q = cq;
  rep.warnings = instance.warnings();

  rep.verdicts.push_back({"domain",
                          {{"#Omega > 0", static_cast<double>(d.interior_size()), true},
                           {"#dOmega > 0", static_cast<double>(d.boundary_size()), true}}});

  rep.verdicts.push_back({"H1",
                          {{"a1 - C_{1,p}^p", P.a1 - std::pow(cp, P.p), true},
                           {"a2 - C_{1,q}^q", P.a2 - std::pow(cq, P.q), true},
                           {"b1", P.b1, true},
                           {"b2", P.b2, true},
                           {"k", P.k, false}}});

  rep.verdicts.push_back({"H2",
                          {{"min h1", instance.h_extrema(1).min, true},
                           {"min h2", instance.h_extrema(2).min, true},
                           {"min h3", instance.h_extrema(3).min, true}}});

  rep.verdicts.push_back({"H3",
                          {{"p - 1", P.p - 1.0, true},
                           {"q - 1", P.q - 1.0, true},
                           {"r - 1", P.r - 1.0, true},
                           {"lambda1", P.lambda1, true},
                           {"lambda2", P.lambda2, true},
                           {"alpha", P.alpha, true},
                           {"beta", P.beta, true},
                           {"min{p,q} - r", std::min(P.p, P.q) - P.r, true},
                           {"(k+1)max{p,q} - max{p,q}", m - std::max(P.p, P.q), false},
                           {"alpha+beta - (k+1)max{p,q}", c - m, true}}});

  HypothesisVerdict h4{"H4", {}};
  h4.margins.push_back({"lambda1", P.lambda1, true});
  h4.margins.push_back({"a1 C_{1,p}^{-p} - 1 - lambda1", P.a1 * std::pow(cp, -P.p) - 1.0 - P.lambda1, true});
  h4.margins.push_back({"lambda2", P.lambda2, true});
  h4.margins.push_back({"a2 C_{1,q}^{-q} - 1 - lambda2", P.a2 * std::pow(cq, -P.q) - 1.0 - P.lambda2, true});
  const double m1 = m1_constant(P);
  const double m2 = m2_constant(instance, e);
  h4.margins.push_back({"(alpha+beta)/(max{p,q}(k+1)) M2 - M1", c / m * m2 - m1, false});
  if (c > m) {
    rep.geometry = profile_geometry(m1, m2, m, c, tail_constant(instance));
    const double gap = rep.geometry->peak - rep.geometry->tail;
    h4.margins.push_back({"peak - tail", std::isfinite(gap) ? gap : 0.0, true});
  } else {
    h4.margins.push_back({"alpha+beta - (k+1)max{p,q}", c - m, true});
  }
  rep.verdicts.push_back(std::move(h4));
  return rep;
}

}  // namespace kgs
