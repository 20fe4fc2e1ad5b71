#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgs/instance.hpp"
#include "kgs/spaces.hpp"

namespace kgs {

/// One numeric inequality; value > 0 (or >= 0 when not strict) means it holds.
struct Margin {
  std::string label;
  double value = 0.0;
  bool strict = true;
  bool holds() const { return strict ? value > 0.0 : value >= 0.0; }
};

struct HypothesisVerdict {
  std::string name;
  std::vector<Margin> margins;
  bool holds() const;
};

/// Embedding reports for the exponents p and q of an instance
/// (gamma = l, so closed_form_constant is C_{1,p}(Omega) and C_{1,q}(Omega)).
struct EmbeddingPair {
  EmbeddingReport p;
  EmbeddingReport q;
  double c_p() const { return p.closed_form_constant; }
  double c_q() const { return q.closed_form_constant; }
};

EmbeddingPair compute_embeddings(const KirchhoffInstance& instance,
                                 const EmbeddingOptions& options = {});

/// The one-dimensional barrier profile g(z) = M1 z^m - M2 z^c - tail with
/// m = max{p,q}(k+1), c = alpha + beta.
struct ProfileGeometry {
  double m1 = 0.0;
  double m2 = 0.0;
  double lead_exponent = 0.0;      // m
  double coupling_exponent = 0.0;  // c
  double tail = 0.0;
  double zstar = 0.0;
  double rho = 0.0;
  double g_at_zstar = 0.0;
  double g2nd_at_zstar = 0.0;
  // M1 z*^m - M2 z*^c, the quantity the tail must stay below
  double peak = 0.0;
};

/// Closed-form geometry from the constants alone. Throws ParameterError when
/// c <= m or M1 <= 0. M2 = 0 gives z* = infinity.
ProfileGeometry profile_geometry(double m1, double m2, double lead_exponent,
                                 double coupling_exponent, double tail);

double m1_constant(const KirchhoffParams& params);
double m2_constant(const KirchhoffInstance& instance, const EmbeddingPair& embedding);
/// Tail constant of g for the instance's H4Mode.
double tail_constant(const KirchhoffInstance& instance);

ProfileGeometry mountain_pass_radius(const KirchhoffInstance& instance,
                                     const EmbeddingPair& embedding);
double g_profile(const KirchhoffInstance& instance, const EmbeddingPair& embedding, double z);

/// Final lower bound of phi - <phi', (u,v)>/(alpha+beta) in terms of the two
/// component norms, with max|g_i| for G_i.
double ps_lower_bound(const KirchhoffInstance& instance, const EmbeddingPair& embedding,
                      double norm_u, double norm_v);
double ps_lower_bound(const KirchhoffInstance& instance, const EmbeddingPair& embedding,
                      const StatePair& state);

struct HypothesisReport {
  H4Mode mode = H4Mode::proof;
  double c_p = 0.0;
  double c_q = 0.0;
  // domain (Omega and dOmega nonempty), H1, H2, H3, H4 in that order
  std::vector<HypothesisVerdict> verdicts;
  std::optional<ProfileGeometry> geometry;  // absent when c <= m
  std::vector<std::string> warnings;
  bool all_hold() const;
  const HypothesisVerdict& verdict(const std::string& name) const;
};

/// Throws InputError when the embedding reports do not match p and q.
HypothesisReport check_hypotheses(const KirchhoffInstance& instance, const EmbeddingPair& embedding);

}  // namespace kgs
