#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgs/hypotheses.hpp"
#include "kgs/instance.hpp"
#include "kgs/solvers.hpp"

namespace kgs {

struct NecessaryCondition {
  Component side = Component::u;
  double lhs = 0.0;  // a ||w||^l + b ||w||^{l(k+1)}
  double rhs = 0.0;  // lambda H C^r ||w||^r + G C ||w||
  double margin = 0.0;  // rhs - lhs
  bool holds = false;
};

/// The necessary inequality for a semi-trivial solution (u0, 0) or (0, v0).
/// The v-side uses max h3, and G_i is taken as max |g_i|. A trivial point is
/// evaluated on the u-side (margin 0). Throws InputError for a fully
/// non-trivial point.
NecessaryCondition semitrivial_necessary(const KirchhoffInstance& instance,
                                         const EmbeddingPair& embedding, const CriticalPoint& point);

enum class NonexistenceMode { integral, pointwise, literal };
enum class VerdictKind { refuted, holds_numerically, vacuous_at_origin };

std::string to_string(NonexistenceMode m);
NonexistenceMode nonexistence_mode_from_string(const std::string& s);
std::string to_string(VerdictKind k);
VerdictKind verdict_kind_from_string(const std::string& s);

struct NonexistenceSearch {
  double t_max = 1e3;
  int grid = 201;
  // points with max(|s|, |t|) < r_min are treated as the origin and skipped
  double r_min = 1e-6;
  bool polish = true;
  unsigned threads = 1;
};

struct NonexistenceVerdict {
  NonexistenceMode mode = NonexistenceMode::integral;
  VerdictKind verdict = VerdictKind::holds_numerically;
  double f_max = 0.0;
  double s = 0.0;
  double t = 0.0;
  // pointwise mode: vertex attaining f_max
  std::string vertex;
  NonexistenceSearch search;
  std::size_t points_tested = 0;
  // true when the sign of F near the origin and at infinity follows from
  // the leading terms and agrees with the verdict
  bool conclusive = false;
  std::string asymptotics;
};

/// F(s, t) = lambda1 |s|^r int h1 + lambda2 |t|^r int h3 + |s|^alpha |t|^beta int h2
///         + s int g1 + t int g2.
double nonexistence_function(const KirchhoffInstance& instance, double s, double t);
/// Same expression with the coefficient values at one vertex of Omega.
double nonexistence_function_at(const KirchhoffInstance& instance, std::size_t vertex, double s, double t);

NonexistenceVerdict certify_nonexistence(const KirchhoffInstance& instance, NonexistenceMode mode,
                                         const NonexistenceSearch& search = {});

/// Re-evaluates F at the verdict's witness (max over vertices in pointwise mode).
double reevaluate_witness(const KirchhoffInstance& instance, const NonexistenceVerdict& verdict);

struct NontrivialityViolation {
  std::size_t index = 0;  // position in the input list
  Classification classification = Classification::trivial;
  bool verified = false;
  std::string vertex;     // vertex with the largest residual of the vanishing equation
  double residual = 0.0;
};

struct NontrivialityReport {
  bool applicable = false;  // g1 and g2 both nonzero
  std::size_t checked = 0;
  std::vector<NontrivialityViolation> violations;
  bool all_fully_nontrivial() const { return violations.empty(); }
};

NontrivialityReport fully_nontrivial_check(const KirchhoffInstance& instance,
                                           const std::vector<CriticalPoint>& points);

}  // namespace kgs
