#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "kgs/functional.hpp"
#include "kgs/instance.hpp"

namespace kgs {

struct SolverConfig {
  double grad_tol = 1e-8;
  double residual_tol = 1e-8;
  long max_iters = 100000;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
  int path_points = 50;
  int restarts = 50;
  double dedup_radius = 1e-6;
  // X-norm below which a component counts as zero when classifying
  double zero_tol = 1e-7;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// Throws ParameterError on non-positive tolerances or path_points < 3.
  void validate() const;
};

enum class Classification { trivial, semi_trivial_u, semi_trivial_v, fully_nontrivial };

std::string_view to_string(Classification c);
Classification classification_from_string(std::string_view s);

struct CriticalPoint {
  StatePair state;
  double energy = 0.0;
  double grad_norm = 0.0;
  double max_residual = 0.0;
  Classification classification = Classification::trivial;
  bool verified = false;
  std::string method;
  long iterations = 0;
  std::uint64_t seed = 0;
};

/// Result of a solver run. On failure `point` holds the best iterate and
/// `diagnostic` says what went wrong.
struct SolveOutcome {
  bool success = false;
  std::string diagnostic;
  CriticalPoint point;
};

struct PathSample {
  int node = 0;
  double t = 0.0;  // normalised X-arc length
  double energy = 0.0;
};

struct MountainPassOutcome : SolveOutcome {
  std::vector<PathSample> path;
  double path_max = 0.0;
};

struct EndpointOutcome {
  std::optional<StatePair> endpoint;
  double t = 0.0;
  std::string diagnostic;
};

Classification classify_solution(const StatePair& state, double tol);

/// Fills every CriticalPoint field for `state`.
CriticalPoint verify(const KirchhoffInstance& instance, const StatePair& state,
                     const SolverConfig& config, std::string method = "verify");

/// Projected Armijo descent in the closed X-ball of radius rho from a small
/// negative-energy start, followed by a Newton polish.
SolveOutcome minimize_in_ball(const KirchhoffInstance& instance, double rho,
                              const SolverConfig& config);

/// Doubles t along `direction` (default: 1 on Omega in both components) until
/// phi(t d) < 0 and ||t d||_X > rho.
EndpointOutcome find_endpoint(const KirchhoffInstance& instance, double rho,
                              const SolverConfig& config,
                              const std::optional<StatePair>& direction = std::nullopt);

/// Path-deformation mountain pass on the segment 0 -> endpoint.
/// Fails when the path maximum falls below `collapse_level` (pass g(z*)/2).
MountainPassOutcome mountain_pass(const KirchhoffInstance& instance, const StatePair& endpoint,
                                  const SolverConfig& config, double collapse_level = 0.0);

enum class Component { u, v };

/// Minimizes psi (phi restricted to the chosen component, the other one zero).
SolveOutcome scalar_solve(const KirchhoffInstance& instance, Component component,
                          const SolverConfig& config);

struct MultiplicityReport {
  std::vector<CriticalPoint> points;  // antipodally closed, deduplicated
  std::size_t pairs = 0;
  std::size_t target_pairs = 0;       // #Omega
  bool under_count = false;
  std::vector<std::string> warnings;
};

/// Restart-and-deduplicate search for nonzero critical points of the even
/// functional psi_0. Requires g1 = g2 = 0.
MultiplicityReport scalar_multiplicity(const KirchhoffInstance& instance, Component component,
                                       const SolverConfig& config);

/// Unconstrained descent from `config.restarts` seeded random states; returns
/// the distinct verified non-trivial critical points it reaches.
std::vector<CriticalPoint> descent_sweep(const KirchhoffInstance& instance,
                                         const SolverConfig& config);

/// Distinct points: X-distance >= radius; the representative of a cluster is
/// its lexicographically smallest coefficient vector.
std::vector<CriticalPoint> deduplicate(const KirchhoffInstance& instance,
                                       std::vector<CriticalPoint> points, double radius);

}  // namespace kgs
