#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kgs/domain.hpp"
#include "kgs/vertex_function.hpp"

namespace kgs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Region { omega, working };

/// (sum_{x in region} mu(x) |u(x)|^gamma)^{1/gamma}, or max |u| for gamma = infinity.
/// Throws ParameterError when gamma < 1.
double lp_norm(const Domain& domain, const VertexFunction& u, double gamma,
               Region region = Region::omega);

/// A member of W_0^{1,l}(Omega): a function vanishing on dOmega with its exponent.
class SobolevElement {
 public:
  /// Throws ContractError when f is not flagged zero_boundary, ParameterError when l <= 1.
  SobolevElement(VertexFunction f, double l);

  const VertexFunction& function() const noexcept { return f_; }
  double exponent() const noexcept { return l_; }

 private:
  VertexFunction f_;
  double l_;
};

/// (sum_{x in Omega u dOmega} mu(x) |grad u|^l(x))^{1/l}
double w0_norm(const Domain& domain, const SobolevElement& u);
/// Same norm from interior coefficients.
double w0_norm(const Domain& domain, const Eigen::VectorXd& interior, double l);

/// The #Omega indicator functions of Omega in local (vertex-id) order.
std::vector<SobolevElement> canonical_basis(const Domain& domain, double l);

struct EmbeddingOptions {
  int random_starts = 20;
  // Target accuracy of the maximal ratio; the ascent stops once the
  // scale-free gradient falls below sqrt(tolerance).
  double tolerance = 1e-10;
  int max_iterations = 20000;
  std::uint64_t seed = 0x5eed;
  unsigned threads = 1;
};

struct EmbeddingReport {
  double l = 0.0;
  double gamma = 0.0;
  // max over u != 0 of ||u||_gamma / ||u||_{W_0^{1,l}}, found by multi-start ascent
  double best_constant = 0.0;
  // C: the same maximum for gamma = l
  double l_constant = 0.0;
  // C_{1,l}(Omega) = C / mu_min,Omega * (1 + |sum_{x in Omega} mu(x)|)
  double closed_form_constant = 0.0;
  // M_l = C / mu_0^{1/l}
  double sup_constant = 0.0;
  bool closed_form_bound_holds = false;
  Eigen::VectorXd witness;  // interior coefficients with unit W_0^{1,l} norm
  std::vector<std::string> witness_ids;
  bool converged = false;
  long iterations = 0;
};

/// ||u||_gamma / ||u||_{W_0^{1,l}} for interior coefficients u != 0.
double embedding_ratio(const Domain& domain, const Eigen::VectorXd& interior, double l,
                       double gamma);

EmbeddingReport embedding_constants(const Domain& domain, double l, double gamma,
                                    const EmbeddingOptions& options = {});

}  // namespace kgs
