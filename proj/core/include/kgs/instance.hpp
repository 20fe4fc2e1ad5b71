#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kgs/domain.hpp"
#include "kgs/spaces.hpp"

namespace kgs {

/// Exponents, Kirchhoff coefficients M_i(s) = a_i + b_i s^k and parameters
/// of the (p,q)-Kirchhoff system.
struct KirchhoffParams {
  double p = 2.0;
  double q = 2.0;
  double r = 1.5;
  double k = 0.0;
  double alpha = 2.0;
  double beta = 2.0;
  double a1 = 1.0;
  double a2 = 1.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
};

/// Which exponent the g-terms of the mountain-pass tail use:
/// proof   -> ||g_1||_{p/(p-1)}^{p/(p-1)}, ||g_2||_{q/(q-1)}^{q/(q-1)} (what the Young step yields)
/// literal -> ||g_1||_{p/(p-r)}^{p/(p-r)}, ||g_2||_{q/(q-r)}^{q/(q-r)} (as printed in (H4))
enum class H4Mode { proof, literal };

/// Coefficient functions on Omega, in the domain's interior order.
struct Coefficients {
  Eigen::VectorXd h1;
  Eigen::VectorXd h2;
  Eigen::VectorXd h3;
  Eigen::VectorXd g1;
  Eigen::VectorXd g2;
};

struct Extrema {
  double min = 0.0;
  double max = 0.0;
};

/// An immutable instance of the system on a Domain. All extrema and tail
/// norms are computed at construction.
///
/// Structural violations (p, q, r <= 1, alpha, beta <= 0, k < 0, a_i <= 0,
/// b_i < 0, wrong coefficient sizes) throw. Non-positive h_i is admitted but
/// recorded in warnings(); the (H2) check reports it.
class KirchhoffInstance {
 public:
  KirchhoffInstance(std::shared_ptr<const Domain> domain, KirchhoffParams params,
                    Coefficients coefficients, H4Mode mode = H4Mode::proof);

  const Domain& domain() const noexcept { return *domain_; }
  std::shared_ptr<const Domain> domain_ptr() const noexcept { return domain_; }
  const KirchhoffParams& params() const noexcept { return params_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  H4Mode h4_mode() const noexcept { return mode_; }
  std::size_t dimension() const noexcept { return domain_->interior_size(); }

  /// h_i^* and H_i, i = 1, 2, 3.
  const Extrema& h_extrema(int i) const;
  /// g_i^* and G_i, i = 1, 2.
  const Extrema& g_extrema(int i) const;
  /// max_x |g_i(x)|
  double g_sup(int i) const;
  /// ||h_2||_infinity
  double h2_sup() const noexcept { return h2_sup_; }
  bool g_vanishes(int i) const { return g_sup(i) == 0.0; }

  /// ||h_1||^{p/(p-r)}_{L^{p/(p-r)}} + ||h_3||^{q/(q-r)}_{L^{q/(q-r)}}
  double h_tail_norms() const noexcept { return h_tail_; }
  /// g-term norms for the given mode (see H4Mode).
  double g_tail_norms(H4Mode mode) const noexcept {
    return mode == H4Mode::proof ? g_tail_proof_ : g_tail_literal_;
  }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  KirchhoffInstance with_mode(H4Mode mode) const;

 private:
  std::shared_ptr<const Domain> domain_;
  KirchhoffParams params_;
  Coefficients coeffs_;
  H4Mode mode_;
  Extrema h_[3];
  Extrema g_[2];
  double g_sup_[2] = {0.0, 0.0};
  double h2_sup_ = 0.0;
  double h_tail_ = 0.0;
  double g_tail_proof_ = 0.0;
  double g_tail_literal_ = 0.0;
  std::vector<std::string> warnings_;
};

/// A point (u, v) of X = W_0^{1,p}(Omega) x W_0^{1,q}(Omega), stored by its
/// interior coefficients, with cached component norms.
/// ||(u, v)||_X = ||u||_{W_0^{1,p}} + ||v||_{W_0^{1,q}}.
class StatePair {
 public:
  /// Empty state with no coefficients.
  StatePair() = default;
  StatePair(const KirchhoffInstance& instance, Eigen::VectorXd u, Eigen::VectorXd v);

  static StatePair zero(const KirchhoffInstance& instance);
  /// x = [u; v]
  static StatePair from_flat(const KirchhoffInstance& instance, const Eigen::VectorXd& x);

  const Eigen::VectorXd& u() const noexcept { return u_; }
  const Eigen::VectorXd& v() const noexcept { return v_; }
  double norm_u() const noexcept { return norm_u_; }
  double norm_v() const noexcept { return norm_v_; }
  double norm() const noexcept { return norm_u_ + norm_v_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(u_.size()); }
  Eigen::VectorXd flat() const;

 private:
  Eigen::VectorXd u_;
  Eigen::VectorXd v_;
  double norm_u_ = 0.0;
  double norm_v_ = 0.0;
};

}  // namespace kgs
