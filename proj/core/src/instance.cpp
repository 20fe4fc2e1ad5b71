#include "kgs/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgs/errors.hpp"

namespace kgs {
namespace {

Extrema extrema_of(const Eigen::VectorXd& f) { return {f.minCoeff(), f.maxCoeff()}; }

double weighted_power_sum(const Domain& d, const Eigen::VectorXd& f, double e) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    s += d.measure(static_cast<std::size_t>(i)) * std::pow(std::abs(f[i]), e);
  }
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

KirchhoffInstance::KirchhoffInstance(std::shared_ptr<const Domain> domain, KirchhoffParams params,
                                     Coefficients coefficients, H4Mode mode)
    : domain_(std::move(domain)), params_(params), coeffs_(std::move(coefficients)), mode_(mode) {
  if (!domain_) throw InputError("instance requires a domain");
  const auto& P = params_;
  require(P.p > 1.0 && P.q > 1.0 && P.r > 1.0, "exponents p, q, r must exceed 1");
  require(P.alpha > 0.0 && P.beta > 0.0, "alpha and beta must be positive");
  require(P.k >= 0.0, "k must be nonnegative");
  require(P.a1 > 0.0 && P.a2 > 0.0, "a_1 and a_2 must be positive");
  require(P.b1 >= 0.0 && P.b2 >= 0.0, "b_1 and b_2 must be nonnegative");
  for (double x : {P.p, P.q, P.r, P.k, P.alpha, P.beta, P.a1, P.a2, P.b1, P.b2, P.lambda1, P.lambda2}) {
    require(std::isfinite(x), "parameters must be finite");
  }

  const auto n = static_cast<Eigen::Index>(domain_->interior_size());
  const char* names[] = {"h1", "h2", "h3", "g1", "g2"};
  const Eigen::VectorXd* fields[] = {&coeffs_.h1, &coeffs_.h2, &coeffs_.h3, &coeffs_.g1, &coeffs_.g2};
  for (int i = 0; i < 5; ++i) {
    if (fields[i]->size() != n) {
      throw InputError(std::string("coefficient ") + names[i] + " has " +
                       std::to_string(fields[i]->size()) + " values, Omega has " + std::to_string(n));
    }
    if (!fields[i]->allFinite()) throw InputError(std::string("coefficient ") + names[i] + " is not finite");
  }

  h_[0] = extrema_of(coeffs_.h1);
  h_[1] = extrema_of(coeffs_.h2);
  h_[2] = extrema_of(coeffs_.h3);
  g_[0] = extrema_of(coeffs_.g1);
  g_[1] = extrema_of(coeffs_.g2);
  g_sup_[0] = coeffs_.g1.cwiseAbs().maxCoeff();
  g_sup_[1] = coeffs_.g2.cwiseAbs().maxCoeff();
  h2_sup_ = coeffs_.h2.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (!(h_[i].min > 0.0)) {
      warnings_.push_back("h" + std::to_string(i + 1) + " is not positive on Omega (min " +
                          std::to_string(h_[i].min) + ")");
    }
  }

  const auto& d = *domain_;
  h_tail_ = weighted_power_sum(d, coeffs_.h1, P.p / (P.p - P.r)) +
            weighted_power_sum(d, coeffs_.h3, P.q / (P.q - P.r));
  g_tail_proof_ = weighted_power_sum(d, coeffs_.g1, P.p / (P.p - 1.0)) +
                  weighted_power_sum(d, coeffs_.g2, P.q / (P.q - 1.0));
  g_tail_literal_ = weighted_power_sum(d, coeffs_.g1, P.p / (P.p - P.r)) +
                    weighted_power_sum(d, coeffs_.g2, P.q / (P.q - P.r));
}

const Extrema& KirchhoffInstance::h_extrema(int i) const {
  if (i < 1 || i > 3) throw ParameterError("h index must be 1, 2 or 3");
  return h_[i - 1];
}

const Extrema& KirchhoffInstance::g_extrema(int i) const {
  if (i < 1 || i > 2) throw ParameterError("g index must be 1 or 2");
  return g_[i - 1];
}

double KirchhoffInstance::g_sup(int i) const {
  if (i < 1 || i > 2) throw ParameterError("g index must be 1 or 2");
  return g_sup_[i - 1];
}

KirchhoffInstance KirchhoffInstance::with_mode(H4Mode mode) const {
  KirchhoffInstance copy = *this;
  copy.mode_ = mode;
  return copy;
}

StatePair::StatePair(const KirchhoffInstance& instance, Eigen::VectorXd u, Eigen::VectorXd v)
    : u_(std::move(u)), v_(std::move(v)) {
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  if (u_.size() != n || v_.size() != n) {
    throw InputError("state has " + std::to_string(u_.size()) + "/" + std::to_string(v_.size()) +
                     " coefficients, Omega has " + std::to_string(n));
  }
  norm_u_ = w0_norm(instance.domain(), u_, instance.params().p);
  norm_v_ = w0_norm(instance.domain(), v_, instance.params().q);
}

StatePair StatePair::zero(const KirchhoffInstance& instance) {
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  return StatePair(instance, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n));
}

StatePair StatePair::from_flat(const KirchhoffInstance& instance, const Eigen::VectorXd& x) {
  const auto n = static_cast<Eigen::Index>(instance.dimension());
  if (x.size() != 2 * n) throw InputError("flat state has the wrong length");
  return StatePair(instance, x.head(n), x.tail(n));
}

Eigen::VectorXd StatePair::flat() const {
  Eigen::VectorXd x(u_.size() + v_.size());
  x << u_, v_;
  return x;
}

}  // namespace kgs
