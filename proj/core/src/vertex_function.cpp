#include "kgs/vertex_function.hpp"

#include "kgs/domain.hpp"
#include "kgs/errors.hpp"

namespace kgs {

VertexFunction::VertexFunction(const Domain& domain, Eigen::VectorXd values, bool zero_boundary)
    : values_(std::move(values)),
      interior_size_(domain.interior_size()),
      zero_boundary_(zero_boundary) {
  if (static_cast<std::size_t>(values_.size()) != domain.working_size()) {
    throw InputError("vertex function has " + std::to_string(values_.size()) +
                     " values but the working set has " +
                     std::to_string(domain.working_size()) + " vertices");
  }
  check_boundary();
}

VertexFunction VertexFunction::zero(const Domain& domain) {
  return VertexFunction(domain, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(domain.working_size())),
                        true);
}

VertexFunction VertexFunction::constant(const Domain& domain, double c) {
  return VertexFunction(domain,
                        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(domain.working_size()), c),
                        c == 0.0 || domain.boundary_size() == 0);
}

VertexFunction VertexFunction::indicator(const Domain& domain, std::string_view id) {
  auto x = domain.local_index(id);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(domain.working_size()));
  v[static_cast<Eigen::Index>(x)] = 1.0;
  return VertexFunction(domain, std::move(v), domain.is_interior(x));
}

VertexFunction VertexFunction::from_interior(const Domain& domain,
                                             const Eigen::VectorXd& coefficients) {
  if (static_cast<std::size_t>(coefficients.size()) != domain.interior_size()) {
    throw InputError("expected " + std::to_string(domain.interior_size()) +
                     " interior coefficients, got " + std::to_string(coefficients.size()));
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(domain.working_size()));
  v.head(coefficients.size()) = coefficients;
  return VertexFunction(domain, std::move(v), true);
}

void VertexFunction::check_compatible(const VertexFunction& other) const {
  if (other.values_.size() != values_.size() || other.interior_size_ != interior_size_) {
    throw InputError("vertex functions live on different domains");
  }
}

void VertexFunction::check_boundary() const {
  if (!zero_boundary_) return;
  for (auto i = static_cast<Eigen::Index>(interior_size_); i < values_.size(); ++i) {
    if (values_[i] != 0.0) {
      throw ContractError("function flagged zero_boundary has value " +
                          std::to_string(values_[i]) + " on the boundary");
    }
  }
}

VertexFunction& VertexFunction::operator+=(const VertexFunction& other) {
  check_compatible(other);
  values_ += other.values_;
  zero_boundary_ = zero_boundary_ && other.zero_boundary_;
  check_boundary();
  return *this;
}

VertexFunction& VertexFunction::operator-=(const VertexFunction& other) {
  check_compatible(other);
  values_ -= other.values_;
  zero_boundary_ = zero_boundary_ && other.zero_boundary_;
  check_boundary();
  return *this;
}

VertexFunction& VertexFunction::operator*=(double s) {
  values_ *= s;
  check_boundary();
  return *this;
}

}  // namespace kgs
