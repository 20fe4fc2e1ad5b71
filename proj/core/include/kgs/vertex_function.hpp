#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace kgs {

class Domain;

/// Real values on the working set Omega u dOmega of a Domain, in local index
/// order. When zero_boundary() is set the values on dOmega are exactly zero;
/// this is checked on construction and after every arithmetic operation.
class VertexFunction {
 public:
  /// Throws InputError on a size mismatch and ContractError when
  /// zero_boundary is requested but a boundary value is nonzero.
  VertexFunction(const Domain& domain, Eigen::VectorXd values, bool zero_boundary = false);

  static VertexFunction zero(const Domain& domain);
  static VertexFunction constant(const Domain& domain, double c);
  /// Indicator of a single vertex; zero_boundary iff the vertex is in Omega.
  static VertexFunction indicator(const Domain& domain, std::string_view id);
  /// Extends interior coefficients by zero on dOmega.
  static VertexFunction from_interior(const Domain& domain, const Eigen::VectorXd& coefficients);

  double operator()(std::size_t local) const { return values_[static_cast<Eigen::Index>(local)]; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  std::size_t interior_size() const noexcept { return interior_size_; }
  bool zero_boundary() const noexcept { return zero_boundary_; }
  Eigen::VectorXd interior() const { return values_.head(static_cast<Eigen::Index>(interior_size_)); }

  VertexFunction& operator+=(const VertexFunction& other);
  VertexFunction& operator-=(const VertexFunction& other);
  VertexFunction& operator*=(double s);

  friend VertexFunction operator+(VertexFunction a, const VertexFunction& b) { return a += b; }
  friend VertexFunction operator-(VertexFunction a, const VertexFunction& b) { return a -= b; }
  friend VertexFunction operator*(double s, VertexFunction a) { return a *= s; }
  friend VertexFunction operator*(VertexFunction a, double s) { return a *= s; }

 private:
  void check_compatible(const VertexFunction& other) const;
  void check_boundary() const;

  Eigen::VectorXd values_;
  std::size_t interior_size_ = 0;
  bool zero_boundary_ = false;
};

}  // namespace kgs
