#include "kgs/functional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgs/calculus.hpp"
#include "kgs/errors.hpp"

namespace kgs {
namespace {

Eigen::VectorXd pad(const Domain& domain, const Eigen::VectorXd& interior) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(domain.working_size()));
  v.head(interior.size()) = interior;
  return v;
}

void check_same_instance(const KirchhoffInstance& instance, const StatePair& s) {
  if (s.dimension() != instance.dimension()) {
    throw InputError("state does not belong to this instance's domain");
  }
}

double m_of(double a, double b, double k, double e) { return a + b * std::pow(e, k); }

// Pointwise nonlinearity lambda1 h1 |u|^{r-2}u + alpha/(alpha+beta) h2 |u|^{alpha-2}u |v|^beta + g1
// (and its v counterpart) at interior vertex i.
double rhs_u(const KirchhoffInstance& inst, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
             Eigen::Index i) {
  const auto& P = inst.params();
  const auto& c = inst.coefficients();
  return P.lambda1 * c.h1[i] * signed_power(u[i], P.r) +
         P.alpha / (P.alpha + P.beta) * c.h2[i] * signed_power(u[i], P.alpha) *
             std::pow(std::abs(v[i]), P.beta) +
         c.g1[i];
}

double rhs_v(const KirchhoffInstance& inst, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
             Eigen::Index i) {
  const auto& P = inst.params();
  const auto& c = inst.coefficients();
  return P.lambda2 * c.h3[i] * signed_power(v[i], P.r) +
         P.beta / (P.alpha + P.beta) * c.h2[i] * std::pow(std::abs(u[i]), P.alpha) *
             signed_power(v[i], P.beta) +
         c.g2[i];
}

EnergyTerms terms_of(const KirchhoffInstance& inst, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const auto& d = inst.domain();
  const auto& P = inst.params();
  const auto& c = inst.coefficients();
  const double eu = gradient_energy(d, pad(d, u), P.p);
  const double ev = gradient_energy(d, pad(d, v), P.q);

  EnergyTerms t;
  t.kirchhoff_u = P.a1 / P.p * eu + P.b1 / (P.p * (P.k + 1.0)) * std::pow(eu, P.k + 1.0);
  t.kirchhoff_v = P.a2 / P.q * ev + P.b2 / (P.q * (P.k + 1.0)) * std::pow(ev, P.k + 1.0);
  double su = 0.0, sv = 0.0, cp = 0.0, fu = 0.0, fv = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double mu = d.measure(static_cast<std::size_t>(i));
    const double au = std::abs(u[i]);
    const double av = std::abs(v[i]);
    su += mu * c.h1[i] * std::pow(au, P.r);
    sv += mu * c.h3[i] * std::pow(av, P.r);
    cp += mu * c.h2[i] * std::pow(au, P.alpha) * std::pow(av, P.beta);
    fu += mu * c.g1[i] * u[i];
    fv += mu * c.g2[i] * v[i];
  }
  t.sublinear_u = -P.lambda1 / P.r * su;
  t.sublinear_v = -P.lambda2 / P.r * sv;
  t.coupling = -cp / (P.alpha + P.beta);
  t.forcing_u = -fu;
  t.forcing_v = -fv;
  return t;
}

// Weak-form assembly of the Kirchhoff-weighted l-energy derivative against
// every interior indicator.
Eigen::VectorXd kirchhoff_part(const Domain& d, const Eigen::VectorXd& interior, double l,
                               double a, double b, double k) {
  const Eigen::VectorXd full = pad(d, interior);
  const Eigen::VectorXd len = gradient_lengths(d, full);
  Eigen::VectorXd A(len.size());
  for (Eigen::Index x = 0; x < len.size(); ++x) A[x] = gradient_power(len[x], l - 2.0);
  double e = 0.0;
  for (Eigen::Index x = 0; x < len.size(); ++x) {
    e += d.measure(static_cast<std::size_t>(x)) * gradient_power(len[x], l);
  }
  const double m = m_of(a, b, k, e);

  Eigen::VectorXd out(interior.size());
  for (Eigen::Index j = 0; j < interior.size(); ++j) {
    double s = 0.0;
    for (const auto& nb : d.neighbors(static_cast<std::size_t>(j))) {
      const auto y = static_cast<Eigen::Index>(nb.index);
      s += nb.weight * (full[j] - full[y]) * (A[j] + A[y]);
    }
    out[j] = m * 0.5 * s;
  }
  return out;
}

}  // namespace

double signed_power(double t, double s) {
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), s - 1.0), t);
}

double kirchhoff_m(const KirchhoffParams& params, int i, double s) {
  if (!(s >= 0.0)) throw ParameterError("M_i(s) needs s >= 0, got " + std::to_string(s));
  if (i == 1) return m_of(params.a1, params.b1, params.k, s);
  if (i == 2) return m_of(params.a2, params.b2, params.k, s);
  throw ParameterError("Kirchhoff index must be 1 or 2");
}

EnergyTerms energy_terms(const KirchhoffInstance& instance, const StatePair& state) {
  check_same_instance(instance, state);
  return terms_of(instance, state.u(), state.v());
}

double energy(const KirchhoffInstance& instance, const StatePair& state) {
  return energy_terms(instance, state).total();
}

double directional_derivative(const KirchhoffInstance& instance, const StatePair& state,
                              const StatePair& direction) {
  check_same_instance(instance, state);
  check_same_instance(instance, direction);
  const auto& d = instance.domain();
  const auto& P = instance.params();

  const auto u = VertexFunction::from_interior(d, state.u());
  const auto v = VertexFunction::from_interior(d, state.v());
  const auto f1 = VertexFunction::from_interior(d, direction.u());
  const auto f2 = VertexFunction::from_interior(d, direction.v());

  double eu = 0.0, ev = 0.0, du = 0.0, dv = 0.0;
  for (std::size_t x = 0; x < d.working_size(); ++x) {
    const double mu = d.measure(x);
    const double lu = grad_norm(d, u, x);
    const double lv = grad_norm(d, v, x);
    eu += mu * gradient_power(lu, P.p);
    ev += mu * gradient_power(lv, P.q);
    du += mu * gradient_power(lu, P.p - 2.0) * gamma(d, u, f1, x);
    dv += mu * gradient_power(lv, P.q - 2.0) * gamma(d, v, f2, x);
  }
  double result = kirchhoff_m(P, 1, eu) * du + kirchhoff_m(P, 2, ev) * dv;
  for (Eigen::Index i = 0; i < state.u().size(); ++i) {
    const double mu = d.measure(static_cast<std::size_t>(i));
    result -= mu * (rhs_u(instance, state.u(), state.v(), i) * direction.u()[i] +
                    rhs_v(instance, state.u(), state.v(), i) * direction.v()[i]);
  }
  return result;
}

Eigen::VectorXd gradient_vector(const KirchhoffInstance& instance, const StatePair& state) {
  check_same_instance(instance, state);
  return SystemFunctional(instance).gradient(state.flat());
}

double StrongResidual::max_abs() const {
  double m = 0.0;
  if (first.size() > 0) m = std::max(m, first.cwiseAbs().maxCoeff());
  if (second.size() > 0) m = std::max(m, second.cwiseAbs().maxCoeff());
  return m;
}

StrongResidual strong_residual(const KirchhoffInstance& instance, const StatePair& state) {
  check_same_instance(instance, state);
  const auto& d = instance.domain();
  const auto& P = instance.params();
  const Eigen::VectorXd uf = pad(d, state.u());
  const Eigen::VectorXd vf = pad(d, state.v());
  const Eigen::VectorXd lap_u = l_laplacian_all(d, uf, P.p);
  const Eigen::VectorXd lap_v = l_laplacian_all(d, vf, P.q);
  const double mu_ = kirchhoff_m(P, 1, gradient_energy(d, uf, P.p));
  const double mv_ = kirchhoff_m(P, 2, gradient_energy(d, vf, P.q));

  const auto n = static_cast<Eigen::Index>(instance.dimension());
  StrongResidual res{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    res.first[i] = -mu_ * lap_u[i] - rhs_u(instance, state.u(), state.v(), i);
    res.second[i] = -mv_ * lap_v[i] - rhs_v(instance, state.u(), state.v(), i);
  }
  return res;
}

double SystemFunctional::value(const Eigen::VectorXd& x) const {
  const auto n = static_cast<Eigen::Index>(instance_.dimension());
  return terms_of(instance_, x.head(n), x.tail(n)).total();
}

Eigen::VectorXd SystemFunctional::gradient(const Eigen::VectorXd& x) const {
  const auto n = static_cast<Eigen::Index>(instance_.dimension());
  if (x.size() != 2 * n) throw InputError("flat state has the wrong length");
  const auto& d = instance_.domain();
  const auto& P = instance_.params();
  const Eigen::VectorXd u = x.head(n);
  const Eigen::VectorXd v = x.tail(n);

  Eigen::VectorXd g(2 * n);
  g.head(n) = kirchhoff_part(d, u, P.p, P.a1, P.b1, P.k);
  g.tail(n) = kirchhoff_part(d, v, P.q, P.a2, P.b2, P.k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mu = d.measure(static_cast<std::size_t>(i));
    g[i] -= mu * rhs_u(instance_, u, v, i);
    g[n + i] -= mu * rhs_v(instance_, u, v, i);
  }
  return g;
}

double SystemFunctional::x_norm(const Eigen::VectorXd& x) const {
  const auto n = static_cast<Eigen::Index>(instance_.dimension());
  const auto& d = instance_.domain();
  return w0_norm(d, Eigen::VectorXd(x.head(n)), instance_.params().p) +
         w0_norm(d, Eigen::VectorXd(x.tail(n)), instance_.params().q);
}

}  // namespace kgs
