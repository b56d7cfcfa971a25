#include "critflow/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "critflow/errors.hpp"
#include "critflow/operators.hpp"

namespace critflow {

namespace {

// sign(u)|u|^q, the odd extension of the power nonlinearity.
Field odd_power(const Field& u, double q) {
  Field out = u;
  for (auto& v : out.values())
    v = v == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(v), q), v);
  return out;
}

Field nonlinear_rhs(const ProblemData& data, const Field& u) {
  Field rhs = odd_power(u, data.q());
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] = data.K[i] * rhs[i] + data.mu * u[i];
  return rhs;
}

}  // namespace

ProblemData ProblemData::with_constant_K(std::shared_ptr<const DomainMesh> mesh,
                                         double k, double mu) {
  return ProblemData{mesh, Field(mesh, k), mu};
}

ProblemData ProblemData::with_K(Field K, double mu) {
  auto mesh = K.mesh_ptr();
  return ProblemData{std::move(mesh), std::move(K), mu};
}

double ProblemData::k_sup() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : K.values()) m = std::max(m, v);
  return m;
}

double sobolev_best_constant(int n) {
  if (n < 3) throw UsageError("sobolev_best_constant: requires n >= 3");
  const double sphere_n =
      2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  return 0.25 * n * (n - 2.0) * std::pow(sphere_n, 2.0 / n);
}

double eval_I(const ProblemData& data, const Field& u) {
  require_same_mesh(data.K, u, "eval_I");
  const double h1 = inner_h1(u, u);
  const double l2 = dot_weighted(u, u);
  const double d = integrate_power(data.K, u, data.crit());
  return 0.5 * h1 - d / data.crit() - 0.5 * data.mu * l2;
}

QuotientParts eval_quotient_parts(const ProblemData& data, const Field& u) {
  require_same_mesh(data.K, u, "eval_quotient");
  QuotientParts parts;
  parts.N = inner_h1(u, u) - data.mu * dot_weighted(u, u);
  parts.D = integrate_power(data.K, u, data.crit());
  if (!(parts.D > 0.0))
    throw ConeError("eval_quotient: critical integral is not positive "
                    "(field lies outside the admissible cone)");
  parts.J = parts.N / std::pow(parts.D, (data.n() - 2.0) / data.n());
  return parts;
}

double eval_quotient(const ProblemData& data, const Field& u) {
  return eval_quotient_parts(data, u).J;
}

Field grad_I(const ProblemData& data, const Field& u) {
  require_same_mesh(data.K, u, "grad_I");
  return axpy(-1.0, poisson_solve(nonlinear_rhs(data, u)), u);
}

Field grad_quotient(const ProblemData& data, const Field& u, double* scale_out) {
  const QuotientParts parts = eval_quotient_parts(data, u);
  const int n = data.n();
  const double dpow = std::pow(parts.D, (n - 2.0) / n);

  // grad N = 2(u - mu (-Lap)^{-1} u), grad D = (q+1) (-Lap)^{-1}(K|u|^{q-1}u)
  Field grad_n = axpy(-2.0 * data.mu, poisson_solve(u), scaled(u, 2.0));
  Field kpow = odd_power(u, data.q());
  for (std::size_t i = 0; i < kpow.size(); ++i) kpow[i] *= data.K[i];
  Field grad_d = scaled(poisson_solve(kpow), data.crit());

  const double c = (n - 2.0) / n * parts.N / parts.D;
  Field g = axpy(-c, grad_d, grad_n);
  for (auto& v : g.values()) v /= dpow;
  if (scale_out)
    *scale_out = (norm_h1(grad_n) + std::fabs(c) * norm_h1(grad_d)) / dpow;
  return g;
}

bool mp_member(const ProblemData& data, const ConstantsReport& constants,
               const Field& u, int p) {
  if (p < 1) throw UsageError("mp_member: p must be >= 1");
  require_same_mesh(data.K, u, "mp_member");
  const double h1 = norm_h1(u);
  if (!(h1 > 1.0 / (p + 1.0))) return false;
  const double d = integrate_power(data.K, u, data.crit());
  const double nval = h1 * h1 - data.mu * dot_weighted(u, u);
  const int n = data.n();
  // sign-consistent odd extension of N^{n/(n-2)} for the (rare) N < 0 case
  const double npow =
      std::copysign(std::pow(std::fabs(nval), double(n) / (n - 2.0)), nval);
  const double rhs =
      std::pow(p * constants.c_low, double(n) / (2.0 - n)) * npow;
  return d > rhs;
}

ConstantsReport compute_constants(const ProblemData& data, double L_est,
                                  double mu1) {
  ConstantsReport r;
  r.K_inf = data.k_sup();
  if (!(r.K_inf > 0.0))
    throw ParamError("compute_constants: coefficient supremum must be positive");
  const int n = data.n();
  r.S = sobolev_best_constant(n);
  r.L_est = L_est;
  r.c_sup = std::pow(r.S, 0.5 * n) / (n * std::pow(r.K_inf, 0.5 * (n - 2.0)));
  r.c_low = std::pow(n * r.c_sup, 2.0 / n);
  r.varpi = std::pow(L_est, 0.5 * n) / n;
  r.mu1 = mu1;
  r.lions_holds = L_est < r.c_low;
  return r;
}

}  // namespace critflow
