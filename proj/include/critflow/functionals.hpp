#pragma once

#include <memory>

#include "critflow/mesh.hpp"

namespace critflow {

/// Problem coefficients: the domain, the (sampled) coefficient in front of
/// the critical term, and the linear-term weight mu. The existence theory
/// needs 0 < mu <= mu_1 and a coefficient with positive supremum; both are
/// enforced where they matter (constants, initial data, scenario
/// validation), not at construction, so that the diagnostic branches remain
/// reachable.
struct ProblemData {
  std::shared_ptr<const DomainMesh> mesh;
  Field K;
  double mu = 0.0;

  static ProblemData with_constant_K(std::shared_ptr<const DomainMesh> mesh,
                                     double k, double mu);
  static ProblemData with_K(Field K, double mu);

  int n() const { return mesh->dimension(); }
  double q() const { return (n() + 2.0) / (n() - 2.0); }
  double crit() const { return 2.0 * n() / (n() - 2.0); }  ///< q + 1
  double k_sup() const;  ///< max of K over the interior nodes
};

/// The scalar thresholds of the problem.
struct ConstantsReport {
  double K_inf = 0.0;       ///< sup of the coefficient
  double S = 0.0;           ///< best Sobolev constant (closed form)
  double L_est = 0.0;       ///< estimated constrained infimum
  double c_sup = 0.0;       ///< S^{n/2} / (n K_inf^{(n-2)/2}), energy threshold
  double c_low = 0.0;       ///< (n c_sup)^{2/n} = S / K_inf^{(n-2)/n}, quotient threshold
  double varpi = 0.0;       ///< (1/n) L_est^{n/2}, minimal energy level
  double mu1 = 0.0;
  bool lions_holds = false; ///< L_est < c_low
};

/// Closed-form best constant of the critical Sobolev embedding,
/// n(n-2)/4 * |S^n|^{2/n}; domain independent.
double sobolev_best_constant(int n);

/// Numerator and denominator of the energy quotient at a field.
struct QuotientParts {
  double N = 0.0;  ///< |grad u|_2^2 - mu |u|_2^2
  double D = 0.0;  ///< integral of K |u|^{q+1}
  double J = 0.0;  ///< N / D^{(n-2)/n}
};

/// Energy functional: (1/2)|grad u|^2 - (1/(q+1)) int K|u|^{q+1} - (mu/2)|u|_2^2.
double eval_I(const ProblemData& data, const Field& u);

/// Quotient parts; throws ConeError when D(u) <= 0.
QuotientParts eval_quotient_parts(const ProblemData& data, const Field& u);
double eval_quotient(const ProblemData& data, const Field& u);

/// H^1_0 Riesz gradient of the energy: u - (-Lap)^{-1}(K|u|^{q-1}u + mu u).
Field grad_I(const ProblemData& data, const Field& u);

/// Riesz gradient of the quotient. `scale_out`, when non-null, receives the
/// combined norm of the gradient's two components; identity checks measure
/// residuals against it rather than against the (possibly vanishing) result.
Field grad_quotient(const ProblemData& data, const Field& u,
                    double* scale_out = nullptr);

/// Membership in the open set M_p: |u| > 1/(p+1) in H^1 and
/// int K|u|^{q+1} > (p c_low)^{n/(2-n)} N(u)^{n/(n-2)}.
bool mp_member(const ProblemData& data, const ConstantsReport& constants,
               const Field& u, int p);

/// Fills the report from the coefficient supremum and a given L estimate;
/// throws ParamError when the coefficient has no positive part.
ConstantsReport compute_constants(const ProblemData& data, double L_est,
                                  double mu1);

}  // namespace critflow
