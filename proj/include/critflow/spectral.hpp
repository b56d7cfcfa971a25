#pragma once

#include <memory>
#include <vector>

#include "critflow/mesh.hpp"

namespace critflow {

/// Leading Dirichlet eigenpairs of the negative Laplacian, ordered by
/// eigenvalue. Eigenfunctions are normalized to unit H^1 norm; the first one
/// is sign-fixed positive. Pairs are orthogonal in the weighted node product.
struct EigenBasis {
  std::shared_ptr<const DomainMesh> mesh;
  std::vector<double> mu;
  std::vector<Field> e;          ///< unit H^1 norm
  std::vector<double> residual;  ///< relative eigen-residuals
  std::vector<double> l2_norm;   ///< weighted L^2 norms of the stored fields

  std::size_t size() const { return mu.size(); }
  double mu1() const { return mu.at(0); }
  const Field& e1() const { return e.at(0); }

  /// L^2-normalized view of pair s.
  Field l2_normalized(std::size_t s) const;
};

struct EigenOptions {
  double residual_tol = 1e-10;
  long max_iter = 10000;
};

/// Inverse iteration with weighted-L^2 deflation.
EigenBasis compute_eigenbasis(std::shared_ptr<const DomainMesh> mesh,
                              int m_basis, const EigenOptions& opt = {});

/// (mu_2 - mu_1)/mu_2, the coercivity constant on the orthogonal complement
/// of the first eigenfunction. t -> (t - mu_1)/t is increasing, so the
/// infimum over the tail of the spectrum is attained at mu_2.
double spectral_gap_constant(const EigenBasis& basis);
double spectral_gap_constant(const std::vector<double>& mu);

}  // namespace critflow
