#include "critflow/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "critflow/errors.hpp"
#include "critflow/operators.hpp"

namespace critflow {

namespace {

// Platform-independent uniform double in [0,1).
double unit_double(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

void deflate(Field& x, const std::vector<Field>& basis) {
  for (const Field& e : basis) {
    const double c = dot_weighted(x, e) / dot_weighted(e, e);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * e[i];
  }
}

}  // namespace

Field EigenBasis::l2_normalized(std::size_t s) const {
  return scaled(e.at(s), 1.0 / l2_norm.at(s));
}

EigenBasis compute_eigenbasis(std::shared_ptr<const DomainMesh> mesh,
                              int m_basis, const EigenOptions& opt) {
  if (m_basis < 1) throw UsageError("compute_eigenbasis: m_basis must be >= 1");
  if (std::size_t(m_basis) * 4 > mesh->interior_count())
    throw UsageError("compute_eigenbasis: m_basis too large for this mesh");

  EigenBasis basis;
  basis.mesh = mesh;

  SplitMix64 rng{0x3c6ef372fe94f82aULL};
  for (int s = 0; s < m_basis; ++s) {
    Field v(mesh);
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = 0.5 + unit_double(rng.next());
    deflate(v, basis.e);

    Field x = v;
    double mu = 0.0, res = 0.0;
    bool converged = false;
    Field warm(mesh);
    for (long it = 0; it < opt.max_iter; ++it) {
      x = poisson_solve(v, {}, it > 0 ? &warm : nullptr);
      deflate(x, basis.e);
      deflate(x, basis.e);
      const double nrm = norm_l2(x);
      if (!(nrm > 0.0))
        throw SolverError("compute_eigenbasis: iterate deflated to zero", 1.0);
      for (auto& xv : x.values()) xv /= nrm;
      const Field lx = apply_neg_laplacian(x);
      mu = dot_weighted(lx, x);
      res = norm_l2(axpy(-mu, x, lx)) / mu;
      if (res <= opt.residual_tol) {
        converged = true;
        break;
      }
      v = x;
      warm = scaled(x, 1.0 / mu);
    }
    if (!converged)
      throw SolverError("compute_eigenbasis: pair " + std::to_string(s + 1) +
                            " did not converge",
                        res);

    // Deterministic sign: make the dominant component positive; for the
    // first pair this realizes the positive eigenfunction.
    std::size_t arg = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::fabs(x[i]) > std::fabs(x[arg])) arg = i;
    if (x[arg] < 0.0) x = scaled(x, -1.0);
    if (s == 0 && min_value(x) <= 0.0)
      throw InvariantError(
          "compute_eigenbasis: first eigenfunction is not strictly positive");

    const double h1 = norm_h1(x);
    Field e = scaled(x, 1.0 / h1);
    basis.mu.push_back(mu);
    basis.l2_norm.push_back(norm_l2(e));
    basis.e.push_back(std::move(e));
    basis.residual.push_back(res);
  }
  return basis;
}

double spectral_gap_constant(const EigenBasis& basis) {
  return spectral_gap_constant(basis.mu);
}

double spectral_gap_constant(const std::vector<double>& mu) {
  if (mu.size() < 2)
    throw UsageError("spectral_gap_constant: need at least two eigenvalues");
  if (mu[1] <= mu[0])
    throw InvariantError("spectral_gap_constant: degenerate leading pair");
  return (mu[1] - mu[0]) / mu[1];
}

}  // namespace critflow
