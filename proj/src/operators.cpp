#include "critflow/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critflow/errors.hpp"

namespace critflow {

namespace {

Field apply_radial(const Field& u) {
  const auto& mesh = u.mesh();
  const auto& beta = mesh.edge_coeffs();
  const auto& rpow = mesh.radii_pow();
  const double h2 = mesh.radial_spacing() * mesh.radial_spacing();
  const std::size_t m = u.size();
  Field out(u.mesh_ptr());
  const auto& v = u.values();
  auto& o = out.values();
  // Node idx sits at radius (idx+1)*h between edges idx and idx+1; the
  // boundary neighbour of the last node is zero, the origin edge carries
  // no flux (beta[0] = 0).
  for (std::size_t idx = 0; idx < m; ++idx) {
    const double bl = beta[idx];
    const double br = beta[idx + 1];
    double s = (bl + br) * v[idx];
    if (idx > 0) s -= bl * v[idx - 1];
    if (idx + 1 < m) s -= br * v[idx + 1];
    o[idx] = s / (h2 * rpow[idx]);
  }
  return out;
}

Field apply_box(const Field& u) {
  const auto& mesh = u.mesh();
  const auto sp = mesh.box_spacings();
  const auto nc = mesh.box_counts();
  const std::size_t mx = nc[0] - 1, my = nc[1] - 1, mz = nc[2] - 1;
  const double ix = 1.0 / (sp[0] * sp[0]);
  const double iy = 1.0 / (sp[1] * sp[1]);
  const double iz = 1.0 / (sp[2] * sp[2]);
  const double diag = 2.0 * (ix + iy + iz);
  Field out(u.mesh_ptr());
  const auto& v = u.values();
  auto& o = out.values();
  for (std::size_t k = 0; k < mz; ++k)
    for (std::size_t j = 0; j < my; ++j) {
      const std::size_t row = (k * my + j) * mx;
      for (std::size_t i = 0; i < mx; ++i) {
        const std::size_t idx = row + i;
        double s = diag * v[idx];
        if (i > 0) s -= ix * v[idx - 1];
        if (i + 1 < mx) s -= ix * v[idx + 1];
        if (j > 0) s -= iy * v[idx - mx];
        if (j + 1 < my) s -= iy * v[idx + mx];
        if (k > 0) s -= iz * v[idx - mx * my];
        if (k + 1 < mz) s -= iz * v[idx + mx * my];
        o[idx] = s;
      }
    }
  return out;
}

// Direct tridiagonal solve of L g = f on the radial grid. The system is
// row-diagonally dominant, so the sweep needs no pivoting.
Field solve_radial(const Field& f) {
  const auto& mesh = f.mesh();
  const auto& beta = mesh.edge_coeffs();
  const auto& rpow = mesh.radii_pow();
  const double h2 = mesh.radial_spacing() * mesh.radial_spacing();
  const std::size_t m = f.size();
  std::vector<double> diag(m), sup(m), rhs(f.values());
  for (std::size_t idx = 0; idx < m; ++idx) {
    const double scale = 1.0 / (h2 * rpow[idx]);
    diag[idx] = (beta[idx] + beta[idx + 1]) * scale;
    sup[idx] = -beta[idx + 1] * scale;
  }
  // forward elimination; sub-diagonal of row idx is -beta[idx]/(h^2 rpow[idx])
  for (std::size_t idx = 1; idx < m; ++idx) {
    const double sub = -beta[idx] / (h2 * rpow[idx]);
    const double w = sub / diag[idx - 1];
    diag[idx] -= w * sup[idx - 1];
    rhs[idx] -= w * rhs[idx - 1];
  }
  Field g(f.mesh_ptr());
  auto& x = g.values();
  x[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t idx = m - 1; idx-- > 0;)
    x[idx] = (rhs[idx] - sup[idx] * x[idx + 1]) / diag[idx];
  return g;
}

Field solve_box_cg(const Field& f, const PoissonOptions& opt,
                   const Field* warm_start) {
  Field x = warm_start ? *warm_start : Field(f.mesh_ptr());
  Field r = f;
  if (warm_start) {
    Field ax = apply_box(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ax[i];
  }
  const double fnorm = norm_l2(f);
  if (fnorm == 0.0) return Field(f.mesh_ptr());
  Field p = r;
  double rr = dot_weighted(r, r);
  double res = std::sqrt(rr) / fnorm;
  long it = 0;
  while (res > opt.rel_tol && it < opt.max_iter) {
    Field ap = apply_box(p);
    const double pap = dot_weighted(p, ap);
    if (pap <= 0.0) break;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = dot_weighted(r, r);
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
    res = std::sqrt(rr) / fnorm;
    ++it;
  }
  if (res > opt.fail_tol)
    throw SolverError("poisson_solve: conjugate gradients did not converge",
                      res);
  return x;
}

}  // namespace

Field apply_neg_laplacian(const Field& u) {
  if (u.empty()) throw UsageError("apply_neg_laplacian: empty field");
  return u.mesh().is_radial() ? apply_radial(u) : apply_box(u);
}

Field poisson_solve(const Field& f, const PoissonOptions& opt,
                    const Field* warm_start) {
  if (f.empty()) throw UsageError("poisson_solve: empty field");
  if (f.mesh().is_radial()) return solve_radial(f);
  return solve_box_cg(f, opt, warm_start);
}

double dot_weighted(const Field& u, const Field& v) {
  require_same_mesh(u, v, "dot_weighted");
  const auto& w = u.mesh().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * v[i];
  return s;
}

double norm_l2(const Field& u) {
  return std::sqrt(std::max(0.0, dot_weighted(u, u)));
}

double inner_h1(const Field& u, const Field& v) {
  require_same_mesh(u, v, "inner_h1");
  return dot_weighted(apply_neg_laplacian(u), v);
}

double norm_h1(const Field& u) {
  return std::sqrt(std::max(0.0, inner_h1(u, u)));
}

double integrate_power(const Field& coef, const Field& u, double p) {
  require_same_mesh(coef, u, "integrate_power");
  if (p < 1.0) throw UsageError("integrate_power: exponent must be >= 1");
  const double m = max_abs(u);
  if (m == 0.0) return 0.0;
  const auto& w = u.mesh().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += w[i] * coef[i] * std::pow(std::fabs(u[i]) / m, p);
  return std::pow(m, p) * s;
}

double integrate_power(double coef, const Field& u, double p) {
  if (p < 1.0) throw UsageError("integrate_power: exponent must be >= 1");
  const double m = max_abs(u);
  if (m == 0.0) return 0.0;
  const auto& w = u.mesh().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += w[i] * std::pow(std::fabs(u[i]) / m, p);
  return coef * std::pow(m, p) * s;
}

Field axpy(double a, const Field& x, const Field& y) {
  require_same_mesh(x, y, "axpy");
  Field out = y;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
  return out;
}

Field scaled(const Field& x, double a) {
  Field out = x;
  for (auto& v : out.values()) v *= a;
  return out;
}

Field abs_field(const Field& x) {
  Field out = x;
  for (auto& v : out.values()) v = std::fabs(v);
  return out;
}

double max_abs(const Field& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::fabs(v));
  return m;
}

double min_value(const Field& x) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : x.values()) m = std::min(m, v);
  return m;
}

}  // namespace critflow
