#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace critflow {

enum class MeshKind { RadialBall, Box3 };

/// Structured discretization of the domain: a radial grid on a ball in R^n
/// (n >= 3) or a uniform vertex grid on a 3-D box. Interior nodes carry the
/// unknowns; boundary values are identically zero (homogeneous Dirichlet).
///
/// Radial grid: nodes r_i = i*h, i = 1..m-1 interior, r = R boundary. The
/// origin is not a node; the stencil closes there through a zero-flux edge,
/// which encodes the regularity condition u'(0) = 0.
class DomainMesh {
public:
  static std::shared_ptr<const DomainMesh> radial_ball(int n, double radius,
                                                       int node_count);
  static std::shared_ptr<const DomainMesh> box3(double lx, double ly, double lz,
                                                int nx, int ny, int nz);

  MeshKind kind() const { return kind_; }
  bool is_radial() const { return kind_ == MeshKind::RadialBall; }

  /// Space dimension n (3 for box meshes).
  int dimension() const { return n_; }
  std::size_t interior_count() const { return weights_.size(); }

  // Radial accessors (UsageError on a box mesh).
  double radius() const;
  int radial_node_count() const;  ///< subdivision count m, spacing = R/m
  double radial_spacing() const;
  const std::vector<double>& radii() const;        ///< interior radii i*h
  const std::vector<double>& radii_pow() const;    ///< r_i^{n-1}
  const std::vector<double>& edge_coeffs() const;  ///< flux coefficients, edge i = [i*h,(i+1)*h]

  // Box accessors (UsageError on a radial mesh).
  std::array<double, 3> box_edges() const;
  std::array<int, 3> box_counts() const;
  std::array<double, 3> box_spacings() const;

  /// Per-interior-node quadrature weights. Radial: omega_{n-1} r_i^{n-1} h,
  /// exactly proportional to r^{n-1} so the weighted operator is symmetric
  /// to machine precision. Box: hx*hy*hz.
  const std::vector<double>& weights() const { return weights_; }

  double max_spacing() const;

  /// Analytic |Omega|.
  double volume_exact() const;

  /// Trapezoid-complete volume of the quadrature rule, i.e. the interior
  /// weights plus the boundary half-cells (where every field vanishes, so
  /// field integrals never see them). Approximates |Omega| to O(h^2).
  double quadrature_volume() const;

  /// Node position; radial nodes sit at (r, 0, 0).
  std::array<double, 3> position(std::size_t idx) const;

  /// Distance from a point to the Dirichlet boundary.
  double boundary_distance(const std::array<double, 3>& p) const;

  bool same_geometry(const DomainMesh& other) const;

  /// Header line used by the field dump format.
  std::string header() const;

  DomainMesh(const DomainMesh&) = delete;
  DomainMesh& operator=(const DomainMesh&) = delete;

private:
  DomainMesh() = default;

  MeshKind kind_ = MeshKind::RadialBall;
  int n_ = 3;

  // radial
  double radius_ = 0.0;
  int m_ = 0;
  double h_ = 0.0;
  std::vector<double> radii_;
  std::vector<double> rpow_;   // r_i^{n-1}
  std::vector<double> beta_;   // edge flux coefficients, beta_[0] = 0 (origin)
  double sphere_area_ = 0.0;   // |S^{n-1}|

  // box
  std::array<double, 3> edges_{};
  std::array<int, 3> counts_{};
  std::array<double, 3> spacings_{};

  std::vector<double> weights_;
};

/// Values at the interior nodes of a mesh; the zero trace is implicit.
class Field {
public:
  Field() = default;
  explicit Field(std::shared_ptr<const DomainMesh> mesh, double fill = 0.0);
  Field(std::shared_ptr<const DomainMesh> mesh, std::vector<double> values);

  const DomainMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const DomainMesh>& mesh_ptr() const { return mesh_; }

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  /// Throws ConfigError if any value is NaN or infinite.
  void require_finite(const char* what = "field") const;

private:
  std::shared_ptr<const DomainMesh> mesh_;
  std::vector<double> v_;
};

void require_same_mesh(const Field& a, const Field& b, const char* where);

// Text dump format: one header line ("mesh radial <n> <R> <m>" or
// "mesh box3 <Lx> <Ly> <Lz> <nx> <ny> <nz>"), then one value per line in
// node order.
void dump_field(const Field& f, std::ostream& os);
Field load_field(std::istream& is);
void dump_field_file(const Field& f, const std::string& path);
Field load_field_file(const std::string& path);

}  // namespace critflow
