#include "critflow/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "critflow/errors.hpp"

namespace critflow {

namespace {

constexpr int kMinRadialNodes = 16;
constexpr int kMinBoxNodes = 8;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Polynomial phi with phi(r+h) - phi(r-h) = 2 n h r^{n-1}, built by
// cancelling the lower-order terms of the central difference of r^n.
// Coefficient vector indexed by degree.
std::vector<double> phi_coeffs(int n, double h) {
  std::vector<double> target(n, 0.0);
  target[n - 1] = 2.0 * n * h;
  std::vector<double> phi(n + 1, 0.0);
  for (int d = n - 1; d >= 0; --d) {
    const double t = target[d];
    if (t == 0.0) continue;
    const int m = d + 1;
    const double a = t / (2.0 * m * h);
    phi[m] += a;
    target[d] = 0.0;  // the l = 1 term cancels exactly
    for (int l = 3; l <= m; l += 2)
      target[m - l] -= 2.0 * a * binomial(m, l) * std::pow(h, l);
  }
  return phi;
}

double poly_eval(const std::vector<double>& c, double r) {
  double s = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) s = s * r + c[j];
  return s;
}

}  // namespace

std::shared_ptr<const DomainMesh> DomainMesh::radial_ball(int n, double radius,
                                                          int node_count) {
  if (n < 3) throw ConfigError("radial mesh requires dimension n >= 3");
  if (radius <= 0.0) throw ConfigError("radial mesh requires a positive radius");
  if (node_count < kMinRadialNodes)
    throw ConfigError("radial mesh requires at least " +
                      std::to_string(kMinRadialNodes) + " nodes");

  auto mesh = std::shared_ptr<DomainMesh>(new DomainMesh());
  mesh->kind_ = MeshKind::RadialBall;
  mesh->n_ = n;
  mesh->radius_ = radius;
  mesh->m_ = node_count;
  mesh->h_ = radius / node_count;
  mesh->sphere_area_ =
      2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);

  const int m = node_count;
  const double h = mesh->h_;
  mesh->radii_.resize(m - 1);
  mesh->rpow_.resize(m - 1);
  for (int i = 1; i < m; ++i) {
    mesh->radii_[i - 1] = i * h;
    mesh->rpow_[i - 1] = std::pow(i * h, n - 1);
  }

  // Edge flux coefficients: the flux-form stencil with these coefficients is
  // exact on {1, r^2} and diag(w) * L is symmetric to machine precision.
  // The constant shift zeroes the origin edge (no flux through r = 0).
  const auto phi = phi_coeffs(n, h);
  const double shift = -(poly_eval(phi, 0.0) + poly_eval(phi, h));
  mesh->beta_.resize(m);
  mesh->beta_[0] = 0.0;
  for (int e = 1; e < m; ++e) {
    const double a = e * h;
    const double b = (e + 1) * h;
    const double beta = (poly_eval(phi, a) + poly_eval(phi, b) + shift) / (a + b);
    if (!(beta > 0.0))
      throw ConfigError("radial edge coefficient not positive (n too large?)");
    mesh->beta_[e] = beta;
  }

  mesh->weights_.resize(m - 1);
  for (int i = 1; i < m; ++i)
    mesh->weights_[i - 1] = mesh->sphere_area_ * mesh->rpow_[i - 1] * h;
  return mesh;
}

std::shared_ptr<const DomainMesh> DomainMesh::box3(double lx, double ly,
                                                   double lz, int nx, int ny,
                                                   int nz) {
  if (lx <= 0.0 || ly <= 0.0 || lz <= 0.0)
    throw ConfigError("box mesh requires positive edge lengths");
  if (nx < kMinBoxNodes || ny < kMinBoxNodes || nz < kMinBoxNodes)
    throw ConfigError("box mesh requires at least " +
                      std::to_string(kMinBoxNodes) + " nodes per axis");

  auto mesh = std::shared_ptr<DomainMesh>(new DomainMesh());
  mesh->kind_ = MeshKind::Box3;
  mesh->n_ = 3;
  mesh->edges_ = {lx, ly, lz};
  mesh->counts_ = {nx, ny, nz};
  mesh->spacings_ = {lx / nx, ly / ny, lz / nz};

  const std::size_t interior = std::size_t(nx - 1) * (ny - 1) * (nz - 1);
  const double w = mesh->spacings_[0] * mesh->spacings_[1] * mesh->spacings_[2];
  mesh->weights_.assign(interior, w);
  return mesh;
}

double DomainMesh::radius() const {
  if (!is_radial()) throw UsageError("radius(): not a radial mesh");
  return radius_;
}

int DomainMesh::radial_node_count() const {
  if (!is_radial()) throw UsageError("radial_node_count(): not a radial mesh");
  return m_;
}

double DomainMesh::radial_spacing() const {
  if (!is_radial()) throw UsageError("radial_spacing(): not a radial mesh");
  return h_;
}

const std::vector<double>& DomainMesh::radii() const {
  if (!is_radial()) throw UsageError("radii(): not a radial mesh");
  return radii_;
}

const std::vector<double>& DomainMesh::radii_pow() const {
  if (!is_radial()) throw UsageError("radii_pow(): not a radial mesh");
  return rpow_;
}

const std::vector<double>& DomainMesh::edge_coeffs() const {
  if (!is_radial()) throw UsageError("edge_coeffs(): not a radial mesh");
  return beta_;
}

std::array<double, 3> DomainMesh::box_edges() const {
  if (is_radial()) throw UsageError("box_edges(): not a box mesh");
  return edges_;
}

std::array<int, 3> DomainMesh::box_counts() const {
  if (is_radial()) throw UsageError("box_counts(): not a box mesh");
  return counts_;
}

std::array<double, 3> DomainMesh::box_spacings() const {
  if (is_radial()) throw UsageError("box_spacings(): not a box mesh");
  return spacings_;
}

double DomainMesh::max_spacing() const {
  if (is_radial()) return h_;
  return std::max({spacings_[0], spacings_[1], spacings_[2]});
}

double DomainMesh::volume_exact() const {
  if (is_radial())
    return std::pow(std::numbers::pi, 0.5 * n_) * std::pow(radius_, n_) /
           std::tgamma(0.5 * n_ + 1.0);
  return edges_[0] * edges_[1] * edges_[2];
}

double DomainMesh::quadrature_volume() const {
  if (is_radial()) {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s + 0.5 * sphere_area_ * std::pow(radius_, n_ - 1) * h_;
  }
  // 1-D trapezoid weights multiply out to exactly Lx*Ly*Lz once the
  // boundary half-cells are included.
  return edges_[0] * edges_[1] * edges_[2];
}

std::array<double, 3> DomainMesh::position(std::size_t idx) const {
  if (is_radial()) return {radii_[idx], 0.0, 0.0};
  const std::size_t mx = counts_[0] - 1, my = counts_[1] - 1;
  const std::size_t i = idx % mx;
  const std::size_t j = (idx / mx) % my;
  const std::size_t k = idx / (mx * my);
  return {(double(i) + 1) * spacings_[0], (double(j) + 1) * spacings_[1],
          (double(k) + 1) * spacings_[2]};
}

double DomainMesh::boundary_distance(const std::array<double, 3>& p) const {
  if (is_radial()) {
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return radius_ - r;
  }
  double d = edges_[0];
  for (int a = 0; a < 3; ++a)
    d = std::min({d, p[a], edges_[a] - p[a]});
  return d;
}

bool DomainMesh::same_geometry(const DomainMesh& other) const {
  if (kind_ != other.kind_) return false;
  if (is_radial())
    return n_ == other.n_ && radius_ == other.radius_ && m_ == other.m_;
  return edges_ == other.edges_ && counts_ == other.counts_;
}

std::string DomainMesh::header() const {
  char buf[160];
  if (is_radial()) {
    std::snprintf(buf, sizeof(buf), "mesh radial %d %.17g %d", n_, radius_, m_);
  } else {
    std::snprintf(buf, sizeof(buf), "mesh box3 %.17g %.17g %.17g %d %d %d",
                  edges_[0], edges_[1], edges_[2], counts_[0], counts_[1],
                  counts_[2]);
  }
  return buf;
}

Field::Field(std::shared_ptr<const DomainMesh> mesh, double fill)
    : mesh_(std::move(mesh)), v_(mesh_->interior_count(), fill) {}

Field::Field(std::shared_ptr<const DomainMesh> mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), v_(std::move(values)) {
  if (v_.size() != mesh_->interior_count())
    throw UsageError("field length does not match the mesh interior count");
}

void Field::require_finite(const char* what) const {
  for (double x : v_)
    if (!std::isfinite(x))
      throw ConfigError(std::string(what) + " contains a non-finite value");
}

void require_same_mesh(const Field& a, const Field& b, const char* where) {
  if (a.mesh_ptr() == b.mesh_ptr()) return;
  if (a.mesh_ptr() && b.mesh_ptr() && a.mesh().same_geometry(b.mesh())) return;
  throw UsageError(std::string(where) + ": fields live on different meshes");
}

void dump_field(const Field& f, std::ostream& os) {
  os << f.mesh().header() << '\n';
  char buf[40];
  for (double x : f.values()) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", x);
    os << buf;
  }
}

Field load_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("field dump: empty stream");
  std::istringstream hs(line);
  std::string tag, variant;
  hs >> tag >> variant;
  if (tag != "mesh") throw ConfigError("field dump: missing mesh header");
  std::shared_ptr<const DomainMesh> mesh;
  if (variant == "radial") {
    int n = 0, m = 0;
    double r = 0.0;
    hs >> n >> r >> m;
    if (!hs) throw ConfigError("field dump: malformed radial header");
    mesh = DomainMesh::radial_ball(n, r, m);
  } else if (variant == "box3") {
    double lx, ly, lz;
    int nx, ny, nz;
    hs >> lx >> ly >> lz >> nx >> ny >> nz;
    if (!hs) throw ConfigError("field dump: malformed box header");
    mesh = DomainMesh::box3(lx, ly, lz, nx, ny, nz);
  } else {
    throw ConfigError("field dump: unknown mesh variant '" + variant + "'");
  }
  std::vector<double> v;
  v.reserve(mesh->interior_count());
  double x;
  while (is >> x) v.push_back(x);
  if (v.size() != mesh->interior_count())
    throw ConfigError("field dump: value count does not match the mesh");
  Field f(mesh, std::move(v));
  f.require_finite("loaded field");
  return f;
}

void dump_field_file(const Field& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  dump_field(f, os);
  if (!os) throw ConfigError("write failed for '" + path + "'");
}

Field load_field_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open '" + path + "'");
  return load_field(is);
}

}  // namespace critflow
