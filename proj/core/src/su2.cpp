#include "kwz/su2.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace kwz {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

// ---------------------------------------------------------------------------
// SU2
// ---------------------------------------------------------------------------

SU2 SU2::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  const Cx a = m(0, 0), b = m(0, 1);
  const double shape = std::max(std::abs(m(1, 0) + std::conj(b)), std::abs(m(1, 1) - std::conj(a)));
  const double row = std::abs(std::sqrt(std::norm(a) + std::norm(b)) - 1.0);
  if (shape > tol || row > tol)
    fail(ErrorCode::NotUnitary, "matrix deviates from SU(2) form by " +
                                    std::to_string(std::max(shape, row)));
  return SU2(a, b);
}

Eigen::Matrix2cd SU2::matrix() const {
  Eigen::Matrix2cd m;
  m << a_, b_, -std::conj(b_), std::conj(a_);
  return m;
}

SU2 SU2::operator*(const SU2& rhs) const {
  return SU2(a_ * rhs.a_ - b_ * std::conj(rhs.b_), a_ * rhs.b_ + b_ * std::conj(rhs.a_));
}

double SU2::deviation_from_identity() const {
  return std::max(std::abs(a_ - Cx(1, 0)), std::abs(b_));
}

double SU2::distance(const SU2& rhs) const {
  return std::max(std::abs(a_ - rhs.a_), std::abs(b_ - rhs.b_));
}

SU2 su2_z(double angle) { return SU2(std::polar(1.0, angle / 2), Cx(0, 0)); }

SU2 su2_x(double angle) {
  return SU2(Cx(std::cos(angle / 2), 0), Cx(std::sin(angle / 2), 0));
}

SU2 upsilon(double alpha, double beta, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Cx a = std::polar(c, -alpha / 2);
  const Cx b = Cx(0, -1) * std::polar(s, alpha / 2 + beta);
  return SU2(a, b);
}

// ---------------------------------------------------------------------------
// Euler angles
// ---------------------------------------------------------------------------

namespace {
double wrap_pi(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  if (a > kPi) a -= 2 * kPi;
  return a;
}
}  // namespace

EulerAngles euler_decompose(const SU2& u) {
  // With su2_z(g) = diag(e^{ig/2}, e^{-ig/2}) and the real su2_x,
  // z(psi) x(theta) z(phi) has top row
  //   a = e^{i(psi+phi)/2} cos(theta/2),  b = e^{i(psi-phi)/2} sin(theta/2).
  const Cx a = u.a(), b = u.b();
  EulerAngles e;
  e.theta = 2 * std::atan2(std::abs(b), std::abs(a));
  const double c = std::cos(e.theta / 2), s = std::sin(e.theta / 2);
  if (s < 1e-12) {
    e.phi = 0;
    e.psi = wrap_pi(2 * std::arg(a));
  } else if (c < 1e-12) {
    e.phi = 0;
    e.psi = wrap_pi(2 * std::arg(b));
  } else {
    e.psi = wrap_pi(std::arg(a) + std::arg(b));
    e.phi = wrap_pi(std::arg(a) - std::arg(b));
  }
  return e;
}

SU2 euler_compose(const EulerAngles& e) {
  return su2_z(e.psi) * su2_x(e.theta) * su2_z(e.phi);
}

// ---------------------------------------------------------------------------
// quaternions
// ---------------------------------------------------------------------------

double Quaternion::norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

Quaternion to_quaternion(const SU2& u) {
  return {u.a().real(), u.a().imag(), u.b().real(), u.b().imag()};
}

SU2 from_quaternion(const Quaternion& q) {
  if (std::abs(q.norm() - 1.0) > 1e-9)
    fail(ErrorCode::NonUnitQuaternion, "quaternion norm " + std::to_string(q.norm()));
  return SU2(Cx(q.a, q.b), Cx(q.c, q.d));
}

Quaternion quat_multiply(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

Vec3 rotate(const Quaternion& q, const Vec3& v) {
  if (std::abs(q.norm() - 1.0) > 1e-9)
    fail(ErrorCode::NonUnitQuaternion, "quaternion norm " + std::to_string(q.norm()));
  // Vector components ride on the imaginary units as (z, y, x).
  const Quaternion p{0, v.z(), v.y(), v.x()};
  const Quaternion conj{q.a, -q.b, -q.c, -q.d};
  const Quaternion r = quat_multiply(quat_multiply(q, p), conj);
  return {r.d, r.c, r.b};
}

Eigen::Matrix3d rotation_matrix(const Quaternion& q) {
  Eigen::Matrix3d m;
  m.col(0) = rotate(q, Vec3::UnitX());
  m.col(1) = rotate(q, Vec3::UnitY());
  m.col(2) = rotate(q, Vec3::UnitZ());
  return m;
}

// ---------------------------------------------------------------------------
// connection
// ---------------------------------------------------------------------------

Connection build_connection(const EdgeAngles& angles, const TurningData& td) {
  Connection conn;
  const int directed = static_cast<int>(td.beta.size());
  conn.ups.reserve(directed);
  for (int d = 0; d < directed; ++d)
    conn.ups.push_back(upsilon(td.alpha[d], td.beta[d], angles.theta[d >> 1]));
  return conn;
}

SU2 holonomy(const Connection& conn, const FaceLoop& loop) {
  SU2 h(Cx(1, 0), Cx(0, 0));
  for (int d : loop.steps) h = h * conn.ups[d];
  return h;
}

double flatness_check(const Connection& conn, const std::vector<FaceLoop>& loops) {
  double worst = 0;
  for (const FaceLoop& loop : loops)
    worst = std::max(worst, holonomy(conn, loop).deviation_from_identity());
  return worst;
}

// ---------------------------------------------------------------------------
// frames
// ---------------------------------------------------------------------------

Frames frames(const Immersion& im, const PlanarDecomposition& dec) {
  Frames fr;
  const auto& tri = im.triangulation();
  fr.frame.reserve(tri.face_count());
  for (int u = 0; u < tri.face_count(); ++u) {
    const auto& [i, j, k] = tri.faces()[u];
    const Cx ab = dec.corners[u][1] - dec.corners[u][0];
    const Cx ac = dec.corners[u][2] - dec.corners[u][0];
    Eigen::Matrix3d plane, space;
    plane.col(0) = Vec3(ab.real(), ab.imag(), 0);
    plane.col(1) = Vec3(ac.real(), ac.imag(), 0);
    plane.col(2) = Vec3(0, 0, 1);
    const Vec3 q0 = im.coord(i);
    space.col(0) = im.coord(j) - q0;
    space.col(1) = im.coord(k) - q0;
    space.col(2) = im.normal(u);
    const Eigen::Matrix3d lin = space * plane.inverse();
    const double ortho = (lin.transpose() * lin - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (ortho > 1e-9 || lin.determinant() < 0)
      fail(ErrorCode::IsometryResidual,
           "face " + std::to_string(u) + " placement is not a proper isometry (deviation " +
               std::to_string(ortho) + ")");
    Eigen::Matrix3d f;
    f.col(0) = lin * Vec3(1, 0, 0);   // image of the +x chart direction
    f.col(2) = -im.normal(u);         // z axis: the outward normal
    f.col(1) = f.col(2).cross(f.col(0));
    fr.frame.push_back(f);
  }
  return fr;
}

double frame_transport_residual(const Frames& fr, const Connection& conn, const DualGraph& dual) {
  double worst = 0;
  for (int d = 0; d < 2 * dual.edge_count(); ++d) {
    const auto dir = dual.dir(d);
    const Eigen::Matrix3d rot = rotation_matrix(to_quaternion(conn.ups[d]));
    const Eigen::Matrix3d predicted = fr.frame[dir.tail] * rot;
    worst = std::max(worst, (predicted - fr.frame[dir.head]).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// spinor propagation
// ---------------------------------------------------------------------------

SpinorField propagate_spinors(const Connection& conn, const DualGraph& dual,
                              const Eigen::RowVector2cd& xi0, int root, double tol) {
  if (xi0.norm() < 1e-12) fail(ErrorCode::ZeroSpinor, "seed spinor is numerically zero");
  const int n = dual.vertex_count();
  SpinorField field;
  field.xi.assign(n, Eigen::RowVector2cd::Zero());
  std::vector<char> seen(n, 0);
  field.xi[root] = xi0;
  seen[root] = 1;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int slot = 0; slot < 3; ++slot) {
      const int k = dual.edges_at(u)[slot];
      const int d = DualGraph::directed_id(k, dual.edges()[k].u == u);
      const int up = dual.dir(d).head;
      const Eigen::RowVector2cd propagated = field.xi[u] * conn.ups[d].matrix();
      if (!seen[up]) {
        seen[up] = 1;
        field.xi[up] = propagated;
        q.push(up);
      } else {
        const double dev = (propagated - field.xi[up]).norm();
        if (dev > tol * std::max(1.0, field.xi[up].norm()))
          fail(ErrorCode::InconsistentPropagation,
               "spinor mismatch " + std::to_string(dev) + " across dual edge " +
                   std::to_string(k));
      }
    }
  }
  return field;
}

// ---------------------------------------------------------------------------
// eigenvector assembly
// ---------------------------------------------------------------------------

Eigen::VectorXcd assemble_eigenvector(const SpinorField& field, const TurningData& td,
                                      const EdgeAngles& angles, const DualGraph& dual) {
  const int m = dual.edge_count();
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(6 * m);
  for (int d = 0; d < 2 * m; ++d) {
    const int k = d >> 1;
    const bool fwd = (d & 1) == 0;
    const int e_out = fwd ? 6 * k + 0 : 6 * k + 5;
    const int e_in = fwd ? 6 * k + 1 : 6 * k + 4;
    const int e_mid = fwd ? 6 * k + 2 : 6 * k + 3;
    const int u = dual.dir(d).tail;
    const Cx plus = field.xi[u][0] * td.rho[d];
    const Cx minus = field.xi[u][1] * td.rho[d] * std::polar(1.0, -td.beta[d]);
    phi[e_out] = plus + minus;
    phi[e_in] = plus - minus;
    phi[e_mid] =
        phi[e_out] * std::polar(1.0, -angles.theta[k] / 4 - td.turn_exit[d] / 2);
  }
  return phi;
}

double eigenvector_residual(const Eigen::MatrixXcd& lambda, const Eigen::VectorXcd& phi) {
  const double scale = phi.norm();
  if (scale == 0) fail(ErrorCode::ZeroSpinor, "assembled eigenvector is zero");
  return (lambda * phi - phi).norm() / scale;
}

}  // namespace kwz
