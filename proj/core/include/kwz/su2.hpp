#pragma once

#include <Eigen/Dense>

#include "kwz/unfolding.hpp"

namespace kwz {

// Unit-determinant 2x2 complex matrix [[a, b], [-conj(b), conj(a)]] with
// |a|^2 + |b|^2 = 1, stored by its top row.
class SU2 {
 public:
  SU2() : a_(1.0, 0.0), b_(0.0, 0.0) {}
  SU2(Cx a, Cx b) : a_(a), b_(b) {}

  // Validates shape, unitarity and determinant to tol (NotUnitary).
  static SU2 from_matrix(const Eigen::Matrix2cd& m, double tol = 1e-9);

  Cx a() const { return a_; }
  Cx b() const { return b_; }
  Eigen::Matrix2cd matrix() const;
  SU2 inverse() const { return SU2(std::conj(a_), -b_); }
  SU2 operator*(const SU2& rhs) const;

  // max-norm distance from the identity matrix.
  double deviation_from_identity() const;
  // max-norm distance between the two matrices.
  double distance(const SU2& rhs) const;

 private:
  Cx a_, b_;
};

// Elementary factors: su2_z(g) = diag(e^{ig/2}, e^{-ig/2}),
// su2_x(g) = [[cos(g/2), sin(g/2)], [-sin(g/2), cos(g/2)]].
SU2 su2_z(double angle);
SU2 su2_x(double angle);

// Connection matrix of a directed dual edge from its unfolding data:
//   [[ e^{-i a/2} cos(t/2),            -i e^{i a/2 + i beta} sin(t/2) ],
//    [ -i e^{-i a/2 - i beta} sin(t/2), e^{i a/2} cos(t/2)            ]]
// with a = alpha, t = theta, beta the tail-side beta.
SU2 upsilon(double alpha, double beta, double theta);

// Euler-like decomposition m = su2_z(psi) * su2_x(theta) * su2_z(phi) with
// theta in [0, pi]; at the gimbal edges (sin or cos of theta/2 below 1e-12)
// phi is set to 0. psi and phi are reported in (-pi, pi]; composing them
// reproduces m up to the overall sign (the two SU(2) lifts of one rotation
// cannot always both keep psi and phi in that range).
struct EulerAngles {
  double psi = 0.0, theta = 0.0, phi = 0.0;
};
EulerAngles euler_decompose(const SU2& m);
SU2 euler_compose(const EulerAngles& e);

// Quaternion q = a + b i + c j + d k. SU2 [[a+bi, c+di], [-c+di, a-bi]]
// corresponds to exactly these four reals; pure quaternions map to R^3 by
// b i + c j + d k <-> (d, c, b), i.e. i is the z axis and k the x axis.
struct Quaternion {
  double a = 1.0, b = 0.0, c = 0.0, d = 0.0;
  double norm() const;
};

Quaternion to_quaternion(const SU2& m);
SU2 from_quaternion(const Quaternion& q);  // NonUnitQuaternion beyond 1e-9
Quaternion quat_multiply(const Quaternion& p, const Quaternion& q);

// Conjugation action v -> q v q^{-1} under the axis map above. For
// q = cos(g/2) + sin(g/2) i this takes e_x to (cos g, -sin g, 0): a
// right-handed rotation by -g about +z (the angle doubles, the sign is part
// of the frozen convention).
Vec3 rotate(const Quaternion& q, const Vec3& v);
Eigen::Matrix3d rotation_matrix(const Quaternion& q);

// Connection over directed dual edges; ups[reverse(d)] = ups[d]^{-1} holds
// numerically on verified decompositions.
struct Connection {
  std::vector<SU2> ups;
};
Connection build_connection(const EdgeAngles& angles, const TurningData& turns);

// Ordered product of the connection along a face loop (path order).
SU2 holonomy(const Connection& conn, const FaceLoop& loop);
// Max deviation of any loop holonomy from the identity.
double flatness_check(const Connection& conn, const std::vector<FaceLoop>& loops);

// Tangent frames from the unfolding isometries: columns r_u, m_u x r_u, m_u,
// where r_u is the image of the +x chart direction under the isometry that
// carries face u's drawn triangle onto its space triangle (IsometryResidual
// if that map fails to be a rotation to 1e-9) and m_u is the outward normal.
// The connection transports them: F_{u'} = F_u * R(q_upsilon);
// frame_transport_residual reports the worst max-norm mismatch over all
// directed dual edges.
struct Frames {
  std::vector<Eigen::Matrix3d> frame;
};
Frames frames(const Immersion& im, const PlanarDecomposition& dec);
double frame_transport_residual(const Frames& fr, const Connection& conn,
                                const DualGraph& dual);

// Row spinors xi_u propagated from xi_{root} by xi_{u'} = xi_u * ups[d]
// over a BFS tree (rotation-system neighbor order). ZeroSpinor for a zero
// start; InconsistentPropagation if a non-tree edge disagrees beyond tol.
struct SpinorField {
  std::vector<Eigen::RowVector2cd> xi;
};
SpinorField propagate_spinors(const Connection& conn, const DualGraph& dual,
                              const Eigen::RowVector2cd& xi0, int root = 0,
                              double tol = 1e-6);

// Kernel vector of Id - Lambda over directed dagger edges: face-adjacent
// values from the spinors and the local (rho, rho e^{-i beta}) basis,
// subdivision-edge values from the single-successor rows of Lambda.
Eigen::VectorXcd assemble_eigenvector(const SpinorField& xi, const TurningData& turns,
                                      const EdgeAngles& angles, const DualGraph& dual);

// ||Lambda phi - phi||_2 / ||phi||_2.
double eigenvector_residual(const Eigen::MatrixXcd& lambda,
                            const Eigen::VectorXcd& phi);

}  // namespace kwz
