#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <vector>

#include "kwz/rng.hpp"
#include "kwz/surface_graph.hpp"

namespace kwz {

using Vec3 = Eigen::Vector3d;
using Cx = std::complex<double>;

// Faces are stored counterclockwise as seen from outside (the interchange
// convention for convex meshes). The default normal_sign = -1 then makes
// every face triple wind clockwise around its own normal, which is the
// orientation all downstream angle formulas assume. Flipping the sign
// negates every dihedral angle and fixes the interior angles.
inline constexpr double kDefaultNormalSign = -1.0;

// Global sign of the dihedral angle: +1 measures the rotation from n_u to
// n_u' as right-handed about x_{v1} - x_{v2}. Fixed once by the holonomy /
// eigenvector calibration test on the regular tetrahedron and frozen; the
// loop-polynomial zero itself is invariant under the flip, the spinor
// connection is not.
inline constexpr double kDihedralSign = +1.0;

// Simple interchange mesh: vertex coordinates plus face triples.
struct MeshData {
  int vertex_count = 0;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec3> coords;
};

// Interior angle at `apex` between the rays to p and q. Range (0, pi).
double face_angle(const Vec3& apex, const Vec3& p, const Vec3& q);

// Signed dihedral angle between face normals about the directed shared edge
// e = x_{v1} - x_{v2}: sign * atan2(unit(e) . (n_u x n_up), n_u . n_up),
// in [-pi, pi]. Symmetric in the two faces (flipping e and swapping normals
// gives the same value).
double dihedral_angle(const Vec3& n_u, const Vec3& n_up, const Vec3& edge,
                      double sign = kDihedralSign);

// Barycentric coordinates of the reference point of a triangle: circumcenter
// when the triangle is acute (ties at 1e-12 rad count as non-acute), incenter
// otherwise. Both project strictly inside every side.
struct FacePointBary {
  std::array<double, 3> lambda;
  bool acute = false;
};
FacePointBary face_point_barycentric(const Vec3& a, const Vec3& b, const Vec3& c);
Vec3 face_point(const Vec3& a, const Vec3& b, const Vec3& c);

// Geometric validation of a triangulated sphere immersion. Rejects faces
// whose minimum altitude is below 1e-9 x (longest side) with DegenerateFace,
// and inconsistent basis orientations across a dual edge with
// OrientationMismatch. Caches normals and face points.
class Immersion {
 public:
  static Immersion validate(Triangulation tri, std::vector<Vec3> coords,
                            double normal_sign = kDefaultNormalSign);

  const Triangulation& triangulation() const { return tri_; }
  const std::vector<Vec3>& coords() const { return coords_; }
  const Vec3& coord(int v) const { return coords_[v]; }
  const Vec3& normal(int face) const { return normals_[face]; }
  const Vec3& face_point(int face) const { return face_points_[face]; }
  bool face_acute(int face) const { return acute_[face]; }
  double normal_sign() const { return normal_sign_; }

 private:
  Immersion(Triangulation tri, std::vector<Vec3> coords, double normal_sign)
      : tri_(std::move(tri)), coords_(std::move(coords)), normal_sign_(normal_sign) {}
  Triangulation tri_;
  std::vector<Vec3> coords_;
  std::vector<Vec3> normals_;
  std::vector<Vec3> face_points_;
  std::vector<bool> acute_;
  double normal_sign_ = kDefaultNormalSign;
};

// Per-dual-edge angle data, indexed by dual-edge id.
struct EdgeAngles {
  std::vector<double> theta;   // signed dihedral angle, [-pi, pi]
  std::vector<double> phi_u;   // interior angle opposite the shared edge in u
  std::vector<double> phi_up;  // same in up
};
EdgeAngles edge_angles(const Immersion& im, const DualGraph& dual,
                       double dihedral_sign = kDihedralSign);

// Mesh generators. All deterministic in the seed (self-contained RNG).
//   Tetrahedron   regular tetrahedron, 4 faces (n, seed, amplitude ignored)
//   Bipyramid     triangular double pyramid, 6 faces (dual graph: 3-prism)
//   RandomConvex  convex hull of n >= 4 uniform points on the unit sphere
//   Perturbed     RandomConvex plus radial noise of the given amplitude
enum class MeshKind { Tetrahedron, Bipyramid, RandomConvex, Perturbed };

MeshData generate(MeshKind kind, int n = 0, std::uint64_t seed = 0,
                  double amplitude = 0.0);

}  // namespace kwz
