#include "kwz/immersion.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <string>

#include "kwz/rng.hpp"

namespace kwz {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

// ---------------------------------------------------------------------------
// angles
// ---------------------------------------------------------------------------

double face_angle(const Vec3& apex, const Vec3& p, const Vec3& q) {
  const Vec3 a = p - apex;
  const Vec3 b = q - apex;
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double dihedral_angle(const Vec3& n_u, const Vec3& n_up, const Vec3& edge, double sign) {
  const Vec3 e = edge.normalized();
  return sign * std::atan2(e.dot(n_u.cross(n_up)), n_u.dot(n_up));
}

// ---------------------------------------------------------------------------
// face points
// ---------------------------------------------------------------------------

FacePointBary face_point_barycentric(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = (c - b).norm();  // side opposite a
  const double lb = (a - c).norm();
  const double lc = (b - a).norm();
  const double max_angle = std::max({face_angle(a, b, c), face_angle(b, c, a), face_angle(c, a, b)});

  FacePointBary out;
  out.acute = max_angle < kPi / 2 - 1e-12;
  if (out.acute) {
    const double a2 = la * la, b2 = lb * lb, c2 = lc * lc;
    out.lambda = {a2 * (b2 + c2 - a2), b2 * (c2 + a2 - b2), c2 * (a2 + b2 - c2)};
  } else {
    out.lambda = {la, lb, lc};
  }
  const double sum = out.lambda[0] + out.lambda[1] + out.lambda[2];
  for (double& l : out.lambda) l /= sum;
  return out;
}

Vec3 face_point(const Vec3& a, const Vec3& b, const Vec3& c) {
  const FacePointBary bc = face_point_barycentric(a, b, c);
  return bc.lambda[0] * a + bc.lambda[1] * b + bc.lambda[2] * c;
}

// ---------------------------------------------------------------------------
// Immersion
// ---------------------------------------------------------------------------

Immersion Immersion::validate(Triangulation tri, std::vector<Vec3> coords, double normal_sign) {
  if (static_cast<int>(coords.size()) != tri.vertex_count())
    fail(ErrorCode::InvalidMesh, "coordinate count " + std::to_string(coords.size()) +
                                     " does not match vertex count " +
                                     std::to_string(tri.vertex_count()));
  if (normal_sign != 1.0 && normal_sign != -1.0)
    fail(ErrorCode::InvalidMesh, "normal_sign must be +1 or -1");

  Immersion im(std::move(tri), std::move(coords), normal_sign);
  im.normals_.reserve(im.tri_.face_count());
  im.face_points_.reserve(im.tri_.face_count());
  im.acute_.reserve(im.tri_.face_count());

  for (int f = 0; f < im.tri_.face_count(); ++f) {
    const auto& [i, j, k] = im.tri_.faces()[f];
    const Vec3& p = im.coords_[i];
    const Vec3& q = im.coords_[j];
    const Vec3& r = im.coords_[k];
    const Vec3 cr = (q - p).cross(r - p);
    const double twice_area = cr.norm();
    const double longest = std::max({(q - p).norm(), (r - q).norm(), (p - r).norm()});
    // Shortest altitude = 2A / longest side; reject slivers and zero sides.
    if (!(twice_area > 1e-9 * longest * longest))
      fail(ErrorCode::DegenerateFace,
           "face " + std::to_string(f) + " is degenerate (near-zero altitude)");
    im.normals_.push_back(normal_sign * cr / twice_area);
    const FacePointBary bc = face_point_barycentric(p, q, r);
    im.face_points_.push_back(bc.lambda[0] * p + bc.lambda[1] * q + bc.lambda[2] * r);
    im.acute_.push_back(bc.acute);
  }
  return im;
}

EdgeAngles edge_angles(const Immersion& im, const DualGraph& dual, double dihedral_sign) {
  EdgeAngles out;
  const int m = dual.edge_count();
  out.theta.resize(m);
  out.phi_u.resize(m);
  out.phi_up.resize(m);
  for (int k = 0; k < m; ++k) {
    const DualEdge& e = dual.edges()[k];
    const Vec3& x1 = im.coord(e.v1);
    const Vec3& x2 = im.coord(e.v2);
    out.theta[k] = dihedral_angle(im.normal(e.u), im.normal(e.up), x1 - x2, dihedral_sign);
    out.phi_u[k] = face_angle(im.coord(e.v3), x1, x2);
    out.phi_up[k] = face_angle(im.coord(e.v3p), x1, x2);
    for (double phi : {out.phi_u[k], out.phi_up[k]})
      if (!(phi > 0.0 && phi < kPi))
        fail(ErrorCode::PhiOutOfRange,
             "opposite angle " + std::to_string(phi) + " at edge " + std::to_string(k) +
                 " is outside (0, pi)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

namespace {

MeshData make_tetrahedron() {
  MeshData mesh;
  mesh.vertex_count = 4;
  mesh.coords = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)};
  mesh.faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  return mesh;
}

MeshData make_bipyramid() {
  MeshData mesh;
  mesh.vertex_count = 5;
  mesh.coords.reserve(5);
  for (int k = 0; k < 3; ++k)
    mesh.coords.emplace_back(std::cos(2 * kPi * k / 3), std::sin(2 * kPi * k / 3), 0.0);
  mesh.coords.emplace_back(0, 0, 1);   // top apex, id 3
  mesh.coords.emplace_back(0, 0, -1);  // bottom apex, id 4
  for (int k = 0; k < 3; ++k) mesh.faces.push_back({3, k, (k + 1) % 3});
  for (int k = 0; k < 3; ++k) mesh.faces.push_back({4, (k + 1) % 3, k});
  return mesh;
}

Vec3 random_unit(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double ang = rng.uniform(0.0, 2 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(ang), r * std::sin(ang), z};
}

// Sample n well-separated unit vectors.
std::vector<Vec3> sample_sphere(int n, Rng& rng) {
  const double min_dot = std::cos(0.15);
  std::vector<Vec3> pts;
  pts.reserve(n);
  while (static_cast<int>(pts.size()) < n) {
    Vec3 cand = random_unit(rng);
    bool ok = true;
    for (int attempt = 0; attempt < 64; ++attempt) {
      ok = true;
      for (const Vec3& p : pts)
        if (p.dot(cand) > min_dot) {
          ok = false;
          break;
        }
      if (ok) break;
      cand = random_unit(rng);
    }
    pts.push_back(cand);  // after 64 attempts, accept and let validation decide
  }
  return pts;
}

// Brute-force convex hull of points in strictly convex position; returns
// facets ordered counter-clockwise seen from outside, or empty on a
// near-coplanar quadruple.
std::vector<std::array<int, 3>> hull_facets(const std::vector<Vec3>& pts) {
  const int n = static_cast<int>(pts.size());
  const double tol = 1e-9;
  std::vector<std::array<int, 3>> facets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vec3 nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (nrm.norm() < tol) return {};
        int pos = 0, neg = 0;
        bool ambiguous = false;
        for (int m = 0; m < n; ++m) {
          if (m == i || m == j || m == k) continue;
          const double s = nrm.dot(pts[m] - pts[i]);
          if (s > tol)
            pos++;
          else if (s < -tol)
            neg++;
          else
            ambiguous = true;
        }
        if (pos > 0 && neg > 0) continue;
        if (ambiguous) return {};
        if (neg == 0)
          facets.push_back({i, k, j});  // normal pointed inward; flip
        else
          facets.push_back({i, j, k});
      }
  return facets;
}

MeshData make_random_convex(int n, Rng& rng) {
  if (n < 4) fail(ErrorCode::InvalidMesh, "random convex mesh needs at least 4 vertices");
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::vector<Vec3> pts = sample_sphere(n, rng);
    const auto facets = hull_facets(pts);
    if (facets.empty()) continue;
    if (static_cast<int>(facets.size()) != 2 * n - 4) continue;
    MeshData mesh;
    mesh.vertex_count = n;
    mesh.coords = pts;
    mesh.faces = facets;
    try {
      Immersion::validate(Triangulation::build(n, facets), pts);
    } catch (const Error&) {
      continue;
    }
    return mesh;
  }
  fail(ErrorCode::InvalidMesh, "could not sample a convex mesh in general position");
}

MeshData make_perturbed(int n, Rng& rng, double amplitude) {
  if (!(amplitude >= 0.0 && amplitude < 1.0))
    fail(ErrorCode::InvalidMesh, "perturbation amplitude must lie in [0, 1)");
  MeshData mesh = make_random_convex(n, rng);
  for (int attempt = 0; attempt < 64; ++attempt) {
    MeshData trial = mesh;
    for (Vec3& p : trial.coords) p *= 1.0 + amplitude * rng.uniform(-1.0, 1.0);
    try {
      Immersion::validate(Triangulation::build(trial.vertex_count, trial.faces), trial.coords);
    } catch (const Error&) {
      continue;
    }
    return trial;
  }
  fail(ErrorCode::InvalidMesh, "could not perturb the mesh without degenerating a face");
}

}  // namespace

MeshData generate(MeshKind kind, int n, std::uint64_t seed, double amplitude) {
  switch (kind) {
    case MeshKind::Tetrahedron:
      return make_tetrahedron();
    case MeshKind::Bipyramid:
      return make_bipyramid();
    case MeshKind::RandomConvex: {
      Rng rng(seed);
      return make_random_convex(n, rng);
    }
    case MeshKind::Perturbed: {
      Rng rng(seed);
      return make_perturbed(n, rng, amplitude);
    }
  }
  fail(ErrorCode::InvalidMesh, "unknown mesh kind");
}

}  // namespace kwz
