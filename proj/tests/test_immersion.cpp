#include <cmath>

#include <Eigen/Geometry>
#include <doctest.h>

#include "kwz/immersion.hpp"
#include "helpers.hpp"

using namespace kwz;
using doctest::Approx;

TEST_SUITE("immersion") {

TEST_CASE("face point is the circumcenter for acute triangles") {
  const Vec3 a(0, 0, 0), b(4, 0, 0), c(2, 3, 0);
  FacePointBary fb = face_point_barycentric(a, b, c);
  CHECK(fb.acute);
  const Vec3 p = face_point(a, b, c);
  CHECK(p.x() == Approx(2.0).epsilon(1e-13));
  CHECK(p.y() == Approx(5.0 / 6.0).epsilon(1e-13));
  CHECK(p.z() == Approx(0.0).epsilon(1e-13));
  // equidistant from all three corners
  const double r = (p - a).norm();
  CHECK((p - b).norm() == Approx(r).epsilon(1e-13));
  CHECK((p - c).norm() == Approx(r).epsilon(1e-13));
  // barycentric combination reproduces the point
  const Vec3 q = fb.lambda[0] * a + fb.lambda[1] * b + fb.lambda[2] * c;
  CHECK((q - p).norm() == 0.0);
}

TEST_CASE("face point is the incenter for non-acute triangles") {
  const Vec3 a(0, 0, 0), b(4, 0, 0), c(2, 0.5, 0);
  FacePointBary fb = face_point_barycentric(a, b, c);
  CHECK(!fb.acute);
  const Vec3 p = face_point(a, b, c);
  CHECK(p.x() == Approx(2.0).epsilon(1e-13));
  CHECK(p.y() == Approx(0.24621125123532106).epsilon(1e-13));
  // incenter is equidistant from the three side lines; check against the
  // inradius r = area / semiperimeter
  const double area = 0.5 * ((b - a).cross(c - a)).norm();
  const double s = 0.5 * ((b - a).norm() + (c - b).norm() + (a - c).norm());
  CHECK(p.y() == Approx(area / s).epsilon(1e-13));  // distance to side ab
}

TEST_CASE("face angles") {
  // equilateral
  CHECK(face_angle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3) / 2, 0)) ==
        Approx(M_PI / 3).epsilon(1e-14));
  // right angle at the apex
  CHECK(face_angle(Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(0, 5, 0)) ==
        Approx(M_PI / 2).epsilon(1e-14));
}

TEST_CASE("regular tetrahedron angles are all equal and frozen") {
  MeshData m = generate(MeshKind::Tetrahedron);
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     m.coords);
  DualGraph dual = DualGraph::build(im.triangulation());
  EdgeAngles ang = edge_angles(im, dual);
  for (int k = 0; k < dual.edge_count(); ++k) {
    CHECK(ang.theta[k] == Approx(kwz_test::tetra_theta()).epsilon(1e-14));
    CHECK(ang.phi_u[k] == Approx(M_PI / 3).epsilon(1e-14));
    CHECK(ang.phi_up[k] == Approx(M_PI / 3).epsilon(1e-14));
  }
  // the dihedral phase is -(pi - arccos(1/3))
  CHECK(kwz_test::tetra_theta() == Approx(-1.9106332362490186).epsilon(1e-15));
}

TEST_CASE("flipping the dihedral sign conjugates the phase") {
  MeshData m = generate(MeshKind::Tetrahedron);
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     m.coords);
  DualGraph dual = DualGraph::build(im.triangulation());
  EdgeAngles plus = edge_angles(im, dual, +1.0);
  EdgeAngles minus = edge_angles(im, dual, -1.0);
  for (int k = 0; k < dual.edge_count(); ++k) {
    CHECK(minus.theta[k] == Approx(-plus.theta[k]).epsilon(1e-14));
    CHECK(minus.phi_u[k] == plus.phi_u[k]);
  }
}

TEST_CASE("stored normals point inward under the default sign") {
  MeshData m = generate(MeshKind::Tetrahedron);
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     m.coords);
  CHECK(im.normal_sign() == kDefaultNormalSign);
  for (int u = 0; u < im.triangulation().face_count(); ++u) {
    const auto& f = im.triangulation().faces()[u];
    // the regular tetrahedron is centered at the origin, so the face centroid
    // direction is outward
    const Vec3 centroid = (im.coord(f[0]) + im.coord(f[1]) + im.coord(f[2])) / 3.0;
    CHECK(im.normal(u).dot(centroid) < 0);
    CHECK(im.normal(u).norm() == Approx(1.0).epsilon(1e-14));
    CHECK(im.face_acute(u));
  }
}

TEST_CASE("square pyramid base faces are flat and non-acute") {
  MeshData m = kwz_test::square_pyramid();
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     m.coords);
  DualGraph dual = DualGraph::build(im.triangulation());
  EdgeAngles ang = edge_angles(im, dual);
  bool found_flat = false;
  for (int k = 0; k < dual.edge_count(); ++k) {
    const DualEdge& e = dual.edges()[k];
    if (e.u < 2 && e.up < 2) {  // the two base triangles
      found_flat = true;
      CHECK(ang.theta[k] == 0.0);
      CHECK(ang.phi_u[k] == Approx(M_PI / 2).epsilon(1e-14));
      CHECK(ang.phi_up[k] == Approx(M_PI / 2).epsilon(1e-14));
    }
  }
  CHECK(found_flat);
  CHECK(!im.face_acute(0));  // right triangle: face point is the incenter
  CHECK(!im.face_acute(1));
}

TEST_CASE("generators: counts, determinism, seed sensitivity") {
  MeshData t = generate(MeshKind::Tetrahedron);
  CHECK(t.vertex_count == 4);
  CHECK(t.faces.size() == 4);
  MeshData b = generate(MeshKind::Bipyramid);
  CHECK(b.vertex_count == 5);
  CHECK(b.faces.size() == 6);

  MeshData r1 = generate(MeshKind::RandomConvex, 10, 7);
  MeshData r2 = generate(MeshKind::RandomConvex, 10, 7);
  REQUIRE(r1.coords.size() == r2.coords.size());
  for (size_t i = 0; i < r1.coords.size(); ++i)
    CHECK(r1.coords[i] == r2.coords[i]);  // bitwise determinism
  CHECK(r1.faces == r2.faces);

  MeshData r3 = generate(MeshKind::RandomConvex, 10, 8);
  bool differs = r3.faces != r1.faces;
  for (size_t i = 0; i < r1.coords.size() && !differs; ++i)
    differs = r1.coords[i] != r3.coords[i];
  CHECK(differs);

  // generated meshes validate
  for (const MeshData* m : {&r1, &r3}) {
    Immersion im = Immersion::validate(
        Triangulation::build(m->vertex_count, m->faces), m->coords);
    CHECK(im.triangulation().vertex_count() == 10);
  }
  MeshData p = generate(MeshKind::Perturbed, 12, 3, 0.2);
  Immersion imp = Immersion::validate(Triangulation::build(p.vertex_count, p.faces),
                                      p.coords);
  CHECK(imp.triangulation().vertex_count() == 12);
}

TEST_CASE("validation errors") {
  MeshData m = generate(MeshKind::Tetrahedron);
  m.coords[3] = 0.5 * (m.coords[0] + m.coords[1]);  // collinear face
  CHECK_THROWS_AS(
      Immersion::validate(Triangulation::build(m.vertex_count, m.faces), m.coords),
      Error);
  try {
    Immersion::validate(Triangulation::build(m.vertex_count, m.faces), m.coords);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFace);
  }
  CHECK_THROWS_AS(generate(MeshKind::RandomConvex, 3, 1), Error);
}

}  // TEST_SUITE
