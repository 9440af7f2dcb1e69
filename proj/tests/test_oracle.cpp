#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "kwz/errors.hpp"
#include "kwz/immersion.hpp"
#include "kwz/oracle.hpp"
#include "kwz/rng.hpp"
#include "kwz/surface_graph.hpp"
#include "kwz/weights.hpp"
#include "helpers.hpp"

using namespace kwz;
using doctest::Approx;

namespace {

Graph complete4() {
  Graph g;
  g.vertex_count = 4;
  g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return g;
}

Graph dual_skeleton(const MeshData& m) {
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     m.coords);
  return DualGraph::build(im.triangulation()).skeleton();
}

std::vector<Cx> random_weights(size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Cx> x(n);
  for (Cx& v : x) v = Cx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return x;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("K4 even subgraphs are the empty set, four triangles, three quads") {
  Graph g = complete4();
  auto subs = enumerate_even_subgraphs(g);
  REQUIRE(subs.size() == 8);
  std::vector<size_t> sizes;
  for (const auto& s : subs) sizes.push_back(s.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{0, 3, 3, 3, 3, 4, 4, 4});
  // each subset is even-degree at every vertex
  for (const auto& s : subs) {
    std::array<int, 4> deg{0, 0, 0, 0};
    for (int e : s) {
      deg[g.edges[e][0]]++;
      deg[g.edges[e][1]]++;
    }
    for (int d : deg) CHECK(d % 2 == 0);
    CHECK(std::is_sorted(s.begin(), s.end()));
  }
}

TEST_CASE("K4 loop polynomial matches 1 + 4y^3 + 3y^4 at a uniform weight") {
  Graph g = complete4();
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const Cx y(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const Cx z = partition_function(g, std::vector<Cx>(6, y));
    const Cx closed = 1.0 + 4.0 * y * y * y + 3.0 * y * y * y * y;
    CHECK(std::abs(z - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
  }
  // both geometric tetrahedron weights annihilate the polynomial
  const Cx y0 = kwz_test::tetra_weight();
  CHECK(std::abs(partition_function(g, std::vector<Cx>(6, y0))) <= 1e-14);
  CHECK(std::abs(partition_function(g, std::vector<Cx>(6, std::conj(y0)))) <= 1e-14);
}

TEST_CASE("exhaustive walk agrees with an independent brute-force sum") {
  Graph k4 = complete4();
  auto xs = random_weights(k4.edges.size(), 3);
  CHECK(std::abs(partition_function(k4, xs) -
                 kwz_test::brute_force_loop_polynomial(k4, xs)) <= 1e-12);

  // cube graph = dual skeleton of the octahedron (8 vertices, 12 edges)
  Graph cube = dual_skeleton(kwz_test::octahedron());
  REQUIRE(cube.vertex_count == 8);
  REQUIRE(cube.edges.size() == 12);
  auto xc = random_weights(cube.edges.size(), 4);
  CHECK(std::abs(partition_function(cube, xc) -
                 kwz_test::brute_force_loop_polynomial(cube, xc)) <= 1e-12);

  // a generic triangulated-sphere dual (12 vertices, 18 edges, cycle dim 7)
  Graph rc = dual_skeleton(generate(MeshKind::RandomConvex, 8, 12));
  REQUIRE(rc.edges.size() == 18);
  auto xr = random_weights(rc.edges.size(), 5);
  CHECK(std::abs(partition_function(rc, xr) -
                 kwz_test::brute_force_loop_polynomial(rc, xr)) <= 1e-12);
}

TEST_CASE("value is bitwise independent of the thread count") {
  // cycle dimension 16 engages the parallel path
  Graph g = dual_skeleton(generate(MeshKind::RandomConvex, 17, 3));
  REQUIRE(g.edges.size() - g.vertex_count + 1 == 16);
  auto xs = random_weights(g.edges.size(), 6);
  const Cx z1 = partition_function(g, xs, kMaxCycleDim, 1);
  const Cx z2 = partition_function(g, xs, kMaxCycleDim, 2);
  const Cx z4 = partition_function(g, xs, kMaxCycleDim, 4);
  const Cx z7 = partition_function(g, xs, kMaxCycleDim, 7);
  CHECK(z1 == z2);
  CHECK(z1 == z4);
  CHECK(z1 == z7);
}

TEST_CASE("cycle-space cap is enforced") {
  Graph g = complete4();  // cycle dimension 3
  CHECK_THROWS_AS(partition_function(g, std::vector<Cx>(6, Cx(0.5, 0)), 2), Error);
  try {
    partition_function(g, std::vector<Cx>(6, Cx(0.5, 0)), 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
  CHECK_THROWS_AS(enumerate_even_subgraphs(g, 2), Error);
  // mismatched weight vector is rejected up front
  CHECK_THROWS_AS(partition_function(g, std::vector<Cx>(5, Cx(0.5, 0))), Error);
}

TEST_CASE("thread-count resolution order: request, env, hardware") {
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(1) == 1);
  setenv("KWZ_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  CHECK(resolve_threads(5) == 5);  // explicit request wins over env
  setenv("KWZ_THREADS", "junk", 1);
  CHECK(resolve_threads(0) >= 1);  // unparsable env falls through
  unsetenv("KWZ_THREADS");
  CHECK(resolve_threads(0) >= 1);
}

}  // TEST_SUITE
