#pragma once

// Shared fixtures for the test suites: reference meshes built by hand and a
// brute-force loop-polynomial evaluator that is independent of the library's
// cycle-space enumeration (it filters all 2^E edge subsets by even degree).

#include <cassert>
#include <complex>
#include <cstdint>
#include <vector>

#include "kwz/immersion.hpp"
#include "kwz/surface_graph.hpp"

namespace kwz_test {

inline kwz::Cx brute_force_loop_polynomial(const kwz::Graph& g,
                                           const std::vector<kwz::Cx>& x) {
  const int m = static_cast<int>(g.edges.size());
  assert(m <= 22 && "brute force is exponential in the edge count");
  assert(static_cast<int>(x.size()) == m);
  kwz::Cx total = 0;
  std::vector<int> deg(g.vertex_count);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::fill(deg.begin(), deg.end(), 0);
    kwz::Cx prod = 1;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) {
        deg[g.edges[e][0]]++;
        deg[g.edges[e][1]]++;
        prod *= x[e];
      }
    bool even = true;
    for (int v = 0; v < g.vertex_count && even; ++v) even = deg[v] % 2 == 0;
    if (even) total += prod;
  }
  return total;
}

// Regular octahedron, faces oriented counterclockwise seen from outside.
// Vertices: 0:+x 1:-x 2:+y 3:-y 4:+z 5:-z. Its dual graph is the cube:
// faces correspond to sign octants, adjacency to Hamming distance 1.
inline kwz::MeshData octahedron() {
  kwz::MeshData m;
  m.vertex_count = 6;
  m.coords = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  m.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
             {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return m;
}

// Square pyramid with the base split into two coplanar right triangles; the
// dual edge between the base faces has dihedral angle 0 and a real weight.
inline kwz::MeshData square_pyramid() {
  kwz::MeshData m;
  m.vertex_count = 5;
  m.coords = {{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {0, 0, 1}};
  m.faces = {{0, 3, 2}, {0, 2, 1}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return m;
}

// 3x3 grid torus: consistently oriented, every edge in two faces, connected,
// Euler characteristic 0. Exercises the sphere check.
inline std::vector<std::array<int, 3>> torus_faces() {
  std::vector<std::array<int, 3>> faces;
  auto id = [](int i, int j) { return 3 * ((i + 3) % 3) + ((j + 3) % 3); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
    }
  return faces;
}

// Signed angle value of the regular tetrahedron's dihedral phase and the
// corresponding edge weight (1 - i sqrt 2) / 3.
inline double tetra_theta() { return -(M_PI - std::acos(1.0 / 3.0)); }
inline kwz::Cx tetra_weight() { return {1.0 / 3.0, -std::sqrt(2.0) / 3.0}; }

}  // namespace kwz_test
