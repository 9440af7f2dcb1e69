#pragma once

#include <array>
#include <vector>

#include "kwz/errors.hpp"

namespace kwz {

// Generic undirected simple graph. Used by the cycle-space routines, the
// brute-force loop-polynomial oracle, and the transition-matrix self-test.
struct Graph {
  int vertex_count = 0;
  std::vector<std::array<int, 2>> edges;
};

// Fundamental cycles of a BFS spanning forest (roots at the smallest vertex
// of each component): one sorted edge-id list per non-tree edge. Their spans
// generate every even subgraph of the graph.
std::vector<std::vector<int>> cycle_space_basis(const Graph& g);

// Oriented triangulated sphere. Faces are ordered vertex triples; every
// undirected edge must appear in exactly two faces, once per direction
// (consistent global orientation). Checked on build:
//   NonManifoldEdge          an edge lies in != 2 faces, a face repeats a
//                            vertex, or two faces share more than one edge
//   InconsistentOrientation  an edge appears twice with the same direction
//   Disconnected             the face adjacency graph is not connected
//   NotSphere                V - E + F != 2
class Triangulation {
 public:
  static Triangulation build(int vertex_count, std::vector<std::array<int, 3>> faces);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  // Undirected primal edges {a, b} with a < b, lexicographically sorted.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  int vertex_degree(int v) const { return degree_[v]; }

  // Index of vertex v inside face u's triple (0..2).
  int corner_slot(int u, int v) const;

 private:
  Triangulation() = default;
  int vertex_count_ = 0;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<int> degree_;
};

// Dual edge: faces u and up share the primal edge {v1, v2}, with (v1, v2)
// ordered as it appears in face u's triple (so up's triple contains (v2, v1)).
// v3 / v3p are the opposite vertices in u and up.
struct DualEdge {
  int u, up;
  int v1, v2;
  int v3, v3p;
};

// Dual graph of the triangulation: one vertex per face, one edge per primal
// edge. Trivalent; the rotation system at u lists its dual edges in the
// clockwise order induced by the face triple (across (v1,v2), (v2,v3),
// (v3,v1)).
//
// Directed dual edges are indexed 2k (u -> up, the stored orientation of
// dual edge k) and 2k+1 (up -> u).
class DualGraph {
 public:
  static DualGraph build(const Triangulation& tri);

  int vertex_count() const { return face_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int directed_count() const { return 2 * edge_count(); }
  const std::vector<DualEdge>& edges() const { return edges_; }
  const std::array<int, 3>& edges_at(int u) const { return rotation_[u]; }
  int neighbor(int u, int slot) const;

  // View of a directed dual edge: v1, v2 are the shared primal edge as
  // ordered in the *tail* face's triple.
  struct Dir {
    int edge;
    bool forward;
    int tail, head;
    int v1, v2;
  };
  Dir dir(int directed_id) const;
  static int directed_id(int edge, bool forward) { return 2 * edge + (forward ? 0 : 1); }
  static int reverse(int directed_id) { return directed_id ^ 1; }

  // Dual 1-skeleton as a generic graph (edge ids preserved).
  Graph skeleton() const;

 private:
  DualGraph() = default;
  int face_count_ = 0;
  std::vector<DualEdge> edges_;
  std::vector<std::array<int, 3>> rotation_;
};

// Edge 3-subdivision of the dual graph. Vertices: faces 0..|U|-1, then one
// vertex per directed dual edge, id |U| + d (the subdivision point (uu') for
// the directed dual edge d = u->u'). Each dual edge k becomes the chain
// u - (uu') - (u'u) - u', giving directed dagger edges 6k+0..6k+5:
//   6k+0: u -> (uu')        6k+1: (uu') -> u
//   6k+2: (uu') -> (u'u)    6k+3: (u'u) -> (uu')
//   6k+4: (u'u) -> u'       6k+5: u' -> (u'u)
// reverse(e) = e ^ 1.
class DaggerGraph {
 public:
  static DaggerGraph build(const DualGraph& dual);

  int face_count() const { return face_count_; }
  int vertex_count() const { return face_count_ + 2 * edge_count_; }
  int edge_count() const { return 3 * edge_count_; }
  int directed_edge_count() const { return 6 * edge_count_; }

  int tail(int e) const { return tails_[e]; }
  int head(int e) const { return tails_[e ^ 1]; }
  static int reverse(int e) { return e ^ 1; }
  bool is_face_vertex(int w) const { return w < face_count_; }

  // Out-edges of a dagger vertex in deterministic order: for a face vertex,
  // the rotation-system order of its dual edges; for a subdivision vertex,
  // edge-id order.
  const std::vector<int>& out_edges(int w) const { return out_[w]; }

 private:
  DaggerGraph() = default;
  int face_count_ = 0;
  int edge_count_ = 0;
  std::vector<int> tails_;             // per directed dagger edge
  std::vector<std::vector<int>> out_;  // per dagger vertex
};

// Boundary loop of the dual graph's planar face around primal vertex v:
// the directed dual edges whose tail-side ordered pair is (v, *), chained so
// that consecutive faces share an edge at v. One loop per primal vertex;
// every directed dual edge lies in exactly one loop; loop length = deg(v).
struct FaceLoop {
  int vertex = 0;
  std::vector<int> steps;  // directed dual-edge ids
};

std::vector<FaceLoop> face_loops(const DualGraph& dual, const Triangulation& tri);

}  // namespace kwz
