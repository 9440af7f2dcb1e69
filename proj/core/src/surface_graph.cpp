#include "kwz/surface_graph.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <string>
#include <unordered_map>

namespace kwz {

namespace {

std::uint64_t pair_key(int a, int b, int n) {
  return static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(n) +
         static_cast<std::uint64_t>(std::max(a, b));
}

}  // namespace

// ---------------------------------------------------------------------------
// cycle space
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> cycle_space_basis(const Graph& g) {
  const int n = g.vertex_count;
  const int m = static_cast<int>(g.edges.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int k = 0; k < m; ++k) {
    const auto [a, b] = g.edges[k];
    adj[a].push_back({b, k});
    adj[b].push_back({a, k});
  }

  std::vector<int> parent(n, -1), parent_edge(n, -1), depth(n, 0);
  std::vector<char> seen(n, 0), in_tree(m, 0);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const auto& [w, e] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        parent[w] = v;
        parent_edge[w] = e;
        depth[w] = depth[v] + 1;
        in_tree[e] = 1;
        q.push(w);
      }
    }
  }

  std::vector<std::vector<int>> basis;
  for (int k = 0; k < m; ++k) {
    if (in_tree[k]) continue;
    auto [x, y] = g.edges[k];
    std::vector<int> cycle{k};
    while (depth[x] > depth[y]) {
      cycle.push_back(parent_edge[x]);
      x = parent[x];
    }
    while (depth[y] > depth[x]) {
      cycle.push_back(parent_edge[y]);
      y = parent[y];
    }
    while (x != y) {
      cycle.push_back(parent_edge[x]);
      x = parent[x];
      cycle.push_back(parent_edge[y]);
      y = parent[y];
    }
    std::sort(cycle.begin(), cycle.end());
    basis.push_back(std::move(cycle));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Triangulation
// ---------------------------------------------------------------------------

Triangulation Triangulation::build(int vertex_count, std::vector<std::array<int, 3>> faces) {
  if (vertex_count < 1 || faces.empty())
    fail(ErrorCode::InvalidMesh, "mesh needs vertices and faces");

  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& [a, b, c] = faces[f];
    for (int v : {a, b, c})
      if (v < 0 || v >= vertex_count)
        fail(ErrorCode::InvalidMesh,
             "face " + std::to_string(f) + " references vertex " + std::to_string(v) +
                 " out of range 0.." + std::to_string(vertex_count - 1));
    if (a == b || b == c || a == c)
      fail(ErrorCode::NonManifoldEdge, "face " + std::to_string(f) + " repeats a vertex");
  }

  // Undirected edge census; every edge must be covered by exactly two faces.
  struct EdgeInfo {
    int count = 0;
    int dir_ab = 0;  // times traversed min->max
    int a = 0, b = 0;
  };
  std::unordered_map<std::uint64_t, EdgeInfo> census;
  census.reserve(faces.size() * 2);
  for (const auto& face : faces) {
    for (int j = 0; j < 3; ++j) {
      const int x = face[j], y = face[(j + 1) % 3];
      auto& info = census[pair_key(x, y, vertex_count)];
      info.count++;
      info.a = std::min(x, y);
      info.b = std::max(x, y);
      if (x < y) info.dir_ab++;
    }
  }
  for (const auto& [key, info] : census) {
    (void)key;
    const std::string name =
        "{" + std::to_string(info.a) + "," + std::to_string(info.b) + "}";
    if (info.count != 2)
      fail(ErrorCode::NonManifoldEdge,
           "edge " + name + " lies in " + std::to_string(info.count) + " faces, expected 2");
    if (info.dir_ab != 1)
      fail(ErrorCode::InconsistentOrientation,
           "edge " + name + " is traversed twice in the same direction");
  }

  {
    std::vector<int> degree(vertex_count, 0);
    for (const auto& [key, info] : census) {
      (void)key;
      degree[info.a]++;
      degree[info.b]++;
    }
    for (int v = 0; v < vertex_count; ++v)
      if (degree[v] < 3)
        fail(ErrorCode::NotSphere, "vertex " + std::to_string(v) + " has degree " +
                                       std::to_string(degree[v]) +
                                       ", not interior to a closed surface");
  }

  // Face adjacency across shared edges; also reject face pairs sharing more
  // than one edge (their dual would carry parallel edges).
  std::unordered_map<std::uint64_t, int> first_face;
  first_face.reserve(census.size());
  const int face_n = static_cast<int>(faces.size());
  std::vector<std::vector<int>> face_adj(face_n);
  for (int f = 0; f < face_n; ++f) {
    for (int j = 0; j < 3; ++j) {
      const auto key = pair_key(faces[f][j], faces[f][(j + 1) % 3], vertex_count);
      auto [it, inserted] = first_face.try_emplace(key, f);
      if (!inserted) {
        face_adj[it->second].push_back(f);
        face_adj[f].push_back(it->second);
      }
    }
  }
  for (int f = 0; f < face_n; ++f) {
    auto nb = face_adj[f];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      fail(ErrorCode::NonManifoldEdge,
           "face " + std::to_string(f) + " shares more than one edge with a neighbor");
  }

  {
    std::vector<char> seen(face_n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      for (int g : face_adj[f])
        if (!seen[g]) {
          seen[g] = 1;
          reached++;
          q.push(g);
        }
    }
    if (reached != face_n)
      fail(ErrorCode::Disconnected, "face adjacency graph has more than one component");
  }

  const int euler = vertex_count - static_cast<int>(census.size()) + face_n;
  if (euler != 2)
    fail(ErrorCode::NotSphere,
         "Euler characteristic V - E + F = " + std::to_string(euler) + ", expected 2");

  Triangulation tri;
  tri.vertex_count_ = vertex_count;
  tri.faces_ = std::move(faces);
  tri.edges_.reserve(census.size());
  for (const auto& [key, info] : census) {
    (void)key;
    tri.edges_.push_back({info.a, info.b});
  }
  std::sort(tri.edges_.begin(), tri.edges_.end());
  tri.degree_.assign(vertex_count, 0);
  for (const auto& [a, b] : tri.edges_) {
    tri.degree_[a]++;
    tri.degree_[b]++;
  }
  return tri;
}

int Triangulation::corner_slot(int u, int v) const {
  const auto& f = faces_[u];
  for (int j = 0; j < 3; ++j)
    if (f[j] == v) return j;
  assert(false && "vertex not in face");
  return -1;
}

// ---------------------------------------------------------------------------
// DualGraph
// ---------------------------------------------------------------------------

DualGraph DualGraph::build(const Triangulation& tri) {
  const int n = tri.vertex_count();
  // Face traversing each directed primal edge.
  std::unordered_map<std::uint64_t, int> via;
  via.reserve(tri.edge_count() * 2);
  auto dir_key = [n](int a, int b) {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(b);
  };
  for (int f = 0; f < tri.face_count(); ++f) {
    const auto& face = tri.faces()[f];
    for (int j = 0; j < 3; ++j) via[dir_key(face[j], face[(j + 1) % 3])] = f;
  }

  DualGraph dual;
  dual.face_count_ = tri.face_count();
  dual.edges_.reserve(tri.edge_count());
  std::unordered_map<std::uint64_t, int> edge_id;
  edge_id.reserve(tri.edge_count());
  auto third = [&](int f, int a, int b) {
    for (int v : tri.faces()[f])
      if (v != a && v != b) return v;
    assert(false);
    return -1;
  };
  // Dual edge k corresponds to primal edge k (sorted order); its stored
  // orientation points from the face traversing (a, b) with a < b.
  for (int k = 0; k < tri.edge_count(); ++k) {
    const auto [a, b] = tri.edges()[k];
    const int u = via.at(dir_key(a, b));
    const int up = via.at(dir_key(b, a));
    dual.edges_.push_back({u, up, a, b, third(u, a, b), third(up, a, b)});
    edge_id[pair_key(a, b, n)] = k;
  }

  dual.rotation_.resize(tri.face_count());
  for (int f = 0; f < tri.face_count(); ++f) {
    const auto& face = tri.faces()[f];
    for (int j = 0; j < 3; ++j)
      dual.rotation_[f][j] = edge_id.at(pair_key(face[j], face[(j + 1) % 3], n));
  }
  return dual;
}

int DualGraph::neighbor(int u, int slot) const {
  const DualEdge& e = edges_[rotation_[u][slot]];
  return e.u == u ? e.up : e.u;
}

DualGraph::Dir DualGraph::dir(int directed_id) const {
  const int k = directed_id >> 1;
  const DualEdge& e = edges_[k];
  if ((directed_id & 1) == 0) return {k, true, e.u, e.up, e.v1, e.v2};
  return {k, false, e.up, e.u, e.v2, e.v1};
}

Graph DualGraph::skeleton() const {
  Graph g;
  g.vertex_count = face_count_;
  g.edges.reserve(edges_.size());
  for (const auto& e : edges_) g.edges.push_back({e.u, e.up});
  return g;
}

// ---------------------------------------------------------------------------
// DaggerGraph
// ---------------------------------------------------------------------------

DaggerGraph DaggerGraph::build(const DualGraph& dual) {
  DaggerGraph dag;
  dag.face_count_ = dual.vertex_count();
  dag.edge_count_ = dual.edge_count();
  const int F = dag.face_count_;
  dag.tails_.resize(6 * dag.edge_count_);
  dag.out_.resize(dag.vertex_count());

  for (int k = 0; k < dag.edge_count_; ++k) {
    const DualEdge& e = dual.edges()[k];
    const int mid_f = F + DualGraph::directed_id(k, true);   // (uu')
    const int mid_b = F + DualGraph::directed_id(k, false);  // (u'u)
    dag.tails_[6 * k + 0] = e.u;
    dag.tails_[6 * k + 1] = mid_f;
    dag.tails_[6 * k + 2] = mid_f;
    dag.tails_[6 * k + 3] = mid_b;
    dag.tails_[6 * k + 4] = mid_b;
    dag.tails_[6 * k + 5] = e.up;
    dag.out_[mid_f] = {6 * k + 1, 6 * k + 2};
    dag.out_[mid_b] = {6 * k + 3, 6 * k + 4};
  }
  // Face out-edges in rotation order.
  for (int u = 0; u < F; ++u) {
    for (int slot = 0; slot < 3; ++slot) {
      const int k = dual.edges_at(u)[slot];
      const bool is_u = dual.edges()[k].u == u;
      dag.out_[u].push_back(is_u ? 6 * k + 0 : 6 * k + 5);
    }
  }
  return dag;
}

// ---------------------------------------------------------------------------
// face loops
// ---------------------------------------------------------------------------

std::vector<FaceLoop> face_loops(const DualGraph& dual, const Triangulation& tri) {
  const int n = tri.vertex_count();
  std::unordered_map<std::uint64_t, int> edge_id;
  edge_id.reserve(tri.edge_count());
  for (int k = 0; k < tri.edge_count(); ++k) {
    const auto [a, b] = tri.edges()[k];
    edge_id[pair_key(a, b, n)] = k;
  }
  // Smallest face id incident to each vertex, for a deterministic start.
  std::vector<int> start_face(n, -1);
  for (int f = tri.face_count() - 1; f >= 0; --f)
    for (int v : tri.faces()[f]) start_face[v] = f;

  std::vector<FaceLoop> loops;
  loops.reserve(n);
  for (int v = 0; v < n; ++v) {
    FaceLoop loop;
    loop.vertex = v;
    const int f0 = start_face[v];
    assert(f0 >= 0 && "isolated vertex survived validation");
    int f = f0;
    do {
      // Step across the primal edge (v, a), a = successor of v in f's triple.
      const auto& face = tri.faces()[f];
      const int a = face[(tri.corner_slot(f, v) + 1) % 3];
      const int k = edge_id.at(pair_key(v, a, n));
      const DualEdge& e = dual.edges()[k];
      loop.steps.push_back(DualGraph::directed_id(k, e.u == f));
      f = (e.u == f) ? e.up : e.u;
    } while (f != f0);
    assert(static_cast<int>(loop.steps.size()) == tri.vertex_degree(v));
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace kwz
