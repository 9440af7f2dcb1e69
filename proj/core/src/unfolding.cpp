#include "kwz/unfolding.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace kwz {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double mod_2pi(double a) {
  double r = std::fmod(a, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  return r;
}
}  // namespace

double turning_angle(Cx da, Cx db) {
  if (std::abs(da) < 1e-300 || std::abs(db) < 1e-300)
    fail(ErrorCode::ZeroLengthSegment, "turning angle of a zero-length segment");
  return std::arg(std::conj(da) * db);
}

// ---------------------------------------------------------------------------
// Tutte layout
// ---------------------------------------------------------------------------

std::vector<Cx> tutte_layout(const DualGraph& dual, const Triangulation& tri, int outer_vertex,
                             double polygon_turn) {
  const int F = dual.vertex_count();
  if (outer_vertex < 0) {
    for (int v = 0; v < tri.vertex_count(); ++v)
      if (outer_vertex < 0 || tri.vertex_degree(v) > tri.vertex_degree(outer_vertex))
        outer_vertex = v;
  }
  const auto loops = face_loops(dual, tri);
  const FaceLoop& outer = loops[outer_vertex];
  const int L = static_cast<int>(outer.steps.size());

  std::vector<Cx> pos(F, Cx(0, 0));
  std::vector<char> pinned(F, 0);
  for (int j = 0; j < L; ++j) {
    const int u = dual.dir(outer.steps[j]).tail;
    pos[u] = std::polar(1.0, polygon_turn - 2 * kPi * j / L);
    pinned[u] = 1;
  }

  std::vector<int> interior;
  std::vector<int> slot_of(F, -1);
  for (int u = 0; u < F; ++u)
    if (!pinned[u]) {
      slot_of[u] = static_cast<int>(interior.size());
      interior.push_back(u);
    }

  if (!interior.empty()) {
    const int n = static_cast<int>(interior.size());
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    for (int row = 0; row < n; ++row) {
      const int u = interior[row];
      A(row, row) = 3.0;
      for (int slot = 0; slot < 3; ++slot) {
        const int w = dual.neighbor(u, slot);
        if (pinned[w])
          b[row] += pos[w];
        else
          A(row, slot_of[w]) -= 1.0;
      }
    }
    const Eigen::VectorXcd x = A.partialPivLu().solve(b);
    if (!x.allFinite() || (A * x - b).cwiseAbs().maxCoeff() > 1e-8 * (1 + b.cwiseAbs().maxCoeff()))
      fail(ErrorCode::LayoutSingular, "barycentric layout system is singular");
    for (int row = 0; row < n; ++row) pos[interior[row]] = x[row];
  }

  // The rotation at each interior vertex must wind clockwise (total gap 2*pi);
  // a mirrored solve winds the other way (4*pi) and is fixed by conjugation.
  int cw = 0, ccw = 0;
  for (int u : interior) {
    double sum = 0;
    for (int slot = 0; slot < 3; ++slot) {
      const Cx d0 = pos[dual.neighbor(u, slot)] - pos[u];
      const Cx d1 = pos[dual.neighbor(u, (slot + 1) % 3)] - pos[u];
      if (std::abs(d0) < 1e-14 || std::abs(d1) < 1e-14)
        fail(ErrorCode::LayoutSingular, "coincident layout positions");
      sum += mod_2pi(std::arg(d0) - std::arg(d1));
    }
    (sum < 3 * kPi ? cw : ccw)++;
  }
  if (cw > 0 && ccw > 0)
    fail(ErrorCode::LayoutSingular, "layout realizes mixed rotation senses");
  if (ccw > 0)
    for (Cx& z : pos) z = std::conj(z);
  return pos;
}

// ---------------------------------------------------------------------------
// planar decomposition
// ---------------------------------------------------------------------------

namespace {

struct LocalFace {
  std::array<Cx, 3> corner;  // clockwise template congruent to the 3d face
  Cx point;                  // interior face point
  std::array<Cx, 3> foot;    // perpendicular feet on sides (0,1), (1,2), (2,0)
};

LocalFace local_template(const Immersion& im, int u) {
  const auto& [i, j, k] = im.triangulation().faces()[u];
  const Vec3& A = im.coord(i);
  const Vec3& B = im.coord(j);
  const Vec3& C = im.coord(k);
  LocalFace lf;
  lf.corner[0] = Cx(0, 0);
  lf.corner[1] = Cx((B - A).norm(), 0);
  lf.corner[2] = std::polar((C - A).norm(), -face_angle(A, B, C));

  const FacePointBary bc = face_point_barycentric(A, B, C);
  lf.point = bc.lambda[0] * lf.corner[0] + bc.lambda[1] * lf.corner[1] + bc.lambda[2] * lf.corner[2];

  for (int s = 0; s < 3; ++s) {
    const Cx p = lf.corner[s];
    const Cx q = lf.corner[(s + 1) % 3];
    const double t =
        ((lf.point - p) * std::conj(q - p)).real() / std::norm(q - p);
    if (!(t > 1e-9 && t < 1 - 1e-9))
      fail(ErrorCode::DecompositionFailed,
           "face point projects outside a side of face " + std::to_string(u));
    lf.foot[s] = p + t * (q - p);
  }
  return lf;
}

// Minimum distance between two segments.
double seg_distance(Cx p1, Cx p2, Cx q1, Cx q2) {
  auto orient = [](Cx a, Cx b, Cx c) {
    return ((b - a) * std::conj(c - a)).imag();
  };
  const double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return 0.0;
  auto point_seg = [](Cx p, Cx a, Cx b) {
    const double len2 = std::norm(b - a);
    double t = len2 > 0 ? ((p - a) * std::conj(b - a)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * (b - a)));
  };
  return std::min({point_seg(q1, p1, p2), point_seg(q2, p1, p2), point_seg(p1, q1, q2),
                   point_seg(p2, q1, q2)});
}

struct DrawnSegment {
  int a, b;  // endpoint ids in the subdivided dual graph
  Cx pa, pb;
};

bool dagger_segments_disjoint(const std::vector<DrawnSegment>& segs, double min_sep) {
  const int n = static_cast<int>(segs.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const DrawnSegment& s = segs[i];
      const DrawnSegment& t = segs[j];
      const bool share_a = s.a == t.a || s.a == t.b;
      const bool share_b = s.b == t.a || s.b == t.b;
      if (share_a || share_b) {
        // Segments meeting at a vertex must leave in distinct directions.
        const Cx base = share_a ? s.pa : s.pb;
        const Cx da = share_a ? s.pb - s.pa : s.pa - s.pb;
        const Cx other_far = (t.a == (share_a ? s.a : s.b)) ? t.pb : t.pa;
        const Cx db = other_far - base;
        if (std::abs(da) < min_sep || std::abs(db) < min_sep) return false;
        if (std::abs(turning_angle(da, db)) < 1e-12) return false;
        continue;
      }
      if (seg_distance(s.pa, s.pb, t.pa, t.pb) < min_sep) return false;
    }
  return true;
}

// Strictly inside a clockwise triangle.
bool inside_cw_triangle(Cx p, const std::array<Cx, 3>& corner) {
  for (int s = 0; s < 3; ++s) {
    const Cx a = corner[s], b = corner[(s + 1) % 3];
    if (((b - a) * std::conj(p - a)).imag() <= 0) return false;
  }
  return true;
}

bool triangles_disjoint(const std::vector<std::array<Cx, 3>>& tris, double min_sep) {
  const int F = static_cast<int>(tris.size());
  for (int u = 0; u < F; ++u)
    for (int w = u + 1; w < F; ++w) {
      for (int s = 0; s < 3; ++s) {
        if (inside_cw_triangle(tris[w][s], tris[u])) return false;
        if (inside_cw_triangle(tris[u][s], tris[w])) return false;
        for (int t = 0; t < 3; ++t)
          if (seg_distance(tris[u][s], tris[u][(s + 1) % 3], tris[w][t],
                           tris[w][(t + 1) % 3]) < min_sep)
            return false;
      }
    }
  return true;
}

// Bridges must stay clear of every triangle except the two they attach to.
// (A bridge may graze its own triangles: a corner face of the layout has all
// of its neighbors on one side, which can force a bridge to run parallel to
// the side it leaves from. Crossings into a face interior are still caught,
// because a bridge through a triangle also crosses that face's spokes.)
bool bridges_clear_triangles(const std::vector<std::array<Cx, 3>>& tris,
                             const std::vector<std::array<Cx, 2>>& bridges,
                             const std::vector<std::array<int, 2>>& attached, double min_sep) {
  for (size_t bi = 0; bi < bridges.size(); ++bi) {
    const auto& [a, b] = bridges[bi];
    const Cx mid = (a + b) / 2.0;
    for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti) {
      if (ti == attached[bi][0] || ti == attached[bi][1]) continue;
      const auto& corner = tris[ti];
      if (inside_cw_triangle(mid, corner)) return false;
      for (int s = 0; s < 3; ++s)
        if (seg_distance(a, b, corner[s], corner[(s + 1) % 3]) < min_sep) return false;
    }
  }
  return true;
}

}  // namespace

PlanarDecomposition build_decomposition(const Immersion& im, const DualGraph& dual,
                                        const DecompositionOptions& opt) {
  const Triangulation& tri = im.triangulation();
  const std::vector<Cx> layout = tutte_layout(dual, tri, opt.outer_vertex, opt.polygon_turn);

  std::vector<LocalFace> local;
  local.reserve(tri.face_count());
  double longest_edge = 0;
  for (int u = 0; u < tri.face_count(); ++u) {
    local.push_back(local_template(im, u));
    for (int s = 0; s < 3; ++s)
      longest_edge = std::max(longest_edge, std::abs(local[u].corner[s] -
                                                     local[u].corner[(s + 1) % 3]));
  }

  double scale = opt.initial_scale * longest_edge;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt, scale *= 2) {
    PlanarDecomposition dec;
    dec.scale = scale;
    dec.retries = attempt;
    dec.corners.resize(tri.face_count());
    dec.z_face.resize(tri.face_count());
    dec.z_attach.resize(2 * dual.edge_count());

    for (int u = 0; u < tri.face_count(); ++u) {
      const Cx target = scale * layout[u];
      // Align the perpendicular-foot directions with the layout directions of
      // the three neighbors, in the least-squares sense over the circle.
      Cx align(0, 0);
      std::array<int, 3> directed{};
      for (int slot = 0; slot < 3; ++slot) {
        const int k = dual.edges_at(u)[slot];
        directed[slot] = DualGraph::directed_id(k, dual.edges()[k].u == u);
        const int head = dual.dir(directed[slot]).head;
        const Cx tau = layout[head] - layout[u];
        const Cx gamma = local[u].foot[slot] - local[u].point;
        align += (tau / std::abs(tau)) * std::conj(gamma / std::abs(gamma));
      }
      const Cx spin = std::abs(align) > 1e-12 ? align / std::abs(align) : Cx(1, 0);
      for (int s = 0; s < 3; ++s)
        dec.corners[u][s] = target + spin * (local[u].corner[s] - local[u].point);
      dec.z_face[u] = target;
      for (int slot = 0; slot < 3; ++slot)
        dec.z_attach[directed[slot]] = target + spin * (local[u].foot[slot] - local[u].point);
    }

    // Assemble the drawn graph: two spokes and one bridge per dual edge.
    const int F = tri.face_count();
    std::vector<DrawnSegment> segs;
    segs.reserve(3 * dual.edge_count());
    std::vector<std::array<Cx, 2>> bridges;
    std::vector<std::array<int, 2>> attached;
    bridges.reserve(dual.edge_count());
    attached.reserve(dual.edge_count());
    for (int k = 0; k < dual.edge_count(); ++k) {
      const DualEdge& e = dual.edges()[k];
      const int df = DualGraph::directed_id(k, true);
      const int db = DualGraph::directed_id(k, false);
      segs.push_back({e.u, F + df, dec.z_face[e.u], dec.z_attach[df]});
      segs.push_back({F + df, F + db, dec.z_attach[df], dec.z_attach[db]});
      segs.push_back({F + db, e.up, dec.z_attach[db], dec.z_face[e.up]});
      bridges.push_back({dec.z_attach[df], dec.z_attach[db]});
      attached.push_back({e.u, e.up});
    }
    const double min_sep = 1e-12 * scale;
    if (dagger_segments_disjoint(segs, min_sep) && triangles_disjoint(dec.corners, min_sep) &&
        bridges_clear_triangles(dec.corners, bridges, attached, min_sep))
      return dec;
  }
  fail(ErrorCode::DecompositionFailed,
       "no crossing-free drawing found after " + std::to_string(opt.max_retries) + " retries");
}

// ---------------------------------------------------------------------------
// turning data
// ---------------------------------------------------------------------------

TurningData turning_data(const PlanarDecomposition& dec, const DualGraph& dual,
                         const Triangulation& tri) {
  TurningData td;
  const int directed = 2 * dual.edge_count();
  td.beta.resize(directed);
  td.alpha.resize(directed);
  td.turn_exit.resize(directed);
  td.turn_entry.resize(directed);
  td.rho.resize(directed);
  for (int d = 0; d < directed; ++d) {
    const auto dir = dual.dir(d);
    const Cx z1 = dec.corners[dir.tail][tri.corner_slot(dir.tail, dir.v1)];
    const Cx z2 = dec.corners[dir.tail][tri.corner_slot(dir.tail, dir.v2)];
    td.beta[d] = std::arg(z1 - z2);
    td.rho[d] = std::sqrt(std::abs(z1 - z2));
    const Cx exit_leg = dec.z_attach[d] - dec.z_face[dir.tail];
    const Cx bridge = dec.z_attach[DualGraph::reverse(d)] - dec.z_attach[d];
    const Cx entry_leg = dec.z_face[dir.head] - dec.z_attach[DualGraph::reverse(d)];
    td.turn_exit[d] = turning_angle(exit_leg, bridge);
    td.turn_entry[d] = turning_angle(bridge, entry_leg);
    td.alpha[d] = td.turn_exit[d] + td.turn_entry[d];
  }
  return td;
}

// ---------------------------------------------------------------------------
// svg output
// ---------------------------------------------------------------------------

void write_svg(std::ostream& os, const PlanarDecomposition& dec, const DualGraph& dual) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& tricorners : dec.corners)
    for (const Cx& z : tricorners) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, -z.imag());
      y1 = std::max(y1, -z.imag());
    }
  const double pad = 0.03 * std::max(x1 - x0, y1 - y0) + 1e-9;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (x0 - pad) << ' '
     << (y0 - pad) << ' ' << (x1 - x0 + 2 * pad) << ' ' << (y1 - y0 + 2 * pad) << "\">\n";
  const double stroke = 0.0015 * std::max(x1 - x0, y1 - y0);
  for (const auto& tricorners : dec.corners) {
    os << "  <polygon points=\"";
    for (const Cx& z : tricorners) os << z.real() << ',' << -z.imag() << ' ';
    os << "\" fill=\"#f2f2f2\" stroke=\"#999\" stroke-width=\"" << stroke << "\"/>\n";
  }
  auto line = [&](Cx a, Cx b, const char* color) {
    os << "  <line x1=\"" << a.real() << "\" y1=\"" << -a.imag() << "\" x2=\"" << b.real()
       << "\" y2=\"" << -b.imag() << "\" stroke=\"" << color << "\" stroke-width=\"" << stroke
       << "\"/>\n";
  };
  for (int k = 0; k < dual.edge_count(); ++k) {
    const DualEdge& e = dual.edges()[k];
    const int df = DualGraph::directed_id(k, true);
    const int db = DualGraph::directed_id(k, false);
    line(dec.z_face[e.u], dec.z_attach[df], "#3366cc");
    line(dec.z_attach[df], dec.z_attach[db], "#cc3333");
    line(dec.z_attach[db], dec.z_face[e.up], "#3366cc");
  }
  for (const Cx& z : dec.z_face)
    os << "  <circle cx=\"" << z.real() << "\" cy=\"" << -z.imag() << "\" r=\"" << 2 * stroke
       << "\" fill=\"#222\"/>\n";
  os << "</svg>\n";
}

}  // namespace kwz
