#pragma once

#include <array>
#include <iosfwd>

#include "kwz/immersion.hpp"

namespace kwz {

// Turning angle in (-pi, pi] from a segment with displacement da onto a
// consecutive segment with displacement db: arg(db / da). Exactly pi for a
// reversal. ZeroLengthSegment if either displacement vanishes.
double turning_angle(Cx da, Cx db);

// Barycentric (averaging) layout of the dual 1-skeleton: the face loop of
// outer_vertex (-1 = maximum degree, ties to the smallest index) is pinned
// to a regular polygon on the unit circle, every other dual vertex is placed
// at the mean of its neighbors. The solved drawing is reflected if needed so
// that every dual vertex sees its three neighbors in the clockwise rotation
// order; a drawing that realizes neither orientation raises LayoutSingular.
std::vector<Cx> tutte_layout(const DualGraph& dual, const Triangulation& tri,
                             int outer_vertex = -1, double polygon_turn = 0.0);

struct DecompositionOptions {
  int outer_vertex = -1;       // primal vertex whose loop becomes the outer face
  double polygon_turn = 0.0;   // rotation offset of the pinned polygon
  double initial_scale = 8.0;  // layout scale L of the first attempt
  int max_retries = 20;        // L doubles on each failed attempt
};

// Disjoint isometric copies of the faces in the plane: face u is congruent
// to its 3D triangle, its corners wind clockwise in the stored triple order,
// its face point sits at L * layout(u), and its rotation maximizes the
// alignment of the three attachment directions with the layout directions to
// the neighbors. z_attach[d] is the perpendicular projection of z_face[tail]
// onto the shared side, i.e. the subdivision point (uu') of the directed
// dual edge d. The decomposition is verified: triangles pairwise disjoint,
// subdivision segments never cross each other, and each bridge stays clear
// of every triangle except the two it attaches to (it may graze those: a
// corner face of the layout can force a bridge to run along its own side).
// DecompositionFailed after max_retries.
struct PlanarDecomposition {
  std::vector<std::array<Cx, 3>> corners;  // per face, triple order
  std::vector<Cx> z_face;                  // per face
  std::vector<Cx> z_attach;                // per directed dual edge
  double scale = 0.0;
  int retries = 0;
};

PlanarDecomposition build_decomposition(const Immersion& im, const DualGraph& dual,
                                        const DecompositionOptions& opt = {});

// Data read off a verified decomposition, indexed by directed dual edge d
// with tail u, head u', shared pair (v1, v2) as seen from u:
//   beta       arg(z_{u,v1} - z_{u,v2})
//   turn_exit  turning at z_{uu'} from [z_u -> z_{uu'}] onto the segment
//   turn_entry turning at z_{u'u} onto [z_{u'u} -> z_{u'}]
//   alpha      turn_exit + turn_entry (total winding, not reduced mod 2pi)
//   rho        sqrt(|x_{v1} - x_{v2}|)  (square root of the side length)
struct TurningData {
  std::vector<double> beta;
  std::vector<double> alpha;
  std::vector<double> turn_exit;
  std::vector<double> turn_entry;
  std::vector<double> rho;
};

TurningData turning_data(const PlanarDecomposition& dec, const DualGraph& dual,
                         const Triangulation& tri);

// Debug rendering of the decomposition (triangles, face points, subdivision
// segments) as a standalone SVG document.
void write_svg(std::ostream& os, const PlanarDecomposition& dec, const DualGraph& dual);

}  // namespace kwz
