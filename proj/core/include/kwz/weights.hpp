#pragma once

#include "kwz/immersion.hpp"
#include "kwz/rng.hpp"

namespace kwz {

// Geometric edge weight y = e^{i theta/2} sqrt(tan(phi/2) tan(phi'/2)).
// Requires both interior angles in (0, pi) (PhiOutOfRange otherwise).
Cx geometric_weight(double theta, double phi_u, double phi_up);

// Complex coupling J with tanh(J) = y (principal branch). y = +-1 has no
// finite coupling: SingularCoupling.
Cx coupling_from_weight(Cx y);

// Weights on the 3-subdivision of the dual graph.
//
// Undirected dagger edges, per dual edge k:
//   3k+0: {u, (uu')}      value sqrt(tan(phi_u/2))
//   3k+1: {(uu'),(u'u)}   value e^{i theta/2}
//   3k+2: {(u'u), u'}     value sqrt(tan(phi_up/2))
// so the chain product equals the dual-edge weight y.
//
// Directed values, per directed dagger edge 6k+j (see DaggerGraph):
//   6k+0: sqrt(tan(phi_u/2))   6k+1: 1
//   6k+2: e^{i theta/4}        6k+3: e^{i theta/4}
//   6k+4: 1                    6k+5: sqrt(tan(phi_up/2))
// i.e. the canonical split that puts the whole corner weight on the
// face->subdivision direction and halves the dihedral phase.
struct WeightSystem {
  std::vector<Cx> y;           // per dual edge
  std::vector<Cx> y_dagger;    // 3 per dual edge
  std::vector<Cx> y_directed;  // 6 per dual edge
};

// Builds y and y_dagger from the angles.
WeightSystem split_weights(const EdgeAngles& angles);
// Fills y_directed with the canonical split above.
void direct_weights(WeightSystem& ws);
// Re-randomizes the directed split, keeping each undirected product fixed
// (multiplies each forward value by a random nonzero t, the reverse by 1/t).
void resplit_directed(WeightSystem& ws, Rng& rng);

}  // namespace kwz
