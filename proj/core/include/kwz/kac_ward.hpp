#pragma once

#include <Eigen/Dense>
#include <string>

#include "kwz/unfolding.hpp"
#include "kwz/weights.hpp"

namespace kwz {

// Straight-line embedded graph with directed edge weights, the input of the
// transition-matrix assembly. Directed edge 2k is edges[k] as stored (a->b),
// 2k+1 its reverse; w_directed follows that indexing.
struct EmbeddedGraph {
  Graph graph;
  std::vector<Cx> pos;
  std::vector<Cx> w_directed;

  int directed_count() const { return 2 * static_cast<int>(graph.edges.size()); }
  int tail(int e) const { return graph.edges[e >> 1][e & 1]; }
  int head(int e) const { return graph.edges[e >> 1][1 - (e & 1)]; }
  static int reverse(int e) { return e ^ 1; }
};

struct TransitionOptions {
  // Multiplies every turning angle. Flipping it globally is the mirror
  // drawing, so the determinant is invariant; the self-test exposes the
  // flip as a consistency check, not a failure mode.
  double turning_sign = +1.0;
};

// Kac-Ward transition matrix over directed edges: for consecutive directed
// edges e1 = (a -> b), e2 = (b -> c) with c != a,
//   Lambda[e1, e2] = w(b -> a) * w(b -> c) * e^{(i/2) angle(e1, e2)},
// (note the reversal of the first edge), zero elsewhere. Backtracking is
// excluded; every row has at most deg(head) - 1 entries.
Eigen::MatrixXcd transition_matrix(const EmbeddedGraph& eg,
                                   const TransitionOptions& opt = {});

// The subdivided dual graph of a planar decomposition as an EmbeddedGraph:
// vertex w < |U| at z_face[w], subdivision vertex |U| + d at z_attach[d];
// undirected dagger edge ids match WeightSystem::y_dagger, directed values
// come from WeightSystem::y_directed. Its transition matrix is indexed by
// directed dagger edge (6 per dual edge, see DaggerGraph).
EmbeddedGraph dagger_embedding(const DualGraph& dual, const DaggerGraph& dag,
                               const PlanarDecomposition& dec,
                               const WeightSystem& ws);

// det(Id - Lambda) by dense pivoted LU. Deterministic for fixed input.
Cx kw_determinant(const Eigen::MatrixXcd& lambda);

// |det(Id - Lambda)| normalized by prod_rows max(1, row-max |Lambda entry|);
// stable against weight blow-up while keeping a genuinely nonzero
// determinant visibly nonzero on well-scaled instances.
double zero_score(const Eigen::MatrixXcd& lambda, Cx det);

// Out-edge blocks of J*Lambda, where J swaps each directed edge with its
// reverse: block w has entry (i, j) = Lambda[reverse(out_i), out_j] over the
// out-edges of vertex w in deterministic order (ascending directed edge id).
// For the subdivided dual graph, face blocks are 3x3 Hermitian with spectrum
// {-1, 0, +1} and subdivision blocks are 2x2 antidiagonal unitary.
std::vector<Eigen::MatrixXcd> j_lambda_blocks(const EmbeddedGraph& eg,
                                              const Eigen::MatrixXcd& lambda);

// k smallest singular values of Id - Lambda (ascending) plus the largest.
struct KernelSigmas {
  std::vector<double> smallest;
  double sigma_max = 0.0;
};
KernelSigmas kernel_singular_values(const Eigen::MatrixXcd& lambda, int k = 3);

// Random planar test instance: a convex polygon with a random non-crossing
// chord triangulation, random chords deleted (boundary kept, so connected);
// directed weights random with 0.05 <= |product| <= 1. The self-test mixes
// in fixed shapes (tree, cycle, wheel, prism) ahead of these.
EmbeddedGraph random_planar_graph(Rng& rng, int max_edges);

// Re-embeds the same graph: orientation-preserving random affine map plus
// per-vertex jitter, re-checked for crossings (jitter retried if needed).
void reembed(EmbeddedGraph& eg, Rng& rng);

// Determinant identity self-test on random planar graphs:
//  (a) det(Id - Lambda) = Z^2 against the enumeration oracle,
//  (b) det invariant under re-randomized directed splits (fixed products),
//  (c) det invariant under re-embedding.
struct SelfTestOptions {
  std::uint64_t seed = 1;
  int trials = 50;
  int max_edges = 14;
  double turning_sign = +1.0;  // -1 checks mirror invariance of the identity
  double rel_tol = 1e-9;
};

struct SelfTestReport {
  int trials = 0;
  double max_det_vs_oracle = 0.0;  // relative
  double max_resplit_dev = 0.0;    // relative
  double max_reembed_dev = 0.0;    // relative
  bool pass = false;
  std::string to_json(int indent = 2) const;
};

SelfTestReport kw_selftest(const SelfTestOptions& opt = {});

}  // namespace kwz
