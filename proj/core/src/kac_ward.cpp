#include "kwz/kac_ward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "kwz/oracle.hpp"
#include "kwz/unfolding.hpp"

namespace kwz {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

// ---------------------------------------------------------------------------
// transition matrix
// ---------------------------------------------------------------------------

Eigen::MatrixXcd transition_matrix(const EmbeddedGraph& eg, const TransitionOptions& opt) {
  const int n = eg.directed_count();
  std::vector<std::vector<int>> out(eg.graph.vertex_count);
  for (int e = 0; e < n; ++e) out[eg.tail(e)].push_back(e);

  Eigen::MatrixXcd lambda = Eigen::MatrixXcd::Zero(n, n);
  for (int e1 = 0; e1 < n; ++e1) {
    const int a = eg.tail(e1), b = eg.head(e1);
    const Cx da = eg.pos[b] - eg.pos[a];
    const Cx back_weight = eg.w_directed[EmbeddedGraph::reverse(e1)];
    for (int e2 : out[b]) {
      if (e2 == EmbeddedGraph::reverse(e1)) continue;
      const Cx db = eg.pos[eg.head(e2)] - eg.pos[b];
      const double turn = turning_angle(da, db);
      lambda(e1, e2) =
          back_weight * eg.w_directed[e2] * std::polar(1.0, opt.turning_sign * turn / 2);
    }
  }
  return lambda;
}

EmbeddedGraph dagger_embedding(const DualGraph& dual, const DaggerGraph& dag,
                               const PlanarDecomposition& dec, const WeightSystem& ws) {
  if (ws.y_directed.size() != static_cast<std::size_t>(6 * dual.edge_count()))
    fail(ErrorCode::InvalidMesh, "directed weights are missing; split the weights first");
  EmbeddedGraph eg;
  eg.graph.vertex_count = dag.vertex_count();
  eg.graph.edges.reserve(dag.edge_count());
  for (int j = 0; j < dag.edge_count(); ++j)
    eg.graph.edges.push_back({dag.tail(2 * j), dag.head(2 * j)});
  eg.pos.resize(dag.vertex_count());
  const int F = dual.vertex_count();
  for (int u = 0; u < F; ++u) eg.pos[u] = dec.z_face[u];
  for (int d = 0; d < 2 * dual.edge_count(); ++d) eg.pos[F + d] = dec.z_attach[d];
  eg.w_directed = ws.y_directed;
  return eg;
}

// ---------------------------------------------------------------------------
// determinant and kernel
// ---------------------------------------------------------------------------

Cx kw_determinant(const Eigen::MatrixXcd& lambda) {
  const Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(lambda.rows(), lambda.cols()) - lambda;
  return m.partialPivLu().determinant();
}

double zero_score(const Eigen::MatrixXcd& lambda, Cx det) {
  // Divide only by rows whose largest entry exceeds 1: this counters weight
  // blow-up without deflating the score on well-scaled instances, where a
  // clearly nonzero determinant must keep a clearly nonzero score.
  double log_denom = 0;
  for (int i = 0; i < lambda.rows(); ++i) {
    const double row_max = lambda.row(i).cwiseAbs().maxCoeff();
    if (row_max > 1.0) log_denom += std::log(row_max);
  }
  return std::abs(det) * std::exp(-log_denom);
}

std::vector<Eigen::MatrixXcd> j_lambda_blocks(const EmbeddedGraph& eg,
                                              const Eigen::MatrixXcd& lambda) {
  const int n = eg.directed_count();
  std::vector<std::vector<int>> out(eg.graph.vertex_count);
  for (int e = 0; e < n; ++e) out[eg.tail(e)].push_back(e);
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(out.size());
  for (const auto& edges : out) {
    const int deg = static_cast<int>(edges.size());
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i)
      for (int j = 0; j < deg; ++j)
        if (i != j) block(i, j) = lambda(EmbeddedGraph::reverse(edges[i]), edges[j]);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

KernelSigmas kernel_singular_values(const Eigen::MatrixXcd& lambda, int k) {
  const Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(lambda.rows(), lambda.cols()) - lambda;
  Eigen::VectorXd vals;
  if (m.rows() >= 64) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    if (svd.info() != Eigen::Success) fail(ErrorCode::SvdFailure, "singular value decomposition failed");
    vals = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    if (svd.info() != Eigen::Success) fail(ErrorCode::SvdFailure, "singular value decomposition failed");
    vals = svd.singularValues();
  }
  KernelSigmas out;
  out.sigma_max = vals.size() > 0 ? vals[0] : 0.0;
  const int take = std::min<int>(k, static_cast<int>(vals.size()));
  for (int i = 0; i < take; ++i) out.smallest.push_back(vals[vals.size() - 1 - i]);
  return out;
}

// ---------------------------------------------------------------------------
// self-test graphs
// ---------------------------------------------------------------------------

namespace {

void triangulate_range(int i, int j, Rng& rng, std::vector<std::array<int, 2>>& chords) {
  if (j - i < 2) return;
  const int k = rng.uniform_int(i + 1, j - 1);
  if (k - i > 1) chords.push_back({i, k});
  if (j - k > 1) chords.push_back({k, j});
  triangulate_range(i, k, rng, chords);
  triangulate_range(k, j, rng, chords);
}

void assign_weights(EmbeddedGraph& eg, Rng& rng) {
  eg.w_directed.resize(2 * eg.graph.edges.size());
  for (std::size_t k = 0; k < eg.graph.edges.size(); ++k) {
    eg.w_directed[2 * k] = std::polar(0.05 + 0.95 * rng.uniform(), rng.uniform(-kPi, kPi));
    eg.w_directed[2 * k + 1] = Cx(1, 0);
  }
}

EmbeddedGraph fixed_shape(int which, Rng& rng) {
  EmbeddedGraph eg;
  switch (which) {
    case 0:  // tree
      eg.graph.vertex_count = 5;
      eg.graph.edges = {{0, 1}, {1, 2}, {2, 3}, {1, 4}};
      eg.pos = {{0, 0}, {1, 0.1}, {2, -0.05}, {3, 0.12}, {1.2, 1}};
      break;
    case 1:  // hexagon
      eg.graph.vertex_count = 6;
      for (int k = 0; k < 6; ++k) {
        eg.graph.edges.push_back({k, (k + 1) % 6});
        eg.pos.push_back(std::polar(1.0, kPi * k / 3));
      }
      break;
    case 2:  // wheel on a triangle
      eg.graph.vertex_count = 4;
      eg.graph.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};
      for (int k = 0; k < 3; ++k) eg.pos.push_back(std::polar(1.0, 2 * kPi * k / 3));
      eg.pos.push_back({0.05, 0.02});
      break;
    default:  // triangular prism
      eg.graph.vertex_count = 6;
      eg.graph.edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}};
      for (int k = 0; k < 3; ++k) eg.pos.push_back(std::polar(1.0, 2 * kPi * k / 3));
      for (int k = 0; k < 3; ++k) eg.pos.push_back(std::polar(0.45, 2 * kPi * k / 3 + 0.2));
      break;
  }
  assign_weights(eg, rng);
  return eg;
}

double min_vertex_gap(const std::vector<Cx>& pos) {
  double gap = 1e300;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      gap = std::min(gap, std::abs(pos[i] - pos[j]));
  return gap;
}

// Straight-line drawing validity: no two edges cross or overlap.
bool embedding_is_planar(const Graph& g, const std::vector<Cx>& pos) {
  auto orient = [](Cx a, Cx b, Cx c) { return ((b - a) * std::conj(c - a)).imag(); };
  const int m = static_cast<int>(g.edges.size());
  double scale = 0;
  for (const auto& [a, b] : g.edges) scale = std::max(scale, std::abs(pos[a] - pos[b]));
  const double tol = 1e-9 * scale;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto [a1, b1] = g.edges[i];
      const auto [a2, b2] = g.edges[j];
      const int shared = (a1 == a2 || a1 == b2) ? a1 : ((b1 == a2 || b1 == b2) ? b1 : -1);
      if (shared >= 0) {
        const Cx da = pos[a1 == shared ? b1 : a1] - pos[shared];
        const Cx db = pos[a2 == shared ? b2 : a2] - pos[shared];
        if (std::abs(da) < tol || std::abs(db) < tol) return false;
        if (std::abs(turning_angle(da, db)) < 1e-10) return false;
        continue;
      }
      const double o1 = orient(pos[a1], pos[b1], pos[a2]);
      const double o2 = orient(pos[a1], pos[b1], pos[b2]);
      const double o3 = orient(pos[a2], pos[b2], pos[a1]);
      const double o4 = orient(pos[a2], pos[b2], pos[b1]);
      if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
          ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
        return false;
      // Reject near-touching configurations as ambiguous.
      auto point_seg = [&](Cx p, Cx a, Cx b) {
        const double len2 = std::norm(b - a);
        double t = len2 > 0 ? ((p - a) * std::conj(b - a)).real() / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return std::abs(p - (a + t * (b - a)));
      };
      if (std::min({point_seg(pos[a2], pos[a1], pos[b1]), point_seg(pos[b2], pos[a1], pos[b1]),
                    point_seg(pos[a1], pos[a2], pos[b2]),
                    point_seg(pos[b1], pos[a2], pos[b2])}) < tol)
        return false;
    }
  return true;
}

}  // namespace

EmbeddedGraph random_planar_graph(Rng& rng, int max_edges) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int n = rng.uniform_int(4, 8);
    // Vertices of a convex polygon with well-separated direction angles.
    std::vector<double> angles(n);
    for (double& a : angles) a = rng.uniform(0.0, 2 * kPi);
    std::sort(angles.begin(), angles.end());
    bool spaced = true;
    for (int k = 0; k < n; ++k) {
      const double gap = (k + 1 < n ? angles[k + 1] : angles[0] + 2 * kPi) - angles[k];
      if (gap < 0.15) spaced = false;
    }
    if (!spaced) continue;

    EmbeddedGraph eg;
    eg.graph.vertex_count = n;
    for (int k = 0; k < n; ++k) {
      eg.graph.edges.push_back({k, (k + 1) % n});
      eg.pos.push_back(std::polar(1.0, -angles[k]));  // clockwise convex order
    }
    std::vector<std::array<int, 2>> chords;
    triangulate_range(0, n - 1, rng, chords);
    for (const auto& chord : chords)
      if (rng.uniform() < 0.7) eg.graph.edges.push_back(chord);
    if (static_cast<int>(eg.graph.edges.size()) > max_edges) continue;
    assign_weights(eg, rng);
    return eg;
  }
  fail(ErrorCode::SelfTestFailed, "could not sample a well-spaced polygon");
}

void reembed(EmbeddedGraph& eg, Rng& rng) {
  const double rot1 = rng.uniform(-kPi, kPi);
  const double rot2 = rng.uniform(-kPi, kPi);
  const double s1 = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
  const double s2 = std::exp(rng.uniform(-std::log(2.0), std::log(2.0)));
  const Cx shift(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  auto apply = [&](Cx z) {
    // rotation, anisotropic stretch, rotation: an orientation-preserving
    // linear map, then a translation.
    z *= std::polar(1.0, rot2);
    z = Cx(s1 * z.real(), s2 * z.imag());
    z *= std::polar(1.0, rot1);
    return z + shift;
  };
  std::vector<Cx> base(eg.pos.size());
  for (std::size_t v = 0; v < eg.pos.size(); ++v) base[v] = apply(eg.pos[v]);

  double jitter = 0.02 * min_vertex_gap(base);
  for (int attempt = 0; attempt < 64; ++attempt, jitter /= 2) {
    std::vector<Cx> trial(base.size());
    for (std::size_t v = 0; v < base.size(); ++v)
      trial[v] = base[v] + std::polar(jitter * rng.uniform(), rng.uniform(-kPi, kPi));
    if (embedding_is_planar(eg.graph, trial)) {
      eg.pos = std::move(trial);
      return;
    }
  }
  eg.pos = std::move(base);  // affine keeps planarity exactly
}

// ---------------------------------------------------------------------------
// self test
// ---------------------------------------------------------------------------

SelfTestReport kw_selftest(const SelfTestOptions& opt) {
  Rng rng(opt.seed);
  SelfTestReport rep;
  rep.trials = opt.trials;
  rep.max_det_vs_oracle = 0;
  rep.max_resplit_dev = 0;
  rep.max_reembed_dev = 0;

  const TransitionOptions topt{opt.turning_sign};
  for (int trial = 0; trial < opt.trials; ++trial) {
    EmbeddedGraph eg =
        trial < 4 ? fixed_shape(trial, rng) : random_planar_graph(rng, opt.max_edges);
    const Cx det = kw_determinant(transition_matrix(eg, topt));

    std::vector<Cx> x(eg.graph.edges.size());
    for (std::size_t k = 0; k < x.size(); ++k)
      x[k] = eg.w_directed[2 * k] * eg.w_directed[2 * k + 1];
    const Cx z = partition_function(eg.graph, x);
    rep.max_det_vs_oracle =
        std::max(rep.max_det_vs_oracle, std::abs(det - z * z) / std::max(1.0, std::norm(z)));

    EmbeddedGraph resplit = eg;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const Cx c = std::polar(std::exp(rng.uniform(-std::log(2.0), std::log(2.0))),
                              rng.uniform(-kPi, kPi));
      resplit.w_directed[2 * k] *= c;
      resplit.w_directed[2 * k + 1] /= c;
    }
    const Cx det_resplit = kw_determinant(transition_matrix(resplit, topt));
    rep.max_resplit_dev = std::max(rep.max_resplit_dev,
                                   std::abs(det_resplit - det) / std::max(1.0, std::abs(det)));

    EmbeddedGraph moved = eg;
    reembed(moved, rng);
    const Cx det_moved = kw_determinant(transition_matrix(moved, topt));
    rep.max_reembed_dev =
        std::max(rep.max_reembed_dev, std::abs(det_moved - det) / std::max(1.0, std::abs(det)));
  }
  rep.pass = rep.max_det_vs_oracle <= opt.rel_tol && rep.max_resplit_dev <= opt.rel_tol &&
             rep.max_reembed_dev <= opt.rel_tol;
  return rep;
}

std::string SelfTestReport::to_json(int indent) const {
  nlohmann::json doc = {{"trials", trials},
                        {"max_det_vs_oracle", max_det_vs_oracle},
                        {"max_resplit_dev", max_resplit_dev},
                        {"max_reembed_dev", max_reembed_dev},
                        {"pass", pass}};
  return indent > 0 ? doc.dump(indent) : doc.dump();
}

}  // namespace kwz
