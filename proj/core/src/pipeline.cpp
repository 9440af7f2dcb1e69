#include "kwz/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "kwz/oracle.hpp"

namespace kwz {

using nlohmann::json;

void VerificationReport::recompute_flags() {
  zero_pass = score <= tol.zero;
  holonomy_pass = holonomy_dev <= tol.holonomy;
  residual_pass = std::max(residual_e0, residual_e1) <= tol.residual;
  kernel_pass = sigma_smallest.size() >= 3 && sigma_max > 0 &&
                sigma_smallest[0] <= tol.kernel_rel * sigma_max &&
                sigma_smallest[1] <= tol.kernel_rel * sigma_max &&
                sigma_smallest[2] >= tol.kernel_gap_rel * sigma_max;
  oracle_pass = true;
  if (oracle_ran && z_oracle) {
    oracle_pass = det_vs_oracle <= tol.det_agreement * std::max(1.0, std::norm(*z_oracle));
    if (oracle_zero_gate) oracle_pass = oracle_pass && std::abs(*z_oracle) <= tol.oracle;
  }
  pass = zero_pass && holonomy_pass && residual_pass && kernel_pass && oracle_pass;
}

VerificationReport run_check(const MeshData& mesh, const CheckOptions& opt) {
  VerificationReport rep;
  rep.tol = opt.tol;
  rep.oracle_zero_gate = opt.oracle_zero_gate;
  rep.seed = opt.seed;

  const Immersion im =
      Immersion::validate(Triangulation::build(mesh.vertex_count, mesh.faces), mesh.coords);
  const Triangulation& tri = im.triangulation();
  const DualGraph dual = DualGraph::build(tri);
  const DaggerGraph dag = DaggerGraph::build(dual);

  rep.vertices = tri.vertex_count();
  rep.edges = tri.edge_count();
  rep.faces = tri.face_count();
  rep.dual_edges = dual.edge_count();
  rep.cycle_dim = dual.edge_count() - dual.vertex_count() + 1;

  const EdgeAngles angles = edge_angles(im, dual);
  rep.theta_min = *std::min_element(angles.theta.begin(), angles.theta.end());
  rep.theta_max = *std::max_element(angles.theta.begin(), angles.theta.end());
  double abs_sum = 0;
  for (double t : angles.theta) abs_sum += std::abs(t);
  rep.theta_mean_abs = abs_sum / angles.theta.size();
  rep.phi_min = 1e300;
  rep.phi_max = 0;
  for (const auto* v : {&angles.phi_u, &angles.phi_up})
    for (double p : *v) {
      rep.phi_min = std::min(rep.phi_min, p);
      rep.phi_max = std::max(rep.phi_max, p);
    }

  WeightSystem ws = split_weights(angles);
  direct_weights(ws);

  const PlanarDecomposition dec = build_decomposition(im, dual, opt.layout);
  rep.scale = dec.scale;
  rep.layout_retries = dec.retries;

  const TurningData td = turning_data(dec, dual, tri);
  const EmbeddedGraph eg = dagger_embedding(dual, dag, dec, ws);
  const Eigen::MatrixXcd lambda = transition_matrix(eg);
  rep.z_det = kw_determinant(lambda);
  rep.score = zero_score(lambda, rep.z_det);

  const bool want_oracle =
      opt.oracle == OracleMode::On ||
      (opt.oracle == OracleMode::Auto && rep.cycle_dim <= kMaxCycleDim);
  if (want_oracle) {
    rep.threads_used = resolve_threads(opt.threads);
    const Cx z = partition_function(dual.skeleton(), ws.y, kMaxCycleDim, opt.threads);
    rep.z_oracle = z;
    rep.det_vs_oracle = std::abs(rep.z_det - z * z);
    rep.oracle_ran = true;
  }

  const auto loops = face_loops(dual, tri);
  const Connection conn = build_connection(angles, td);
  rep.holonomy_dev = flatness_check(conn, loops);

  const SpinorField f0 = propagate_spinors(conn, dual, Eigen::RowVector2cd(1, 0));
  rep.residual_e0 = eigenvector_residual(lambda, assemble_eigenvector(f0, td, angles, dual));
  const SpinorField f1 = propagate_spinors(conn, dual, Eigen::RowVector2cd(0, 1));
  rep.residual_e1 = eigenvector_residual(lambda, assemble_eigenvector(f1, td, angles, dual));

  const KernelSigmas ks = kernel_singular_values(lambda, 3);
  rep.sigma_smallest = ks.smallest;
  rep.sigma_max = ks.sigma_max;

  rep.recompute_flags();
  return rep;
}

namespace {
json complex_json(Cx z) { return json::array({z.real(), z.imag()}); }
}  // namespace

std::string VerificationReport::to_json(int indent) const {
  json doc;
  doc["mesh"] = {{"vertices", vertices},
                 {"edges", edges},
                 {"faces", faces},
                 {"dual_edges", dual_edges},
                 {"cycle_dim", cycle_dim}};
  doc["angles"] = {{"theta_min", theta_min},
                   {"theta_max", theta_max},
                   {"theta_mean_abs", theta_mean_abs},
                   {"phi_min", phi_min},
                   {"phi_max", phi_max}};
  doc["unfolding"] = {{"scale", scale}, {"layout_retries", layout_retries}};
  doc["determinant"] = {{"z_det", complex_json(z_det)}, {"score", score}};
  if (z_oracle) {
    doc["determinant"]["z_oracle"] = complex_json(*z_oracle);
    doc["determinant"]["det_vs_oracle"] = det_vs_oracle;
  } else {
    doc["determinant"]["z_oracle"] = nullptr;
  }
  doc["connection"] = {{"holonomy_dev", holonomy_dev},
                       {"residual_e0", residual_e0},
                       {"residual_e1", residual_e1}};
  doc["kernel"] = {{"sigma_smallest", sigma_smallest}, {"sigma_max", sigma_max}};
  doc["flags"] = {{"zero_pass", zero_pass},       {"oracle_pass", oracle_pass},
                  {"holonomy_pass", holonomy_pass}, {"residual_pass", residual_pass},
                  {"kernel_pass", kernel_pass},    {"pass", pass}};
  doc["settings"] = {{"tolerances",
                      {{"zero", tol.zero},
                       {"holonomy", tol.holonomy},
                       {"residual", tol.residual},
                       {"oracle", tol.oracle},
                       {"det_agreement", tol.det_agreement},
                       {"kernel_rel", tol.kernel_rel},
                       {"kernel_gap_rel", tol.kernel_gap_rel}}},
                     {"oracle_ran", oracle_ran},
                     {"oracle_zero_gate", oracle_zero_gate},
                     {"seed", seed},
                     {"threads_used", threads_used}};
  return indent > 0 ? doc.dump(indent) : doc.dump();
}

std::string weight_table_json(const MeshData& mesh, int indent) {
  const Immersion im =
      Immersion::validate(Triangulation::build(mesh.vertex_count, mesh.faces), mesh.coords);
  const DualGraph dual = DualGraph::build(im.triangulation());
  const EdgeAngles angles = edge_angles(im, dual);
  WeightSystem ws = split_weights(angles);
  direct_weights(ws);

  json rows = json::array();
  for (int k = 0; k < dual.edge_count(); ++k) {
    const DualEdge& e = dual.edges()[k];
    json row = {{"edge", k},
                {"faces", {e.u, e.up}},
                {"vertices", {e.v1, e.v2}},
                {"theta", angles.theta[k]},
                {"phi_u", angles.phi_u[k]},
                {"phi_up", angles.phi_up[k]},
                {"y", complex_json(ws.y[k])}};
    json dagger = json::array();
    for (int j = 0; j < 3; ++j) dagger.push_back(complex_json(ws.y_dagger[3 * k + j]));
    row["y_dagger"] = std::move(dagger);
    json directed = json::array();
    for (int j = 0; j < 6; ++j) directed.push_back(complex_json(ws.y_directed[6 * k + j]));
    row["y_directed"] = std::move(directed);
    rows.push_back(std::move(row));
  }
  json doc = {{"edge_count", dual.edge_count()},
              {"normal_sign", kDefaultNormalSign},
              {"dihedral_sign", kDihedralSign},
              {"edges", std::move(rows)}};
  return indent > 0 ? doc.dump(indent) : doc.dump();
}

}  // namespace kwz
