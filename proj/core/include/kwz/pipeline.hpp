#pragma once

#include <optional>
#include <string>

#include "kwz/kac_ward.hpp"
#include "kwz/mesh_io.hpp"
#include "kwz/su2.hpp"

namespace kwz {

struct Tolerances {
  double zero = 1e-9;             // zero_score gate
  double holonomy = 1e-8;         // max loop deviation from identity
  double residual = 1e-8;         // eigenvector residual, both basis spinors
  double oracle = 1e-9;           // |Z_oracle| gate (when the oracle runs)
  double det_agreement = 1e-9;    // |det - Z^2| <= tol * max(1, |Z|^2)
  double kernel_rel = 1e-8;       // sigma_1, sigma_2 <= rel * sigma_max
  double kernel_gap_rel = 1e-4;   // sigma_3 >= gap * sigma_max
};

enum class OracleMode { Auto, On, Off };  // Auto: run iff cycle dim <= cap

struct CheckOptions {
  Tolerances tol;
  OracleMode oracle = OracleMode::Auto;
  bool oracle_zero_gate = false;  // also gate on |Z_oracle| <= tol.oracle
  DecompositionOptions layout;
  int threads = 0;  // 0 = KWZ_THREADS / hardware
  std::uint64_t seed = 0;  // recorded; reserved for layout jitter variants
};

// Everything cmd_check measures, plus the pass flags derived from it.
struct VerificationReport {
  // mesh statistics
  int vertices = 0, edges = 0, faces = 0, dual_edges = 0;
  int cycle_dim = 0;
  // angle summary
  double theta_min = 0, theta_max = 0, theta_mean_abs = 0;
  double phi_min = 0, phi_max = 0;
  // unfolding
  double scale = 0;
  int layout_retries = 0;
  // determinant
  Cx z_det{0, 0};
  double score = 0;  // zero_score
  std::optional<Cx> z_oracle;
  double det_vs_oracle = 0;  // |z_det - z_oracle^2|, when the oracle ran
  // connection
  double holonomy_dev = 0;
  double residual_e0 = 0, residual_e1 = 0;  // spinor (1,0), (0,1)
  // kernel
  std::vector<double> sigma_smallest;
  double sigma_max = 0;
  // flags (each recomputable from the numbers above and the tolerances)
  bool zero_pass = false, oracle_pass = false, holonomy_pass = false,
       residual_pass = false, kernel_pass = false, pass = false;
  // provenance
  Tolerances tol;
  bool oracle_ran = false;
  bool oracle_zero_gate = false;
  std::uint64_t seed = 0;
  int threads_used = 1;

  void recompute_flags();
  std::string to_json(int indent = 2) const;
};

// Full verification pipeline: validate -> angles -> weights -> unfolding ->
// transition matrix -> determinant + kernel -> connection -> holonomy ->
// eigenvector -> report. Mesh/geometry problems throw Error; numeric
// verification outcomes land in the flags.
VerificationReport run_check(const MeshData& mesh, const CheckOptions& opt = {});

// Per-dual-edge weight table used by cmd_weights: angles and weights, one
// row per dual edge, as JSON.
std::string weight_table_json(const MeshData& mesh, int indent = 2);

}  // namespace kwz
