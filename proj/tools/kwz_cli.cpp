// kwz: verify that the geometric edge weights of a triangulated sphere
// immersion are zeros of the dual graph's loop polynomial.
//
// Subcommands: check, gen, selftest, weights, unfold-svg.
// Exit codes: 0 = pass, 1 = verification failure, 2 = input/usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kwz/kac_ward.hpp"
#include "kwz/mesh_io.hpp"
#include "kwz/pipeline.hpp"
#include "kwz/weights.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) kwz::fail(kwz::ErrorCode::IoError, "cannot open '" + path + "' for writing");
  os << text;
  if (!os.flush()) kwz::fail(kwz::ErrorCode::IoError, "short write to '" + path + "'");
}

int cmd_check(const std::string& mesh_path, const kwz::CheckOptions& opt, bool compact) {
  const kwz::MeshData mesh = kwz::load_mesh(mesh_path);
  const kwz::VerificationReport rep = kwz::run_check(mesh, opt);
  std::cout << rep.to_json(compact ? 0 : 2) << '\n';
  return rep.pass ? 0 : 1;
}

int cmd_gen(const std::string& kind_name, int n, std::uint64_t seed, double amplitude,
            const std::string& out_path) {
  kwz::MeshKind kind;
  if (kind_name == "tetrahedron")
    kind = kwz::MeshKind::Tetrahedron;
  else if (kind_name == "bipyramid")
    kind = kwz::MeshKind::Bipyramid;
  else if (kind_name == "random-convex")
    kind = kwz::MeshKind::RandomConvex;
  else if (kind_name == "perturbed")
    kind = kwz::MeshKind::Perturbed;
  else
    kwz::fail(kwz::ErrorCode::InvalidMesh, "unknown mesh kind '" + kind_name + "'");
  const kwz::MeshData mesh = kwz::generate(kind, n, seed, amplitude);
  write_output(out_path, kwz::mesh_to_json(mesh, 2) + "\n");
  return 0;
}

int cmd_selftest(const kwz::SelfTestOptions& opt) {
  const kwz::SelfTestReport rep = kwz::kw_selftest(opt);
  std::cout << rep.to_json(2) << '\n';
  return rep.pass ? 0 : 1;
}

int cmd_weights(const std::string& mesh_path) {
  const kwz::MeshData mesh = kwz::load_mesh(mesh_path);
  const kwz::Immersion im = kwz::Immersion::validate(
      kwz::Triangulation::build(mesh.vertex_count, mesh.faces), mesh.coords);
  const kwz::DualGraph dual = kwz::DualGraph::build(im.triangulation());
  const kwz::EdgeAngles angles = kwz::edge_angles(im, dual);
  const kwz::WeightSystem ws = kwz::split_weights(angles);
  for (int k = 0; k < dual.edge_count(); ++k) {
    const kwz::DualEdge& e = dual.edges()[k];
    const json row = {{"u", e.u},
                      {"up", e.up},
                      {"theta", angles.theta[k]},
                      {"phi_u", angles.phi_u[k]},
                      {"phi_up", angles.phi_up[k]},
                      {"y_re", ws.y[k].real()},
                      {"y_im", ws.y[k].imag()}};
    std::cout << row.dump() << '\n';
  }
  return 0;
}

int cmd_unfold_svg(const std::string& mesh_path, const std::string& out_path) {
  const kwz::MeshData mesh = kwz::load_mesh(mesh_path);
  const kwz::Immersion im = kwz::Immersion::validate(
      kwz::Triangulation::build(mesh.vertex_count, mesh.faces), mesh.coords);
  const kwz::DualGraph dual = kwz::DualGraph::build(im.triangulation());
  const kwz::PlanarDecomposition dec = kwz::build_decomposition(im, dual);
  std::ostringstream os;
  kwz::write_svg(os, dec, dual);
  write_output(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loop-polynomial zero verifier for immersed triangulated spheres"};
  app.require_subcommand(1);

  // check
  std::string check_mesh;
  kwz::CheckOptions opt;
  bool force_oracle = false, no_oracle = false, compact = false;
  CLI::App* check = app.add_subcommand("check", "verify a mesh end to end, report as JSON");
  check->add_option("mesh", check_mesh, "mesh JSON file")->required();
  check->add_option("--tol-zero", opt.tol.zero, "zero-score gate")->capture_default_str();
  check->add_option("--tol-holonomy", opt.tol.holonomy, "max holonomy deviation")->capture_default_str();
  check->add_option("--tol-residual", opt.tol.residual, "eigenvector residual gate")->capture_default_str();
  check->add_option("--tol-oracle", opt.tol.oracle, "|Z_oracle| gate with --oracle")->capture_default_str();
  check->add_flag("--oracle", force_oracle,
                  "require the enumeration oracle and gate on |Z_oracle|");
  check->add_flag("--no-oracle", no_oracle, "skip the enumeration oracle");
  check->add_option("--threads", opt.threads, "oracle threads (0 = KWZ_THREADS/auto)")->capture_default_str();
  check->add_option("--seed", opt.seed, "seed recorded in the report")->capture_default_str();
  check->add_flag("--compact", compact, "single-line JSON output");

  // gen
  std::string gen_kind, gen_out;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  double gen_amp = 0.2;
  bool gen_seed_set = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a mesh JSON file");
  gen->add_option("kind", gen_kind, "tetrahedron | bipyramid | random-convex | perturbed")
      ->required();
  gen->add_option("-n,--vertices", gen_n, "vertex count (random kinds)")->capture_default_str();
  gen->add_option_function<std::uint64_t>(
         "--seed", [&](const std::uint64_t& s) { gen_seed = s; gen_seed_set = true; },
         "RNG seed (required for random kinds)");
  gen->add_option("--amplitude", gen_amp, "radial noise amplitude (perturbed)")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "output path (default: stdout)");

  // selftest
  kwz::SelfTestOptions st;
  bool flip_turning = false;
  CLI::App* selftest = app.add_subcommand(
      "selftest", "determinant identity on random planar graphs with random weights");
  selftest->add_option("--trials", st.trials, "number of graphs")->capture_default_str();
  selftest->add_option("--max-edges", st.max_edges, "edge cap per graph")->capture_default_str();
  selftest->add_option("--seed", st.seed, "RNG seed")->capture_default_str();
  selftest->add_option("--rel-tol", st.rel_tol, "relative agreement tolerance")->capture_default_str();
  selftest
      ->add_flag("--flip-turning", flip_turning,
                 "negative control: flip the sign of every turning angle")
      ->group("");  // hidden

  // weights
  std::string weights_mesh;
  CLI::App* weights = app.add_subcommand("weights", "per-edge weight table as JSON lines");
  weights->add_option("mesh", weights_mesh, "mesh JSON file")->required();

  // unfold-svg
  std::string svg_mesh, svg_out;
  CLI::App* unfold = app.add_subcommand("unfold-svg", "planar decomposition as an SVG drawing");
  unfold->add_option("mesh", svg_mesh, "mesh JSON file")->required();
  unfold->add_option("-o,--output", svg_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
  }

  try {
    if (check->parsed()) {
      if (force_oracle && no_oracle)
        kwz::fail(kwz::ErrorCode::InvalidMesh, "--oracle conflicts with --no-oracle");
      if (force_oracle) {
        opt.oracle = kwz::OracleMode::On;
        opt.oracle_zero_gate = true;
      } else if (no_oracle) {
        opt.oracle = kwz::OracleMode::Off;
      }
      return cmd_check(check_mesh, opt, compact);
    }
    if (gen->parsed()) {
      const bool random_kind = gen_kind == "random-convex" || gen_kind == "perturbed";
      if (random_kind && !gen_seed_set)
        kwz::fail(kwz::ErrorCode::InvalidMesh,
                  "--seed is required for random mesh kinds (results are seed-deterministic)");
      if (random_kind && gen_n < 4)
        kwz::fail(kwz::ErrorCode::InvalidMesh, "-n >= 4 is required for random mesh kinds");
      return cmd_gen(gen_kind, gen_n, gen_seed, gen_kind == "perturbed" ? gen_amp : 0.0,
                     gen_out);
    }
    if (selftest->parsed()) {
      if (flip_turning) st.turning_sign = -1.0;
      return cmd_selftest(st);
    }
    if (weights->parsed()) return cmd_weights(weights_mesh);
    if (unfold->parsed()) return cmd_unfold_svg(svg_mesh, svg_out);
  } catch (const kwz::Error& e) {
    std::cerr << json{{"error", e.code_name()}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  return 2;
}
