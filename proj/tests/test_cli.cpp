// End-to-end tests of the command-line tool. The binary path is injected at
// compile time; every case shells out and inspects exit code, stdout, stderr.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "kwz/immersion.hpp"
#include "kwz/mesh_io.hpp"
#include "helpers.hpp"

#ifndef KWZ_CLI_PATH
#error "KWZ_CLI_PATH must point at the built command-line binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string stem = "/tmp/kwz_clitest_io_" + std::to_string(++counter);
  const std::string out = stem + ".out", err = stem + ".err";
  const std::string cmd = std::string(KWZ_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

std::string temp_mesh(const std::string& name, const kwz::MeshData& mesh) {
  const std::string path = "/tmp/kwz_clitest_" + name + ".json";
  kwz::save_mesh(path, mesh);
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage: help exits clean, absent or unknown subcommands are usage errors") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("check").code == 2);  // missing required mesh argument
}

TEST_CASE("gen + check: a generated sphere passes verification") {
  const std::string mesh = "/tmp/kwz_clitest_tetra.json";
  CHECK(run_cli("gen tetrahedron -o " + mesh).code == 0);
  kwz::MeshData m = kwz::load_mesh(mesh);
  CHECK(m.vertex_count == 4);
  CHECK(m.faces.size() == 4);

  RunResult check = run_cli("check " + mesh);
  CHECK(check.code == 0);
  const json rep = json::parse(check.out);
  CHECK(rep["flags"]["pass"] == true);
  CHECK(rep["mesh"]["vertices"] == 4);

  RunResult compact = run_cli("check --compact " + mesh);
  CHECK(compact.code == 0);
  // single-line JSON: exactly one newline, at the end
  CHECK(compact.out.find('\n') == compact.out.size() - 1);
  CHECK(json::parse(compact.out)["flags"]["pass"] == true);

  RunResult forced = run_cli("check --oracle " + mesh);
  CHECK(forced.code == 0);
  CHECK(json::parse(forced.out)["flags"]["oracle_pass"] == true);
  std::remove(mesh.c_str());
}

TEST_CASE("gen determinism and seed policy for random kinds") {
  const std::string a = "/tmp/kwz_clitest_rc_a.json";
  const std::string b = "/tmp/kwz_clitest_rc_b.json";
  CHECK(run_cli("gen random-convex -n 15 --seed 7 -o " + a).code == 0);
  CHECK(run_cli("gen random-convex -n 15 --seed 7 -o " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  std::remove(a.c_str());
  std::remove(b.c_str());

  RunResult no_seed = run_cli("gen random-convex -n 15");
  CHECK(no_seed.code == 2);
  CHECK(json::parse(no_seed.err)["error"] == "InvalidMesh");

  CHECK(run_cli("gen random-convex -n 3 --seed 1").code == 2);
  CHECK(run_cli("gen moebius --seed 1").code == 2);

  // perturbed kind accepts an amplitude and stays a valid immersion
  const std::string p = "/tmp/kwz_clitest_pert.json";
  CHECK(run_cli("gen perturbed -n 12 --seed 3 --amplitude 0.15 -o " + p).code == 0);
  CHECK(run_cli("check " + p).code == 0);
  std::remove(p.c_str());
}

TEST_CASE("input problems exit 2 with a typed JSON error on stderr") {
  RunResult missing = run_cli("check /tmp/kwz_clitest_no_such_file.json");
  CHECK(missing.code == 2);
  CHECK(json::parse(missing.err)["error"] == "IoError");

  const std::string garbled = "/tmp/kwz_clitest_garbled.json";
  {
    std::ofstream os(garbled);
    os << "{\"vertices\": oops";
  }
  RunResult bad = run_cli("check " + garbled);
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.err)["error"] == "InvalidMesh");
  std::remove(garbled.c_str());

  // one flipped face breaks the global orientation
  kwz::MeshData m = kwz::generate(kwz::MeshKind::Tetrahedron);
  std::swap(m.faces[0][0], m.faces[0][1]);
  const std::string flipped = temp_mesh("flipped", m);
  RunResult r = run_cli("check " + flipped);
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "InconsistentOrientation");
  std::remove(flipped.c_str());

  CHECK(run_cli("check --oracle --no-oracle /tmp/unused.json").code == 2);
}

TEST_CASE("verification failure exits 1 and still prints the full report") {
  const std::string mesh = temp_mesh("tolzero", kwz::generate(kwz::MeshKind::Tetrahedron));
  RunResult r = run_cli("check --tol-zero 1e-40 " + mesh);
  CHECK(r.code == 1);
  const json rep = json::parse(r.out);
  CHECK(rep["flags"]["zero_pass"] == false);
  CHECK(rep["flags"]["pass"] == false);
  std::remove(mesh.c_str());
}

TEST_CASE("selftest: identity holds on random graphs, also under the mirror flag") {
  RunResult r = run_cli("selftest --trials 5 --seed 11");
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["pass"] == true);
  CHECK(rep["trials"] == 5);

  // flipping every turning angle mirrors the drawing; the determinant
  // identity is reflection-invariant, so this consistency control passes too
  CHECK(run_cli("selftest --trials 5 --seed 11 --flip-turning").code == 0);
  CHECK(run_cli("selftest --trials 0").code == 0);
}

TEST_CASE("weights: one JSON line per dual edge") {
  const std::string mesh = temp_mesh("weights", kwz::generate(kwz::MeshKind::Tetrahedron));
  RunResult r = run_cli("weights " + mesh);
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    const json row = json::parse(line);
    CHECK(row["theta"].get<double>() == doctest::Approx(kwz_test::tetra_theta()));
    CHECK(row["y_re"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(row["y_im"].get<double>() == doctest::Approx(-std::sqrt(2.0) / 3.0));
    CHECK(row.contains("u"));
    CHECK(row.contains("up"));
    CHECK(row.contains("phi_u"));
    CHECK(row.contains("phi_up"));
    ++rows;
  }
  CHECK(rows == 6);
  std::remove(mesh.c_str());
}

TEST_CASE("unfold-svg renders to stdout or a file") {
  const std::string mesh = temp_mesh("svg", kwz::generate(kwz::MeshKind::Bipyramid));
  RunResult r = run_cli("unfold-svg " + mesh);
  CHECK(r.code == 0);
  CHECK(r.out.find("<svg") != std::string::npos);
  CHECK(r.out.find("</svg>") != std::string::npos);

  const std::string svg_path = "/tmp/kwz_clitest_out.svg";
  CHECK(run_cli("unfold-svg " + mesh + " -o " + svg_path).code == 0);
  CHECK(slurp(svg_path) == r.out);
  std::remove(svg_path.c_str());
  std::remove(mesh.c_str());
}

}  // TEST_SUITE
