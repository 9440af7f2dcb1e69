// Acceptance gate: the release-blocking properties of the library, checked
// end to end at fixed tolerances. One line per criterion; exit code is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "kwz/errors.hpp"
#include "kwz/kac_ward.hpp"
#include "kwz/oracle.hpp"
#include "kwz/pipeline.hpp"
#include "kwz/su2.hpp"

using namespace kwz;
using Clock = std::chrono::steady_clock;

namespace {

struct Instance {
  Immersion im;
  DualGraph dual;
  DaggerGraph dag;
  PlanarDecomposition dec;
  EdgeAngles angles;
  WeightSystem ws;
  TurningData turns;
};

Instance make(MeshData m, DecompositionOptions opt = {}) {
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     std::move(m.coords));
  DualGraph dual = DualGraph::build(im.triangulation());
  DaggerGraph dag = DaggerGraph::build(dual);
  PlanarDecomposition dec = build_decomposition(im, dual, opt);
  EdgeAngles angles = edge_angles(im, dual);
  WeightSystem ws = split_weights(angles);
  direct_weights(ws);
  TurningData turns = turning_data(dec, dual, im.triangulation());
  return Instance{std::move(im),     std::move(dual), std::move(dag), std::move(dec),
                  std::move(angles), std::move(ws),   std::move(turns)};
}

int g_failures = 0;
Clock::time_point g_mark;

void begin() { g_mark = Clock::now(); }

void report(int index, const char* name, bool pass, const std::string& detail) {
  const double secs = std::chrono::duration<double>(Clock::now() - g_mark).count();
  std::printf("[%2d/10] %-58s %s (%s, %.2fs)\n", index, name, pass ? "PASS" : "FAIL",
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// representative meshes reused by the structural criteria
std::vector<MeshData> representative_meshes() {
  std::vector<MeshData> out;
  out.push_back(generate(MeshKind::Tetrahedron));
  out.push_back(generate(MeshKind::Bipyramid));
  out.push_back(generate(MeshKind::RandomConvex, 12, 5));
  out.push_back(generate(MeshKind::Perturbed, 10, 11, 0.15));
  return out;
}

}  // namespace

int main() {
  std::vector<VerificationReport> accepted;  // drives the per-mesh criteria

  // 1: transition-matrix determinant equals the squared loop polynomial on
  // random planar graphs with random weights, stable under resplits and
  // re-embeddings
  begin();
  {
    SelfTestOptions opt;  // 50 trials, <= 14 edges, 1e-9 relative
    const SelfTestReport rep = kw_selftest(opt);
    const double budget = std::chrono::duration<double>(Clock::now() - g_mark).count();
    report(1, "determinant = Z^2 on 50 random planar graphs (rel 1e-9)",
           rep.pass && rep.trials >= 50 && budget < 60.0,
           "max dev " + sci(std::max({rep.max_det_vs_oracle, rep.max_resplit_dev,
                                      rep.max_reembed_dev})));
  }

  // 2: regular tetrahedron: frozen weight value, vanishing loop polynomial,
  // vanishing normalized determinant
  begin();
  {
    const MeshData mesh = generate(MeshKind::Tetrahedron);
    Instance t = make(mesh);
    const Cx expect(1.0 / 3.0, -std::sqrt(2.0) / 3.0);
    bool weights_ok = true;
    for (const Cx& y : t.ws.y) weights_ok = weights_ok && std::abs(y - expect) <= 1e-12;
    // the opposite dihedral convention realizes the conjugate branch
    for (const Cx& y : split_weights(edge_angles(t.im, t.dual, -1.0)).y)
      weights_ok = weights_ok && std::abs(y - std::conj(expect)) <= 1e-12;

    const Cx y = t.ws.y[0];
    const Cx z = partition_function(t.dual.skeleton(), t.ws.y);
    const Cx closed = 1.0 + 4.0 * y * y * y + 3.0 * y * y * y * y;
    const bool oracle_ok = std::abs(z) <= 1e-14 && std::abs(z - closed) <= 1e-14;

    const VerificationReport rep = run_check(mesh);
    accepted.push_back(rep);
    const double budget = std::chrono::duration<double>(Clock::now() - g_mark).count();
    report(2, "tetrahedron: weight (1 +- i sqrt2)/3, |Z| <= 1e-14, zero",
           weights_ok && oracle_ok && rep.score <= 1e-10 && budget < 1.0,
           "score " + sci(rep.score) + ", |Z| " + sci(std::abs(z)));
  }

  // 3: triangular bipyramid passes the same zero test
  begin();
  {
    const VerificationReport rep = run_check(generate(MeshKind::Bipyramid));
    accepted.push_back(rep);
    const double budget = std::chrono::duration<double>(Clock::now() - g_mark).count();
    report(3, "bipyramid: zero_score and |Z_oracle| <= 1e-9",
           rep.score <= 1e-9 && rep.oracle_ran && std::abs(*rep.z_oracle) <= 1e-9 &&
               budget < 1.0,
           "score " + sci(rep.score) + ", |Z| " + sci(std::abs(*rep.z_oracle)));
  }

  // 4: 20 random convex + 20 perturbed immersions, zero on every accepted
  // instance, oracle cross-check wherever the cycle space is enumerable
  begin();
  {
    int total = 0, oracled = 0;
    double worst_score = 0, worst_rel = 0;
    bool ok = true;
    for (int i = 0; i < 20; ++i)
      for (int kind = 0; kind < 2; ++kind) {
        const int n = 6 + (i % 15);
        MeshData m = kind == 0 ? generate(MeshKind::RandomConvex, n, 100 + i)
                               : generate(MeshKind::Perturbed, n, 200 + i, 0.2);
        VerificationReport rep;
        try {
          rep = run_check(m);
        } catch (const Error&) {
          continue;  // an instance that fails validation/unfolding is out of scope
        }
        ++total;
        worst_score = std::max(worst_score, rep.score);
        ok = ok && rep.score <= 1e-8;
        if (rep.oracle_ran) {
          ++oracled;
          const double rel = rep.det_vs_oracle / std::max(1.0, std::norm(*rep.z_oracle));
          worst_rel = std::max(worst_rel, rel);
          ok = ok && rel <= 1e-9;
        }
        accepted.push_back(std::move(rep));
      }
    const double budget = std::chrono::duration<double>(Clock::now() - g_mark).count();
    report(4, "40 random immersions: zero <= 1e-8, oracle cross-check",
           ok && total >= 30 && budget < 300.0,
           std::to_string(total) + " accepted/" + std::to_string(oracled) + " oracled, worst " +
               sci(worst_score));
  }

  // 5: the spin connection is flat on every accepted mesh; corrupting one
  // dihedral angle is detected
  begin();
  {
    double worst = 0;
    for (const VerificationReport& rep : accepted) worst = std::max(worst, rep.holonomy_dev);
    Instance t = make(generate(MeshKind::Tetrahedron));
    EdgeAngles bad = t.angles;
    bad.theta[0] += 0.1;
    const double control = flatness_check(build_connection(bad, t.turns),
                                          face_loops(t.dual, t.im.triangulation()));
    report(5, "holonomy <= 1e-8 everywhere; theta+0.1 control >= 1e-2",
           worst <= 1e-8 && control >= 1e-2,
           "worst " + sci(worst) + ", control " + sci(control));
  }

  // 6: the assembled kernel vector has a small residual for both basis
  // spinors on every accepted mesh
  begin();
  {
    double worst = 0;
    for (const VerificationReport& rep : accepted)
      worst = std::max({worst, rep.residual_e0, rep.residual_e1});
    report(6, "eigenvector residual <= 1e-8, both basis spinors", worst <= 1e-8,
           "worst " + sci(worst));
  }

  // 7: Id - Lambda has exactly a two-dimensional near-kernel on every
  // accepted mesh
  begin();
  {
    double worst12 = 0, min3 = 1e300;
    for (const VerificationReport& rep : accepted) {
      worst12 = std::max(worst12, rep.sigma_smallest[1] / rep.sigma_max);
      min3 = std::min(min3, rep.sigma_smallest[2] / rep.sigma_max);
    }
    report(7, "kernel: sigma_1,2 <= 1e-8 * max, sigma_3 >= 1e-4 * max",
           worst12 <= 1e-8 && min3 >= 1e-4,
           "s12/max " + sci(worst12) + ", s3/max " + sci(min3));
  }

  // 8: every face block of J Lambda has spectrum {-1, 0, +1} and the
  // explicit side-length/half-angle vectors are its +-1 eigenvectors
  begin();
  {
    double worst_spec = 0, worst_vec = 0;
    for (MeshData& mesh : representative_meshes()) {
      Instance b = make(std::move(mesh));
      const EmbeddedGraph eg = dagger_embedding(b.dual, b.dag, b.dec, b.ws);
      const Eigen::MatrixXcd lam = transition_matrix(eg);
      const auto blocks = j_lambda_blocks(eg, lam);
      for (int u = 0; u < b.dag.vertex_count(); ++u) {
        if (!b.dag.is_face_vertex(u)) continue;
        const Eigen::MatrixXcd& B = blocks[u];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
        worst_spec = std::max({worst_spec, std::abs(es.eigenvalues()(0) + 1.0),
                               std::abs(es.eigenvalues()(1)), std::abs(es.eigenvalues()(2) - 1.0)});
        std::vector<int> out;
        for (int e = 0; e < eg.directed_count(); ++e)
          if (eg.tail(e) == u) out.push_back(e);
        Eigen::VectorXcd plus(3), minus(3);
        for (int i = 0; i < 3; ++i) {
          const int k = out[i] / 6;
          const int d = (out[i] % 6 == 0) ? 2 * k : 2 * k + 1;
          plus(i) = b.turns.rho[d];
          minus(i) = b.turns.rho[d] * std::polar(1.0, -b.turns.beta[d]);
        }
        worst_vec = std::max({worst_vec, (B * plus - plus).norm() / plus.norm(),
                              (B * minus + minus).norm() / minus.norm()});
      }
    }
    report(8, "face blocks: spectrum {-1,0,1} and explicit eigenvectors",
           worst_spec <= 1e-10 && worst_vec <= 1e-10,
           "spectrum " + sci(worst_spec) + ", vectors " + sci(worst_vec));
  }

  // 9: structural identities of the unfolding angles, the connection
  // matrices, and the quaternion bridge
  begin();
  {
    double worst_angeq = 0, worst_conn = 0;
    for (MeshData& mesh : representative_meshes()) {
      Instance b = make(std::move(mesh));
      const Connection conn = build_connection(b.angles, b.turns);
      for (int d = 0; d < 2 * b.dual.edge_count(); ++d) {
        // e^{i(beta_d - beta_rev)} + e^{-i alpha_d} = 0 around every side
        const Cx lhs = std::polar(1.0, b.turns.beta[d] - b.turns.beta[d ^ 1]);
        worst_angeq = std::max(worst_angeq,
                               std::abs(lhs + std::polar(1.0, -b.turns.alpha[d])));
        worst_conn = std::max(worst_conn,
                              conn.ups[d ^ 1].distance(conn.ups[d].inverse()));
        const Eigen::Matrix2cd m = conn.ups[d].matrix();
        worst_conn = std::max(worst_conn, (m.adjoint() * m - Eigen::Matrix2cd::Identity())
                                              .cwiseAbs()
                                              .maxCoeff());
      }
    }
    Rng rng(123);
    double worst_euler = 0, worst_quat = 0;
    for (int t = 0; t < 10000; ++t) {
      Quaternion q;
      double n2;
      do {
        q = Quaternion{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                       rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        n2 = q.norm();
      } while (n2 < 1e-3);
      const SU2 m1 = from_quaternion(Quaternion{q.a / n2, q.b / n2, q.c / n2, q.d / n2});
      const EulerAngles e = euler_decompose(m1);
      const SU2 c = euler_compose(e);
      const SU2 minus(-c.a(), -c.b());
      worst_euler = std::max(worst_euler, std::min(c.distance(m1), minus.distance(m1)));

      const SU2 m2 = su2_z(rng.uniform(-3.0, 3.0)) * su2_x(rng.uniform(-3.0, 3.0));
      const Quaternion prod = quat_multiply(to_quaternion(m1), to_quaternion(m2));
      worst_quat = std::max(worst_quat, from_quaternion(prod).distance(m1 * m2));
    }
    report(9, "angle identity, connection unitarity/inverse, Euler, quats",
           worst_angeq <= 1e-10 && worst_conn <= 1e-12 && worst_euler <= 1e-10 &&
               worst_quat <= 1e-12,
           "angeq " + sci(worst_angeq) + ", conn " + sci(worst_conn) + ", euler " +
               sci(worst_euler) + ", quat " + sci(worst_quat));
  }

  // 10: the determinant is a function of the undirected weights alone:
  // invariant across planar decompositions and directed resplits
  begin();
  {
    // generic weights (nonzero determinant): relative agreement
    Instance t = make(generate(MeshKind::Tetrahedron));
    EdgeAngles pa = t.angles;
    for (std::size_t k = 0; k < pa.theta.size(); ++k) pa.theta[k] += 0.1 + 0.017 * k;
    WeightSystem pws = split_weights(pa);
    direct_weights(pws);
    const Cx det =
        kw_determinant(transition_matrix(dagger_embedding(t.dual, t.dag, t.dec, pws)));
    DecompositionOptions alt;
    alt.outer_vertex = 1;
    alt.polygon_turn = 0.7;
    Instance t2 = make(generate(MeshKind::Tetrahedron), alt);
    const Cx det_alt =
        kw_determinant(transition_matrix(dagger_embedding(t2.dual, t2.dag, t2.dec, pws)));
    WeightSystem rws = pws;
    Rng rng(99);
    resplit_directed(rws, rng);
    const Cx det_rs =
        kw_determinant(transition_matrix(dagger_embedding(t.dual, t.dag, t.dec, rws)));
    const double rel = std::max(std::abs(det - det_alt), std::abs(det - det_rs)) /
                       std::abs(det);

    // geometric weights (determinant at the zero): absolute agreement
    double abs_dev = 0;
    for (MeshData m : {generate(MeshKind::Tetrahedron), generate(MeshKind::Bipyramid),
                       generate(MeshKind::RandomConvex, 10, 7)}) {
      Instance a = make(m);
      Instance c = make(m, alt);
      const Cx da =
          kw_determinant(transition_matrix(dagger_embedding(a.dual, a.dag, a.dec, a.ws)));
      const Cx dc =
          kw_determinant(transition_matrix(dagger_embedding(c.dual, c.dag, c.dec, c.ws)));
      WeightSystem ws2 = a.ws;
      Rng rng2(99);
      resplit_directed(ws2, rng2);
      const Cx dr =
          kw_determinant(transition_matrix(dagger_embedding(a.dual, a.dag, a.dec, ws2)));
      abs_dev = std::max({abs_dev, std::abs(da - dc), std::abs(da - dr)});
    }
    report(10, "det invariant across decompositions and resplits",
           rel <= 1e-9 && abs_dev <= 1e-12,
           "rel " + sci(rel) + ", at-zero abs " + sci(abs_dev));
  }

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
