// Microbenchmarks for the pipeline's hot paths: mesh validation, planar
// unfolding, transition-matrix assembly, determinant, kernel extraction, and
// the enumeration oracle. Sizes are vertex counts of random convex meshes
// with a fixed seed, so runs are comparable across machines.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>

#include "kwz/kac_ward.hpp"
#include "kwz/oracle.hpp"
#include "kwz/pipeline.hpp"

using namespace kwz;

namespace {

MeshData mesh_for(int n) { return generate(MeshKind::RandomConvex, n, 11); }

struct Built {
  Immersion im;
  DualGraph dual;
  DaggerGraph dag;
  PlanarDecomposition dec;
  WeightSystem ws;
};

Built build_all(int n) {
  MeshData m = mesh_for(n);
  Immersion im = Immersion::validate(Triangulation::build(m.vertex_count, m.faces),
                                     std::move(m.coords));
  DualGraph dual = DualGraph::build(im.triangulation());
  DaggerGraph dag = DaggerGraph::build(dual);
  PlanarDecomposition dec = build_decomposition(im, dual);
  WeightSystem ws = split_weights(edge_angles(im, dual));
  direct_weights(ws);
  return Built{std::move(im), std::move(dual), std::move(dag), std::move(dec),
               std::move(ws)};
}

}  // namespace

static void BM_ValidateMesh(benchmark::State& state) {
  const MeshData m = mesh_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Immersion im =
        Immersion::validate(Triangulation::build(m.vertex_count, m.faces), m.coords);
    benchmark::DoNotOptimize(im);
  }
}
BENCHMARK(BM_ValidateMesh)->Arg(12)->Arg(60);

static void BM_Unfold(benchmark::State& state) {
  const Built b = build_all(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PlanarDecomposition dec = build_decomposition(b.im, b.dual);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_Unfold)->Arg(12)->Arg(40);

static void BM_TransitionMatrix(benchmark::State& state) {
  const Built b = build_all(static_cast<int>(state.range(0)));
  const EmbeddedGraph eg = dagger_embedding(b.dual, b.dag, b.dec, b.ws);
  for (auto _ : state) {
    Eigen::MatrixXcd lam = transition_matrix(eg);
    benchmark::DoNotOptimize(lam.data());
  }
}
BENCHMARK(BM_TransitionMatrix)->Arg(12)->Arg(40);

static void BM_Determinant(benchmark::State& state) {
  const Built b = build_all(static_cast<int>(state.range(0)));
  const Eigen::MatrixXcd lam =
      transition_matrix(dagger_embedding(b.dual, b.dag, b.dec, b.ws));
  for (auto _ : state) {
    Cx det = kw_determinant(lam);
    benchmark::DoNotOptimize(det);
  }
}
BENCHMARK(BM_Determinant)->Arg(12)->Arg(40);

static void BM_KernelSigmas(benchmark::State& state) {
  const Built b = build_all(static_cast<int>(state.range(0)));
  const Eigen::MatrixXcd lam =
      transition_matrix(dagger_embedding(b.dual, b.dag, b.dec, b.ws));
  for (auto _ : state) {
    KernelSigmas ks = kernel_singular_values(lam);
    benchmark::DoNotOptimize(ks.sigma_max);
  }
}
BENCHMARK(BM_KernelSigmas)->Arg(12)->Arg(40);

static void BM_LoopPolynomial(benchmark::State& state) {
  const Built b = build_all(static_cast<int>(state.range(0)));
  const Graph g = b.dual.skeleton();
  for (auto _ : state) {
    Cx z = partition_function(g, b.ws.y);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_LoopPolynomial)->Arg(10)->Arg(16)->Arg(20);

static void BM_FullCheck(benchmark::State& state) {
  const MeshData m = mesh_for(static_cast<int>(state.range(0)));
  CheckOptions opt;
  opt.oracle = OracleMode::Off;
  for (auto _ : state) {
    VerificationReport rep = run_check(m, opt);
    benchmark::DoNotOptimize(rep.score);
  }
}
BENCHMARK(BM_FullCheck)->Arg(12)->Arg(40);

BENCHMARK_MAIN();
