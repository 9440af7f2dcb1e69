#include "kwz/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>
#include <thread>

namespace kwz {

namespace {

// Compensated complex accumulator (Kahan–Neumaier on each component).
struct CxSum {
  double re = 0, re_c = 0, im = 0, im_c = 0;

  static void add(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }

  void add(Cx v) {
    add(re, re_c, v.real());
    add(im, im_c, v.imag());
  }

  Cx value() const { return {re + re_c, im + im_c}; }
};

struct Walker {
  const std::vector<std::vector<int>>* basis;
  const std::vector<Cx>* weights;
  std::vector<char> in;  // membership per edge

  explicit Walker(const std::vector<std::vector<int>>& b, const std::vector<Cx>& w, int edges)
      : basis(&b), weights(&w), in(edges, 0) {}

  void toggle(int cycle) {
    for (int e : (*basis)[cycle]) in[e] ^= 1;
  }

  // Set membership for the subgraph at Gray position `index`.
  void seek(std::uint64_t index) {
    std::fill(in.begin(), in.end(), 0);
    const std::uint64_t code = index ^ (index >> 1);
    for (int b = 0; b < 64; ++b)
      if ((code >> b) & 1) toggle(b);
  }

  Cx product() const {
    Cx p(1, 0);
    const auto& w = *weights;
    for (std::size_t e = 0; e < in.size(); ++e)
      if (in[e]) p *= w[e];
    return p;
  }
};

// Sum of weight products over the Gray-code range [begin, end).
Cx sum_range(const std::vector<std::vector<int>>& basis, const std::vector<Cx>& weights,
             int edges, std::uint64_t begin, std::uint64_t end) {
  Walker walker(basis, weights, edges);
  walker.seek(begin);
  CxSum sum;
  for (std::uint64_t i = begin; i < end; ++i) {
    sum.add(walker.product());
    if (i + 1 < end) walker.toggle(std::countr_zero(i + 1));
  }
  return sum.value();
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KWZ_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

Cx partition_function(const Graph& g, const std::vector<Cx>& weights, int max_dim, int threads) {
  if (weights.size() != g.edges.size())
    fail(ErrorCode::InvalidMesh, "weight count " + std::to_string(weights.size()) +
                                     " does not match edge count " +
                                     std::to_string(g.edges.size()));
  const auto basis = cycle_space_basis(g);
  const int dim = static_cast<int>(basis.size());
  if (dim > max_dim)
    fail(ErrorCode::TooLarge, "cycle space dimension " + std::to_string(dim) +
                                  " exceeds the exhaustive-sum cap " + std::to_string(max_dim));
  const std::uint64_t total = std::uint64_t{1} << dim;
  const int edges = static_cast<int>(g.edges.size());

  const int n_threads = std::clamp(resolve_threads(threads), 1, 64);
  if (dim < 16) return sum_range(basis, weights, edges, 0, total);

  // Fixed 64-way decomposition, partial sums combined in chunk order: the
  // same additions happen in the same order whatever the thread count, so
  // the value is bitwise independent of it. Threads only pick up chunks.
  constexpr int kChunks = 64;
  const std::uint64_t chunk = (total + kChunks - 1) / kChunks;
  std::vector<Cx> partial(kChunks, Cx(0, 0));
  auto run = [&](int first) {
    for (int c = first; c < kChunks; c += n_threads) {
      const std::uint64_t begin = std::min(total, static_cast<std::uint64_t>(c) * chunk);
      const std::uint64_t end = std::min(total, begin + chunk);
      if (begin < end) partial[c] = sum_range(basis, weights, edges, begin, end);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(run, t);
  run(0);
  for (auto& th : pool) th.join();
  CxSum sum;
  for (const Cx& p : partial) sum.add(p);
  return sum.value();
}

std::vector<std::vector<int>> enumerate_even_subgraphs(const Graph& g, int max_dim) {
  const auto basis = cycle_space_basis(g);
  const int dim = static_cast<int>(basis.size());
  if (dim > max_dim)
    fail(ErrorCode::TooLarge, "cycle space dimension " + std::to_string(dim) +
                                  " exceeds the enumeration cap " + std::to_string(max_dim));
  const std::uint64_t total = std::uint64_t{1} << dim;
  static const std::vector<Cx> kNoWeights;
  Walker walker(basis, kNoWeights, static_cast<int>(g.edges.size()));

  std::vector<std::vector<int>> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    walker.seek(i);
    std::vector<int> members;
    for (std::size_t e = 0; e < walker.in.size(); ++e)
      if (walker.in[e]) members.push_back(static_cast<int>(e));
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace kwz
