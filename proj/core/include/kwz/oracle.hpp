#pragma once

#include <complex>
#include <vector>

#include "kwz/surface_graph.hpp"

namespace kwz {

using Cx = std::complex<double>;

// Hard cap on the cycle-space dimension for exhaustive enumeration.
inline constexpr int kMaxCycleDim = 26;

// Resolve a thread-count request: 0 means KWZ_THREADS if set, otherwise
// hardware concurrency; always at least 1.
int resolve_threads(int requested);

// Loop polynomial (even-subgraph generating function) of the graph at the
// given per-edge weights:  Z = sum over even subgraphs of prod_{e} x_e.
// Exhaustive Gray-code walk over the cycle space with a full product per
// step and compensated summation. Large walks use a fixed 64-way range
// decomposition whose partial sums combine in range order; threads only
// execute the ranges, so the value is bitwise independent of the thread
// count. Throws TooLarge above max_dim.
Cx partition_function(const Graph& g, const std::vector<Cx>& x,
                      int max_dim = kMaxCycleDim, int threads = 0);

// All even edge subsets as sorted edge-id lists (small graphs only).
std::vector<std::vector<int>> enumerate_even_subgraphs(const Graph& g,
                                                       int max_dim = 20);

}  // namespace kwz
