#pragma once

#include <string>
#include <vector>

#include "ffdist/forms.hpp"
#include "ffdist/graphs.hpp"
#include "ffdist/numeric.hpp"
#include "ffdist/pointset.hpp"

namespace ffdist {

// Result of a counting run.  `raw` is the number of embeddings.  `normalized`
// is raw * q^edges / |A|^vertices, the count relative to the heuristic for a
// density-1 random predicate; it sits near 1 exactly when the count matches
// the first-order prediction.  `work` tallies elementary candidate visits and
// is what budgets meter.
struct CountReport {
    Int raw = 0;
    Rat normalized = 0;
    long q_power = 0;  // the exponent of q used in `normalized` (= #edges)
    std::string engine;
    uint64_t work = 0;
};

// Number of tuples (x_0, ..., x_{n-1}) in A^n satisfying phi(x_u, x_v) = label
// for every edge u < v of g.  With distinct = true the coordinates must be
// pairwise different.  budget > 0 caps `work`; exceeding it throws
// BudgetExceededError.
CountReport count_graph(const DistanceFn& fn, const DistanceGraph& g, const PointSet& A,
                        bool distinct = false, uint64_t budget = 0);

// Tuples (x_0, ..., x_k) in A^{k+1} with phi(x_{i-1}, x_i) = labels[i-1]:
// k-edge chains with per-edge labels.
CountReport count_paths(const DistanceFn& fn, const std::vector<uint32_t>& labels,
                        const PointSet& A, uint64_t budget = 0);

// Tree embeddings by message passing.  root_counts[x] is the number of
// embeddings that pin the root vertex at point x (nonzero only on A), so the
// total is their sum; exposing the per-root profile lets callers bound the
// worst pinned count.
struct TreeCount {
    CountReport report;
    int root = 0;
    std::vector<Int> root_counts;
};
TreeCount count_tree(const DistanceFn& fn, const DistanceGraph& tree, const PointSet& A,
                     int root = 0, uint64_t budget = 0);

// Closed chains (x_0, ..., x_{n-1}) in A^n with phi(x_{i}, x_{i+1}) = label
// for i < n-1 and phi(x_0, x_{n-1}) = label; coordinates may repeat.  engine:
//   auto      spectral when A is the full space and fn is quadratic, else walk
//   walk      per-source transfer-matrix trace
//   spectral  exact eigenvalue evaluation (full-space quadratic only)
CountReport count_cycles(const DistanceFn& fn, int n, uint32_t label, const PointSet& A,
                         uint64_t budget = 0, const std::string& engine = "auto");

}  // namespace ffdist
