#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffdist/error.hpp"

namespace ffdist {

// Constraint edge between vertex slots u < v.  The orientation matters for
// non-symmetric bilinear forms: the edge imposes phi(x_u, x_v) = label.
struct Edge {
    int u = 0;
    int v = 0;
    uint32_t label = 0;
    bool operator==(const Edge&) const = default;
};

// A finite constraint graph: n vertex slots plus labelled edges.  Labels are
// field-element indices; they are validated against a concrete field only when
// a count is run.  Vertices are 0-based.
class DistanceGraph {
  public:
    DistanceGraph(int n, std::vector<Edge> edges);

    int vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    // per-vertex list of (other endpoint, edge index)
    const std::vector<std::vector<std::pair<int, int>>>& adjacency() const { return adj_; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    int max_degree() const;
    int isolated_count() const;

    bool connected() const;
    bool is_tree() const;   // connected with n - 1 edges
    bool is_path() const;   // tree whose degrees are all <= 2
    bool is_cycle() const;  // connected, every degree exactly 2, n >= 3

    // rewrite every edge label to t
    DistanceGraph with_uniform_label(uint32_t t) const;

    // textual form accepted by parse_graph, e.g. "n=3; e 0 1 l=1; e 1 2 l=1"
    std::string spec() const;

  private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Parse "n=<count>; e <u> <v> l=<label>; ...".  Whitespace is flexible and a
// trailing separator is allowed.
DistanceGraph parse_graph(const std::string& spec);

// Named shapes, all edges carrying `label`:
//   path:<k>          k edges on k + 1 vertices
//   cycle:<n>         n-cycle, n >= 3
//   star:<r>          center 0 with r leaves
//   matching:<m>      m disjoint edges
//   complete:<n>      all pairs joined
//   random-tree:<v>:<seed>   uniform random attachment tree on v vertices
DistanceGraph make_graph(const std::string& shape, uint32_t label);

}  // namespace ffdist
