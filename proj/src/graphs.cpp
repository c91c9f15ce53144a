#include "ffdist/graphs.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace ffdist {

DistanceGraph::DistanceGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adj_(static_cast<std::size_t>(std::max(n, 0))) {
    if (n < 1) throw ConfigParseError("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw IndexOutOfRangeError("edge endpoint out of range");
        if (e.u == e.v) throw ConfigParseError("self-loops are not allowed");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (!seen.insert({e.u, e.v}).second) throw ConfigParseError("duplicate edge");
        adj_[static_cast<std::size_t>(e.u)].push_back({e.v, static_cast<int>(i)});
        adj_[static_cast<std::size_t>(e.v)].push_back({e.u, static_cast<int>(i)});
    }
}

int DistanceGraph::max_degree() const {
    int m = 0;
    for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
    return m;
}

int DistanceGraph::isolated_count() const {
    int c = 0;
    for (int v = 0; v < n_; ++v)
        if (degree(v) == 0) ++c;
    return c;
}

bool DistanceGraph::connected() const {
    std::vector<char> vis(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack = {0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, ei] : adj_[static_cast<std::size_t>(v)])
            if (!vis[static_cast<std::size_t>(w)]) {
                vis[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n_;
}

bool DistanceGraph::is_tree() const {
    return static_cast<int>(edges_.size()) == n_ - 1 && connected();
}

bool DistanceGraph::is_path() const { return is_tree() && max_degree() <= 2; }

bool DistanceGraph::is_cycle() const {
    if (n_ < 3 || static_cast<int>(edges_.size()) != n_) return false;
    for (int v = 0; v < n_; ++v)
        if (degree(v) != 2) return false;
    return connected();
}

DistanceGraph DistanceGraph::with_uniform_label(uint32_t t) const {
    std::vector<Edge> es = edges_;
    for (Edge& e : es) e.label = t;
    return DistanceGraph(n_, std::move(es));
}

std::string DistanceGraph::spec() const {
    std::ostringstream os;
    os << "n=" << n_;
    for (const Edge& e : edges_) os << "; e " << e.u << ' ' << e.v << " l=" << e.label;
    return os.str();
}

DistanceGraph parse_graph(const std::string& spec) {
    int n = -1;
    std::vector<Edge> edges;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::istringstream ps(part);
        std::string tok;
        if (!(ps >> tok)) continue;  // empty segment
        if (tok.rfind("n=", 0) == 0) {
            try {
                n = std::stoi(tok.substr(2));
            } catch (const std::exception&) {
                throw ConfigParseError("bad vertex count in graph spec: " + tok);
            }
        } else if (tok == "e") {
            Edge e;
            std::string l;
            if (!(ps >> e.u >> e.v >> l) || l.rfind("l=", 0) != 0)
                throw ConfigParseError("bad edge in graph spec: " + part);
            try {
                e.label = static_cast<uint32_t>(std::stoul(l.substr(2)));
            } catch (const std::exception&) {
                throw ConfigParseError("bad edge label in graph spec: " + l);
            }
            edges.push_back(e);
        } else {
            throw ConfigParseError("unrecognized token in graph spec: " + tok);
        }
    }
    if (n < 0) throw ConfigParseError("graph spec is missing n=<count>");
    return DistanceGraph(n, std::move(edges));
}

DistanceGraph make_graph(const std::string& shape, uint32_t label) {
    std::vector<std::string> parts;
    std::stringstream ss(shape);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    auto num = [&](std::size_t i) -> long {
        try {
            return std::stol(parts.at(i));
        } catch (const std::exception&) {
            throw ConfigParseError("bad graph shape parameter in: " + shape);
        }
    };
    if (parts.empty()) throw ConfigParseError("empty graph shape");
    const std::string& kind = parts[0];
    std::vector<Edge> edges;
    if (kind == "path" && parts.size() == 2) {
        long k = num(1);
        if (k < 1) throw ZeroParameterError("path needs at least one edge");
        for (int i = 0; i < k; ++i) edges.push_back({i, i + 1, label});
        return DistanceGraph(static_cast<int>(k + 1), std::move(edges));
    }
    if (kind == "cycle" && parts.size() == 2) {
        long n = num(1);
        if (n < 3) throw ZeroParameterError("cycle needs at least three vertices");
        for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, label});
        edges.push_back({0, static_cast<int>(n - 1), label});
        return DistanceGraph(static_cast<int>(n), std::move(edges));
    }
    if (kind == "star" && parts.size() == 2) {
        long r = num(1);
        if (r < 1) throw ZeroParameterError("star needs at least one leaf");
        for (int i = 1; i <= r; ++i) edges.push_back({0, i, label});
        return DistanceGraph(static_cast<int>(r + 1), std::move(edges));
    }
    if (kind == "matching" && parts.size() == 2) {
        long m = num(1);
        if (m < 1) throw ZeroParameterError("matching needs at least one edge");
        for (int i = 0; i < m; ++i) edges.push_back({2 * i, 2 * i + 1, label});
        return DistanceGraph(static_cast<int>(2 * m), std::move(edges));
    }
    if (kind == "complete" && parts.size() == 2) {
        long n = num(1);
        if (n < 2) throw ZeroParameterError("complete graph needs at least two vertices");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.push_back({i, j, label});
        return DistanceGraph(static_cast<int>(n), std::move(edges));
    }
    if (kind == "random-tree" && parts.size() == 3) {
        long v = num(1);
        unsigned long seed = static_cast<unsigned long>(num(2));
        if (v < 2) throw ZeroParameterError("random tree needs at least two vertices");
        std::mt19937_64 rng(seed);
        for (int i = 1; i < v; ++i)
            edges.push_back({static_cast<int>(rng() % static_cast<unsigned long>(i)), i, label});
        return DistanceGraph(static_cast<int>(v), std::move(edges));
    }
    throw ConfigParseError("unknown graph shape: " + shape);
}

}  // namespace ffdist
