#include "ffdist/counts.hpp"

#include <algorithm>
#include <tuple>

#include "ffdist/charsums.hpp"
#include "ffdist/error.hpp"

namespace ffdist {

namespace {

void require_labels(const FiniteField& F, const DistanceGraph& g) {
    for (const Edge& e : g.edges()) F.require_range(e.label);
}

Rat normalize(const Int& raw, long q, int n_edges, uint64_t a_size, int n_vertices) {
    if (a_size == 0) return Rat(0);
    Rat r(raw);
    r *= rat_pow(Rat(q), static_cast<unsigned long>(n_edges));
    r /= rat_pow(Rat(Int(static_cast<unsigned long>(a_size))), static_cast<unsigned long>(n_vertices));
    return r;
}

void charge(uint64_t& work, uint64_t budget) {
    ++work;
    if (budget != 0 && work > budget) throw BudgetExceededError("count exceeded its work budget");
}

// pick the integer accumulator: u128 when the worst-case count fits, mpz else
bool use_u128(uint64_t a_size, int n_vertices) {
    if (a_size == 0) return true;
    return fits_u128(int_pow(Int(static_cast<unsigned long>(a_size)),
                             static_cast<unsigned long>(n_vertices)));
}

Int acc_to_int(u128 v) { return to_int(v); }
Int acc_to_int(const Int& v) { return v; }

// ---------------------------------------------------------------- backtrack

// a constraint from an already-placed vertex: if this_is_left, the candidate x
// must satisfy phi(x, placed) = label, else phi(placed, x) = label
struct Need {
    int placed_pos;
    bool this_is_left;
    uint32_t label;
};

CountReport backtrack_graph(const DistanceFn& fn, const DistanceGraph& g, const PointSet& A,
                            bool distinct, uint64_t budget) {
    const int n = g.vertices();
    CountReport out;
    out.engine = "backtrack";
    out.q_power = static_cast<long>(g.edges().size());

    // greedy elimination order over non-isolated vertices: most placed
    // neighbors first, then highest degree, then lowest index
    std::vector<int> order;
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    for (;;) {
        int best = -1;
        std::tuple<int, int, int> best_key{-1, -1, 0};
        for (int v = 0; v < n; ++v) {
            if (chosen[static_cast<std::size_t>(v)] || g.degree(v) == 0) continue;
            int placed_n = 0;
            for (auto [w, ei] : g.adjacency()[static_cast<std::size_t>(v)])
                if (chosen[static_cast<std::size_t>(w)]) ++placed_n;
            std::tuple<int, int, int> key{placed_n, g.degree(v), -v};
            if (key > best_key) {
                best_key = key;
                best = v;
            }
        }
        if (best < 0) break;
        chosen[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
    }

    const int m = static_cast<int>(order.size());
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<std::vector<Need>> needs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        for (auto [w, ei] : g.adjacency()[static_cast<std::size_t>(v)]) {
            int j = pos[static_cast<std::size_t>(w)];
            if (j < 0 || j >= i) continue;
            const Edge& e = g.edges()[static_cast<std::size_t>(ei)];
            needs[static_cast<std::size_t>(i)].push_back({j, e.u == v, e.label});
        }
    }

    const VectorSpace& V = fn.space();
    std::vector<uint32_t> point(static_cast<std::size_t>(m), 0);
    IndexBitset used(distinct ? V.points() : 0);
    uint64_t found = 0;

    auto accept = [&](int depth, uint32_t x) -> bool {
        charge(out.work, budget);
        if (!A.contains(x)) return false;
        if (distinct && used.test(x)) return false;
        const auto& nd = needs[static_cast<std::size_t>(depth)];
        for (std::size_t c = 1; c < nd.size(); ++c) {
            uint32_t other = point[static_cast<std::size_t>(nd[c].placed_pos)];
            uint32_t got = nd[c].this_is_left ? fn.phi(x, other) : fn.phi(other, x);
            if (got != nd[c].label) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == m) {
            ++found;
            return;
        }
        auto place = [&](uint32_t x) {
            if (!accept(depth, x)) return;
            point[static_cast<std::size_t>(depth)] = x;
            if (distinct) used.set(x);
            self(self, depth + 1);
            if (distinct) used.reset(x);
        };
        const auto& nd = needs[static_cast<std::size_t>(depth)];
        if (nd.empty()) {
            for (uint32_t x : A.points()) place(x);
        } else {
            uint32_t anchor = point[static_cast<std::size_t>(nd[0].placed_pos)];
            if (nd[0].this_is_left)
                fn.for_left_neighbors(anchor, nd[0].label, place);
            else
                fn.for_right_neighbors(anchor, nd[0].label, place);
        }
    };
    rec(rec, 0);

    // isolated vertices are unconstrained: they contribute a plain power of
    // |A|, or a falling factorial when coordinates must stay distinct
    Int raw(static_cast<unsigned long>(found));
    int iso = n - m;
    if (iso > 0) {
        if (distinct) {
            for (int i = 0; i < iso; ++i) {
                Int term = Int(static_cast<unsigned long>(A.size())) - m - i;
                if (term <= 0) {
                    raw = 0;
                    break;
                }
                raw *= term;
            }
        } else {
            raw *= int_pow(Int(static_cast<unsigned long>(A.size())),
                           static_cast<unsigned long>(iso));
        }
    }
    out.raw = raw;
    out.normalized = normalize(out.raw, V.field().q(), static_cast<int>(g.edges().size()),
                               A.size(), n);
    return out;
}

// ----------------------------------------------------------------- layer DP

template <class Acc>
std::pair<Int, uint64_t> run_paths(const DistanceFn& fn, const std::vector<uint32_t>& labels,
                                   const PointSet& A, uint64_t budget) {
    const VectorSpace& V = fn.space();
    std::vector<Acc> cur(V.points(), Acc(0)), nxt(V.points(), Acc(0));
    for (uint32_t x : A.points()) cur[x] = Acc(1);
    uint64_t work = 0;
    for (uint32_t l : labels) {
        std::fill(nxt.begin(), nxt.end(), Acc(0));
        for (uint32_t x : A.points()) {
            if (cur[x] == Acc(0)) continue;
            fn.for_right_neighbors(x, l, [&](uint32_t y) {
                charge(work, budget);
                if (A.contains(y)) nxt[y] += cur[x];
            });
        }
        std::swap(cur, nxt);
    }
    Acc total(0);
    for (uint32_t x : A.points()) total += cur[x];
    return {acc_to_int(total), work};
}

// ----------------------------------------------------------- message passing

template <class Acc>
std::pair<Int, std::vector<Int>> run_tree(const DistanceFn& fn, const DistanceGraph& g,
                                          const PointSet& A, int root, uint64_t budget,
                                          uint64_t& work) {
    const VectorSpace& V = fn.space();
    const int n = g.vertices();

    // BFS orientation away from the root
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> bfs;
    bfs.reserve(static_cast<std::size_t>(n));
    bfs.push_back(root);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(root)] = 1;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
        int v = bfs[head];
        for (auto [w, ei] : g.adjacency()[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                parent[static_cast<std::size_t>(w)] = v;
                bfs.push_back(w);
            }
    }

    std::vector<std::vector<Acc>> msg(static_cast<std::size_t>(n));
    for (std::size_t i = bfs.size(); i-- > 0;) {
        int v = bfs[i];
        auto& mv = msg[static_cast<std::size_t>(v)];
        mv.assign(V.points(), Acc(0));
        for (uint32_t x : A.points()) mv[x] = Acc(1);
        for (auto [c, ei] : g.adjacency()[static_cast<std::size_t>(v)]) {
            if (parent[static_cast<std::size_t>(c)] != v) continue;
            const Edge& e = g.edges()[static_cast<std::size_t>(ei)];
            auto& mc = msg[static_cast<std::size_t>(c)];
            std::vector<Acc> s(V.points(), Acc(0));
            for (uint32_t y : A.points()) {
                if (mc[y] == Acc(0)) continue;
                auto scatter = [&](uint32_t x) {
                    charge(work, budget);
                    s[x] += mc[y];
                };
                // edge constraint is phi(x_{e.u}, x_{e.v}) = label
                if (e.u == v)
                    fn.for_left_neighbors(y, e.label, scatter);
                else
                    fn.for_right_neighbors(y, e.label, scatter);
            }
            for (uint32_t x : A.points()) mv[x] *= s[x];
            std::vector<Acc>().swap(mc);
        }
    }

    auto& mr = msg[static_cast<std::size_t>(root)];
    Acc total(0);
    std::vector<Int> root_counts(V.points(), Int(0));
    for (uint32_t x : A.points()) {
        total += mr[x];
        root_counts[x] = acc_to_int(mr[x]);
    }
    return {acc_to_int(total), std::move(root_counts)};
}

// ------------------------------------------------------------------ walk DP

template <class Acc>
std::pair<Int, uint64_t> run_cycle_walks(const DistanceFn& fn, int n, uint32_t label,
                                         const PointSet& A, uint64_t budget) {
    const VectorSpace& V = fn.space();
    std::vector<Acc> cur(V.points(), Acc(0)), nxt(V.points(), Acc(0));
    std::vector<uint32_t> cur_active, nxt_active;
    uint64_t work = 0;
    Acc total(0);
    for (uint32_t s : A.points()) {
        cur[s] = Acc(1);
        cur_active.assign(1, s);
        for (int step = 0; step < n - 1; ++step) {
            nxt_active.clear();
            for (uint32_t x : cur_active) {
                fn.for_right_neighbors(x, label, [&](uint32_t y) {
                    charge(work, budget);
                    if (!A.contains(y)) return;
                    if (nxt[y] == Acc(0)) nxt_active.push_back(y);
                    nxt[y] += cur[x];
                });
            }
            for (uint32_t x : cur_active) cur[x] = Acc(0);
            std::swap(cur, nxt);
            std::swap(cur_active, nxt_active);
        }
        // close the chain: the last point must satisfy phi(x_0, x_{n-1}) = label
        fn.for_right_neighbors(s, label, [&](uint32_t y) {
            charge(work, budget);
            if (A.contains(y)) total += cur[y];
        });
        for (uint32_t x : cur_active) cur[x] = Acc(0);
    }
    return {acc_to_int(total), work};
}

// ----------------------------------------------------------- spectral cycles

// Closed-form size of the level set { x : Q(x) = u } for a non-degenerate
// quadratic form in d variables whose Gram determinant is det (the classical
// point counts of affine quadrics).
Int quadric_count(const FiniteField& F, int d, uint32_t det, uint32_t u) {
    const long q = F.q();
    if (d % 2 == 0) {
        uint32_t disc = det;
        if ((d / 2) % 2 == 1) disc = F.neg(disc);
        Int base = int_pow(Int(q), static_cast<unsigned long>(d - 1));
        Int half = int_pow(Int(q), static_cast<unsigned long>((d - 2) / 2));
        long v = (u == 0) ? q - 1 : -1;
        return base + v * half * F.eta(disc);
    }
    Int base = int_pow(Int(q), static_cast<unsigned long>(d - 1));
    if (u == 0) return base;
    Int half = int_pow(Int(q), static_cast<unsigned long>((d - 1) / 2));
    uint32_t arg = F.mul(u, det);
    if (((d - 1) / 2) % 2 == 1) arg = F.neg(arg);
    return base + half * F.eta(arg);
}

// Exact cycle count over the full space via the eigenvalues of the adjacency
// operator of { (x, y) : Q(x - y) = t }.  The operator is diagonalized by the
// additive characters; the eigenvalue at character m depends only on
// u = Q'(m) (Q' the dual form), and evaluates through Gauss sums to
//   lambda(u) = q^{-1} eta(a) G^d sum_{j != 0} eta(j)^d chi(-j t - u / (4 j)).
// Both the eigenvalue multiplicities (level-set sizes of Q') and the final sum
// are exact integers, accumulated in Z[zeta_p] with big coefficients.
CountReport spectral_cycles(const DistanceFn& fn, int n, uint32_t t) {
    const VectorSpace& V = fn.space();
    const FiniteField& F = V.field();
    const long q = F.q();
    const int d = V.dim();
    const int p = static_cast<int>(F.p());

    CountReport out;
    out.engine = "spectral";
    out.q_power = n;

    uint32_t a = fn.canonical_a();
    uint32_t det_dual = F.inv(a);  // Gram determinant of diag(1, ..., 1, a^{-1})
    CyclotomicInt Gd = gauss_sum(F).exact.pow(static_cast<unsigned long>(d));
    const uint32_t inv4 = F.inv(F.from_integer(4));

    Int check_total = 0;
    CyclotomicBig acc(p);
    for (long ul = 0; ul < q; ++ul) {
        uint32_t u = static_cast<uint32_t>(ul);
        Int mult = quadric_count(F, d, det_dual, u);
        check_total += mult;
        if (u == 0) mult -= 1;  // the trivial character is handled separately
        if (mult == 0) continue;
        CyclotomicInt kl(p);
        uint32_t u4 = F.mul(u, inv4);
        for (uint32_t j = 1; j < static_cast<uint32_t>(q); ++j) {
            out.work++;
            uint32_t e = F.neg(F.add(F.mul(j, t), F.mul(u4, F.inv(j))));
            kl.add_root_scaled(F.trace(e), (d % 2 == 1) ? F.eta(j) : 1);
        }
        CyclotomicInt lam =
            (Gd * kl * static_cast<long long>(F.eta(a))).div_exact(q);
        acc += widen(lam).pow(static_cast<unsigned long>(n)) * mult;
    }
    if (check_total != int_pow(Int(q), static_cast<unsigned long>(d)))
        throw Error("internal: eigenvalue multiplicities do not cover the space");
    if (!acc.is_integer()) throw Error("internal: spectral cycle sum is not an integer");

    Int st(static_cast<unsigned long>(fn.sphere(t).size()));
    out.raw = int_pow(st, static_cast<unsigned long>(n)) + acc.integer_value();
    if (out.raw < 0) throw Error("internal: negative spectral cycle count");
    out.normalized = normalize(out.raw, q, n, V.points(), n);
    return out;
}

}  // namespace

CountReport count_graph(const DistanceFn& fn, const DistanceGraph& g, const PointSet& A,
                        bool distinct, uint64_t budget) {
    if (&A.space() != &fn.space()) throw DimensionMismatchError("set from a different space");
    require_labels(fn.space().field(), g);
    return backtrack_graph(fn, g, A, distinct, budget);
}

CountReport count_paths(const DistanceFn& fn, const std::vector<uint32_t>& labels,
                        const PointSet& A, uint64_t budget) {
    if (&A.space() != &fn.space()) throw DimensionMismatchError("set from a different space");
    if (labels.empty()) throw ZeroParameterError("a chain needs at least one edge");
    const FiniteField& F = fn.space().field();
    uint64_t bound_max = 0;
    for (uint32_t l : labels) {
        F.require_range(l);
        bound_max = std::max(bound_max, fn.neighbor_bound(l));
    }
    if (budget != 0) {
        Int est = Int(static_cast<unsigned long>(A.size())) * static_cast<unsigned long>(labels.size()) *
                  static_cast<unsigned long>(bound_max);
        if (est > Int(static_cast<unsigned long>(budget)))
            throw BudgetExceededError("chain count would exceed its work budget");
    }

    CountReport out;
    out.engine = "layer-dp";
    out.q_power = static_cast<long>(labels.size());
    const int n_vertices = static_cast<int>(labels.size()) + 1;
    if (use_u128(A.size(), n_vertices)) {
        auto [raw, work] = run_paths<u128>(fn, labels, A, budget);
        out.raw = raw;
        out.work = work;
    } else {
        auto [raw, work] = run_paths<Int>(fn, labels, A, budget);
        out.raw = raw;
        out.work = work;
    }
    out.normalized = normalize(out.raw, F.q(), static_cast<int>(labels.size()), A.size(),
                               n_vertices);
    return out;
}

TreeCount count_tree(const DistanceFn& fn, const DistanceGraph& tree, const PointSet& A,
                     int root, uint64_t budget) {
    if (&A.space() != &fn.space()) throw DimensionMismatchError("set from a different space");
    if (!tree.is_tree()) throw NotATreeError("count_tree needs a tree");
    if (root < 0 || root >= tree.vertices()) throw IndexOutOfRangeError("root out of range");
    const FiniteField& F = fn.space().field();
    require_labels(F, tree);
    uint64_t bound_max = 0;
    for (const Edge& e : tree.edges()) bound_max = std::max(bound_max, fn.neighbor_bound(e.label));
    if (budget != 0 && !tree.edges().empty()) {
        Int est = Int(static_cast<unsigned long>(A.size())) *
                  static_cast<unsigned long>(tree.edges().size()) *
                  static_cast<unsigned long>(bound_max);
        if (est > Int(static_cast<unsigned long>(budget)))
            throw BudgetExceededError("tree count would exceed its work budget");
    }

    TreeCount tc;
    tc.root = root;
    tc.report.engine = "message-dp";
    tc.report.q_power = static_cast<long>(tree.edges().size());
    if (use_u128(A.size(), tree.vertices())) {
        auto [raw, counts] = run_tree<u128>(fn, tree, A, root, budget, tc.report.work);
        tc.report.raw = raw;
        tc.root_counts = std::move(counts);
    } else {
        auto [raw, counts] = run_tree<Int>(fn, tree, A, root, budget, tc.report.work);
        tc.report.raw = raw;
        tc.root_counts = std::move(counts);
    }
    tc.report.normalized = normalize(tc.report.raw, F.q(),
                                     static_cast<int>(tree.edges().size()), A.size(),
                                     tree.vertices());
    return tc;
}

CountReport count_cycles(const DistanceFn& fn, int n, uint32_t label, const PointSet& A,
                         uint64_t budget, const std::string& engine) {
    if (&A.space() != &fn.space()) throw DimensionMismatchError("set from a different space");
    if (n < 3) throw ZeroParameterError("a closed chain needs at least three vertices");
    const FiniteField& F = fn.space().field();
    F.require_range(label);

    bool spectral_ok = fn.kind() == FormKind::quadratic && A.is_full();
    if (engine == "spectral" && !spectral_ok)
        throw ConfigParseError("spectral engine needs a quadratic form and the full space");
    if (engine == "spectral" || (engine == "auto" && spectral_ok)) return spectral_cycles(fn, n, label);
    if (engine != "auto" && engine != "walk")
        throw ConfigParseError("unknown cycle engine: " + engine);

    if (budget != 0) {
        Int est = int_pow(Int(static_cast<unsigned long>(A.size())), 2) *
                  static_cast<unsigned long>(n) *
                  static_cast<unsigned long>(std::max<uint64_t>(fn.neighbor_bound(label), 1));
        if (est > Int(static_cast<unsigned long>(budget)))
            throw BudgetExceededError("closed-chain count would exceed its work budget");
    }

    CountReport out;
    out.engine = "walk-dp";
    out.q_power = n;
    if (use_u128(A.size(), n)) {
        auto [raw, work] = run_cycle_walks<u128>(fn, n, label, A, budget);
        out.raw = raw;
        out.work = work;
    } else {
        auto [raw, work] = run_cycle_walks<Int>(fn, n, label, A, budget);
        out.raw = raw;
        out.work = work;
    }
    out.normalized = normalize(out.raw, F.q(), n, A.size(), n);
    return out;
}

}  // namespace ffdist
