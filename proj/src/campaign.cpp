#include "ffdist/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ffdist/error.hpp"
#include "ffdist/graphs.hpp"
#include "ffdist/pointset.hpp"

namespace ffdist {
namespace {

using nlohmann::ordered_json;

long parse_long_str(const std::string& v, const std::string& what) {
    char* end = nullptr;
    long out = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigParseError(what + ": expected integer, got \"" + v + "\"");
    }
    return out;
}

uint64_t parse_u64_str(const std::string& v, const std::string& what) {
    char* end = nullptr;
    unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos) {
        throw ConfigParseError(what + ": expected unsigned integer, got \"" + v + "\"");
    }
    return static_cast<uint64_t>(out);
}

// key=value tokens split on top-level ';'; tracks key usage so that typos in
// instance lines surface as errors instead of being silently ignored
class Args {
  public:
    explicit Args(const std::string& spec) : text_(trim_copy(spec)) {
        for (const std::string& piece : split_top_level(text_, ';')) {
            size_t eq = piece.find('=');
            if (eq == std::string::npos) {
                throw ConfigParseError("instance token is not key=value: \"" + piece + "\"");
            }
            std::string key = trim_copy(piece.substr(0, eq));
            std::string value = trim_copy(piece.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ConfigParseError("instance token has an empty side: \"" + piece + "\"");
            }
            if (!kv_.emplace(key, value).second) {
                throw ConfigParseError("duplicate instance key \"" + key + "\" in: " + text_);
            }
        }
    }

    const std::string& text() const { return text_; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string need(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            throw ConfigParseError("instance missing key \"" + key + "\": " + text_);
        }
        used_.insert(key);
        return it->second;
    }
    std::string opt(const std::string& key, const std::string& fallback) {
        return has(key) ? need(key) : fallback;
    }
    long need_long(const std::string& key) { return parse_long_str(need(key), "key \"" + key + "\""); }
    long opt_long(const std::string& key, long fallback) {
        return has(key) ? need_long(key) : fallback;
    }
    uint64_t opt_u64(const std::string& key, uint64_t fallback) {
        return has(key) ? parse_u64_str(need(key), "key \"" + key + "\"") : fallback;
    }

    // call after dispatch so leftover (unconsumed) keys are rejected
    void finish() const {
        for (const auto& kv : kv_) {
            if (!used_.count(kv.first)) {
                throw ConfigParseError("unknown instance key \"" + kv.first + "\" in: " + text_);
            }
        }
    }

  private:
    std::string text_;
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

struct Fraction {
    long num = 0;
    long den = 1;
};

Fraction parse_fraction(const std::string& v, const std::string& what) {
    Fraction f;
    size_t slash = v.find('/');
    if (slash == std::string::npos) {
        f.num = parse_long_str(v, what);
        f.den = 1;
    } else {
        f.num = parse_long_str(v.substr(0, slash), what);
        f.den = parse_long_str(v.substr(slash + 1), what);
    }
    return f;
}

std::vector<uint32_t> parse_label_list(const std::string& v, const std::string& what) {
    std::vector<uint32_t> out;
    for (const std::string& piece : split_top_level(v, ',')) {
        long x = parse_long_str(piece, what);
        if (x < 0) throw ConfigParseError(what + ": labels must be nonnegative");
        out.push_back(static_cast<uint32_t>(x));
    }
    if (out.empty()) throw ConfigParseError(what + ": empty label list");
    return out;
}

struct WeightSpec {
    uint64_t count = 0;
    long max_weight = 1;
    uint64_t seed = 0;
};

WeightSpec parse_weight_spec(const std::string& v, const std::string& what) {
    std::vector<std::string> parts = split_top_level(v, ':');
    if (parts.size() != 3) {
        throw ConfigParseError(what + ": expected count:max:seed, got \"" + v + "\"");
    }
    WeightSpec w;
    w.count = parse_u64_str(parts[0], what);
    w.max_weight = parse_long_str(parts[1], what);
    w.seed = parse_u64_str(parts[2], what);
    return w;
}

std::vector<TheoremCheck> one(TheoremCheck c) {
    std::vector<TheoremCheck> v;
    v.push_back(std::move(c));
    return v;
}

long q_of(long p, int k) {
    long q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    return q;
}

}  // namespace

const FiniteField& CheckRunner::field_for(long p, int k) {
    std::string key = std::to_string(p) + "^" + std::to_string(k);
    auto it = fields_.find(key);
    if (it == fields_.end()) {
        it = fields_.emplace(key, std::make_unique<FiniteField>(p, k)).first;
    }
    return *it->second;
}

const CheckRunner::FormEntry& CheckRunner::form_for(long p, int k, int d, const std::string& form) {
    std::string key =
        std::to_string(p) + "^" + std::to_string(k) + ":" + std::to_string(d) + ":" + form;
    auto it = forms_.find(key);
    if (it == forms_.end()) {
        FormEntry e;
        e.F = std::make_unique<FiniteField>(p, k);
        e.V = std::make_unique<VectorSpace>(*e.F, d);
        e.fn = std::make_unique<DistanceFn>(parse_form(*e.V, form));
        it = forms_.emplace(key, std::move(e)).first;
    }
    return it->second;
}

std::vector<CheckRecord> CheckRunner::run(const std::string& spec, uint64_t budget,
                                          uint64_t seed) {
    Args a(spec);
    CheckRecord base;
    base.spec = a.text();
    base.check = a.need("check");
    const std::string kind = base.check;
    const uint64_t eff = a.opt_u64("budget", budget);

    std::function<std::vector<TheoremCheck>()> go;

    if (kind == "gauss" || kind == "weil-kloosterman" || kind == "weil-salie") {
        base.p = a.need_long("p");
        base.k = static_cast<int>(a.opt_long("k", 1));
        base.q = q_of(base.p, base.k);
        const FiniteField& F = field_for(base.p, base.k);
        if (kind == "gauss") {
            go = [&F] { return one(check_gauss_modulus(F)); };
        } else if (kind == "weil-kloosterman") {
            go = [&F, eff, seed] { return one(check_weil_kloosterman(F, eff, seed)); };
        } else {
            go = [&F, eff, seed] { return one(check_weil_salie(F, eff, seed)); };
        }
    } else {
        base.p = a.need_long("p");
        base.k = static_cast<int>(a.opt_long("k", 1));
        base.d = static_cast<int>(a.need_long("d"));
        base.q = q_of(base.p, base.k);
        base.form = a.need("form");
        const FormEntry& fe = form_for(base.p, base.k, base.d, base.form);
        const DistanceFn& fn = *fe.fn;
        const VectorSpace& V = *fe.V;

        auto label_arg = [&](const char* key) {
            long t = a.need_long(key);
            if (t < 0) throw ConfigParseError(std::string("key \"") + key + "\": must be >= 0");
            return static_cast<uint32_t>(t);
        };
        auto set_arg = [&](const char* key) { return parse_pointset(V, &fn, a.need(key)); };

        if (kind == "functional-distance") {
            uint32_t t = label_arg("t");
            PointSet A = set_arg("A");
            PointSet B = set_arg("B");
            base.set = A.descriptor();
            go = [&fn, t, A, B, eff] { return one(check_functional_distance(fn, t, A, B, eff)); };
        } else if (kind == "functional-distance-sums") {
            uint32_t t = label_arg("t");
            WeightSpec wf = parse_weight_spec(a.need("f"), "key \"f\"");
            WeightSpec wg = parse_weight_spec(a.need("g"), "key \"g\"");
            WeightedSet f = random_weights(V, wf.count, wf.max_weight, wf.seed);
            WeightedSet g = random_weights(V, wg.count, wg.max_weight, wg.seed);
            base.set = "weights:" + a.need("f");
            go = [&fn, t, f, g] { return one(check_functional_distance_sums(fn, t, f, g)); };
        } else if (kind == "orthogonality") {
            go = [&fn, eff, seed] { return one(check_orthogonality(fn, eff, seed)); };
        } else if (kind == "degree-embedding" || kind == "distinct-embedding") {
            uint32_t t = label_arg("t");
            DistanceGraph g = make_graph(a.need("graph"), t);
            PointSet A = set_arg("A");
            base.set = A.descriptor();
            if (kind == "degree-embedding") {
                go = [&fn, g, A, eff] { return one(check_degree_embedding(fn, g, A, eff)); };
            } else {
                go = [&fn, g, A, eff] { return check_distinct_embedding(fn, g, A, eff); };
            }
        } else if (kind == "path-count") {
            std::vector<uint32_t> labels = parse_label_list(a.need("labels"), "key \"labels\"");
            PointSet A = set_arg("A");
            base.set = A.descriptor();
            go = [&fn, labels, A, eff] { return one(check_path_count(fn, labels, A, eff)); };
        } else if (kind == "tree-count" || kind == "tree-star") {
            uint32_t t = label_arg("t");
            DistanceGraph tree = make_graph(a.need("tree"), t);
            PointSet E = set_arg("E");
            base.set = E.descriptor();
            if (kind == "tree-count") {
                Fraction eps = parse_fraction(a.need("eps"), "key \"eps\"");
                go = [&fn, tree, t, E, eps, eff] {
                    return check_tree_count(fn, tree, t, E, eps.num, eps.den, eff);
                };
            } else {
                Fraction lam = parse_fraction(a.need("lam"), "key \"lam\"");
                go = [&fn, tree, t, E, lam, eff] {
                    return one(check_tree_lemma(fn, tree, t, E, lam.num, lam.den, eff));
                };
            }
        } else if (kind == "cycle-count") {
            int n = static_cast<int>(a.need_long("n"));
            uint32_t t = label_arg("t");
            PointSet E = set_arg("E");
            base.set = E.descriptor();
            go = [&fn, n, t, E, eff] { return check_cycle_count(fn, n, t, E, eff); };
        } else if (kind == "cycle-large" || kind == "cycle-distinct") {
            int n = static_cast<int>(a.need_long("n"));
            uint32_t t = label_arg("t");
            PointSet E = set_arg("E");
            Fraction delta = parse_fraction(a.need("delta"), "key \"delta\"");
            base.set = E.descriptor();
            if (kind == "cycle-large") {
                go = [&fn, n, t, E, delta, eff] {
                    return one(check_cycle_large(fn, n, t, E, delta.num, delta.den, eff));
                };
            } else {
                go = [&fn, n, t, E, delta, eff] {
                    return one(check_cycle_distinct(fn, n, t, E, delta.num, delta.den, eff));
                };
            }
        } else if (kind == "sphere-size") {
            uint32_t t = label_arg("t");
            go = [&fn, t] { return one(check_sphere_size(fn, t)); };
        } else if (kind == "sphere-corollary") {
            uint32_t t = label_arg("t");
            go = [&fn, t] { return check_sphere_corollary(fn, t); };
        } else if (kind == "sphere-fourier") {
            uint32_t t = label_arg("t");
            go = [&fn, t, eff, seed] { return one(check_sphere_fourier(fn, t, eff, seed)); };
        } else if (kind == "two-edge") {
            uint32_t t = label_arg("t");
            PointSet A = set_arg("A");
            PointSet B = set_arg("B");
            PointSet C = set_arg("C");
            PointSet D = set_arg("D");
            base.set = A.descriptor();
            go = [&fn, t, A, B, C, D, eff] { return check_two_edge(fn, t, A, B, C, D, eff); };
        } else if (kind == "two-edge-sums") {
            uint32_t t = label_arg("t");
            WeightSpec wf = parse_weight_spec(a.need("f"), "key \"f\"");
            WeightSpec wg = parse_weight_spec(a.need("g"), "key \"g\"");
            PairWeights f = random_pair_weights(V, wf.count, wf.max_weight, wf.seed);
            PairWeights g = random_pair_weights(V, wg.count, wg.max_weight, wg.seed);
            base.set = "pairs:" + a.need("f");
            go = [&fn, t, f, g] { return one(check_two_edge_sums(fn, t, f, g)); };
        } else if (kind == "quadratic-identity") {
            go = [&fn, eff, seed] { return one(check_quadratic_identity(fn, eff, seed)); };
        } else {
            throw ConfigParseError("unknown check kind: \"" + kind + "\"");
        }
    }

    a.finish();

    std::vector<CheckRecord> out;
    try {
        for (TheoremCheck& row : go()) {
            CheckRecord rec = base;
            rec.result = std::move(row);
            out.push_back(std::move(rec));
        }
    } catch (const BudgetExceededError& e) {
        CheckRecord rec = base;
        rec.status = "budget";
        rec.error = e.what();
        rec.result.theorem_id = kind;
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

// --- built-in suites ----------------------------------------------------------
//
// The default suite is chosen so that every inequality family has rows whose
// size hypotheses genuinely hold at the supported space sizes:
//   - single-edge counts hold everywhere; the embedding bounds need
//     alpha >= 4m q^{t-(d+1)/2}, first reachable for a single edge at q = 17,
//     d = 2, and for a 2-matching at q = 3, d = 5 (full space);
//   - the distinct-embedding hypothesis alpha >= 48 q^{1-(d+1)/2} first holds
//     at full spaces of dimension >= 5 (q = 5, d = 6 and q = 7, d = 5);
//   - path counts need |A| > (2k/ln 2) q^{(d+1)/2}: at d = 2 the full plane
//     works from q = 49 (k = 2), 81 (k = 3), 169 (k = 4);
//   - tree counts need |E| > q^{(d+1)/2+eps}: full planes from q = 25 at
//     eps = 1/4, any full d = 3 space at eps = 1/2;
//   - the cycle hypothesis 12 q^gamma + 8 q^{d+2}/|E|^2 + ... <= 1 is only
//     satisfiable at d = 4 with q in {25, 27} (full space, n <= 7);
//   - the long-cycle and distinct-cycle hypotheses hold at the listed
//     (q, d, n, delta) combinations, which respect the delta ranges.
// Remaining rows exercise the conclusions where the hypotheses fail (they are
// reported as such) and cover both form kinds and all counting engines.

void add_char_sum_instances(std::vector<std::string>& v) {
    const char* fields[] = {
        "p=3; k=1",  "p=5; k=1",  "p=7; k=1",  "p=11; k=1", "p=13; k=1", "p=17; k=1",
        "p=19; k=1", "p=23; k=1", "p=29; k=1", "p=31; k=1", "p=3; k=2",  "p=3; k=3",
        "p=3; k=4",  "p=5; k=2",  "p=5; k=3",  "p=7; k=2",  "p=11; k=2", "p=13; k=2",
    };
    for (const char* f : fields) {
        v.push_back(std::string("check=gauss; ") + f);
        v.push_back(std::string("check=weil-kloosterman; ") + f);
        v.push_back(std::string("check=weil-salie; ") + f);
    }
    const char* quad[] = {
        "p=3; k=1; d=2; form=quadratic:diag=1,1",
        "p=3; k=1; d=2; form=quadratic:diag=1,a",
        "p=5; k=1; d=2; form=quadratic:diag=1,1",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1",
        "p=7; k=1; d=2; form=quadratic:diag=1,a",
        "p=3; k=2; d=2; form=quadratic:diag=1,1",
        "p=13; k=1; d=2; form=quadratic:diag=1,1",
        "p=13; k=1; d=3; form=quadratic:diag=1,1,1",
        "p=5; k=2; d=2; form=quadratic:diag=1,a",
        "p=3; k=1; d=4; form=quadratic:diag=1,1,1,1",
        "p=5; k=1; d=4; form=quadratic:diag=1,1,1,a",
    };
    for (const char* s : quad) v.push_back(std::string("check=quadratic-identity; ") + s);
    v.push_back(
        "check=quadratic-identity; p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; "
        "budget=20000000");
}

void add_single_edge_instances(std::vector<std::string>& v) {
    const char* fd[] = {
        "p=3; k=1; d=2; form=quadratic:diag=1,1; t=1; A=full; B=full",
        "p=3; k=1; d=2; form=quadratic:diag=1,1; t=2; A=full; B=full",
        "p=5; k=1; d=2; form=quadratic:diag=1,a; t=1; A=random:12:3; B=random:8:4",
        "p=5; k=1; d=2; form=bilinear:dot; t=1; A=full; B=random:10:5",
        "p=7; k=1; d=2; form=quadratic:diag=1,1; t=2; A=union(sphere:1;affine:0:2); "
        "B=complement(random:20:6)",
        "p=7; k=1; d=2; form=bilinear:matrix=[[1,1],[0,1]]; t=3; A=random:24:7; B=random:24:8",
        "p=3; k=1; d=3; form=quadratic:diag=1,1,1; t=1; A=full; B=full",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,a; t=1; A=random:60:9; B=random:60:10",
        "p=3; k=2; d=2; form=quadratic:diag=1,1; t=1; A=full; B=full",
        "p=3; k=2; d=2; form=bilinear:dot; t=1; A=full; B=affine:0:2",
        "p=13; k=1; d=2; form=quadratic:diag=1,1; t=1; A=random:80:11; B=random:85:12",
        "p=5; k=2; d=2; form=quadratic:diag=1,a; t=1; A=full; B=full",
        "p=7; k=1; d=4; form=quadratic:diag=1,1,1,1; t=1; A=random:900:13; B=random:900:14",
        "p=3; k=1; d=5; form=quadratic:diag=1,1,1,1,1; t=1; A=full; B=full",
        "p=13; k=1; d=3; form=quadratic:diag=1,1,1; t=2; A=full; B=full",
    };
    for (const char* s : fd) v.push_back(std::string("check=functional-distance; ") + s);

    const char* fds[] = {
        "p=5; k=1; d=2; form=quadratic:diag=1,1; t=1; f=10:5:21; g=12:4:22",
        "p=7; k=1; d=2; form=bilinear:dot; t=1; f=16:7:23; g=16:7:24",
        "p=3; k=1; d=3; form=quadratic:diag=1,1,1; t=1; f=9:3:25; g=8:6:26",
        "p=13; k=1; d=2; form=quadratic:diag=1,a; t=2; f=40:9:27; g=44:9:28",
    };
    for (const char* s : fds) v.push_back(std::string("check=functional-distance-sums; ") + s);

    const char* orth[] = {
        "p=3; k=1; d=2; form=bilinear:dot",
        "p=5; k=1; d=2; form=bilinear:dot",
        "p=7; k=1; d=2; form=bilinear:dot",
        "p=13; k=1; d=2; form=bilinear:dot",
        "p=5; k=2; d=2; form=bilinear:dot",
        "p=3; k=1; d=2; form=bilinear:matrix=[[1,1],[0,1]]",
        "p=7; k=1; d=2; form=bilinear:matrix=[[1,1],[0,1]]",
        "p=3; k=1; d=3; form=bilinear:dot",
        "p=5; k=1; d=3; form=bilinear:dot",
        "p=7; k=1; d=3; form=bilinear:dot",
        "p=3; k=1; d=4; form=bilinear:dot",
        "p=5; k=1; d=4; form=bilinear:dot",
    };
    for (const char* s : orth) v.push_back(std::string("check=orthogonality; ") + s);
    v.push_back("check=orthogonality; p=3; k=3; d=3; form=bilinear:dot; budget=30000000");
}

void add_embedding_instances(std::vector<std::string>& v) {
    const char* deg[] = {
        // single edges with the size hypothesis satisfied
        "p=17; k=1; d=2; form=quadratic:diag=1,1; graph=path:1; t=1; A=full",
        "p=5; k=2; d=2; form=quadratic:diag=1,1; graph=path:1; t=1; A=full",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; graph=path:1; t=1; A=full",
        "p=7; k=1; d=3; form=quadratic:diag=1,1,1; graph=path:1; t=1; A=full",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; graph=path:1; t=1; A=random:486:31",
        // the first 2-matching whose hypothesis holds: q = 3, d = 5, full space
        "p=3; k=1; d=5; form=quadratic:diag=1,1,1,1,1; graph=matching:2; t=1; A=full; "
        "budget=900000000",
        // hypothesis-false coverage across shapes and forms
        "p=13; k=1; d=2; form=bilinear:dot; graph=path:1; t=1; A=full",
        "p=5; k=1; d=2; form=quadratic:diag=1,1; graph=star:2; t=1; A=random:15:32",
        "p=5; k=1; d=2; form=quadratic:diag=1,1; graph=path:2; t=2; A=full",
        "p=7; k=1; d=2; form=bilinear:dot; graph=complete:3; t=1; A=random:30:33",
        "p=3; k=1; d=4; form=quadratic:diag=1,1,1,1; graph=star:3; t=1; A=full",
    };
    for (const char* s : deg) v.push_back(std::string("check=degree-embedding; ") + s);

    const char* dis[] = {
        // hypothesis first satisfiable at full spaces of dimension >= 5
        "p=5; k=1; d=6; form=quadratic:diag=1,1,1,1,1,1; graph=path:1; t=1; A=full",
        "p=7; k=1; d=5; form=quadratic:diag=1,1,1,1,1; graph=path:1; t=1; A=full",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; graph=path:1; t=1; A=full",
        "p=5; k=1; d=2; form=quadratic:diag=1,1; graph=path:1; t=1; A=random:12:34",
        // a singleton set: the lower bound genuinely fails (hypothesis unmet)
        "p=5; k=1; d=2; form=quadratic:diag=1,1; graph=path:1; t=1; A=explicit:7",
    };
    for (const char* s : dis) v.push_back(std::string("check=distinct-embedding; ") + s);

    const char* paths[] = {
        "p=7; k=2; d=2; form=quadratic:diag=1,1; labels=1,1; A=full",
        "p=7; k=2; d=2; form=quadratic:diag=1,1; labels=1,2; A=random:2200:35",
        "p=3; k=4; d=2; form=quadratic:diag=1,1; labels=1,1,1; A=full",
        "p=13; k=2; d=2; form=quadratic:diag=1,1; labels=1,1,1,1; A=full",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; labels=1,2; A=full",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; labels=1,1,2; A=full",
        "p=13; k=1; d=3; form=quadratic:diag=1,1,1; labels=1,2,3,1; A=full",
        "p=5; k=2; d=3; form=quadratic:diag=1,1,a; labels=1,1,2,2,1,1,2,2; A=full",
        "p=5; k=1; d=2; form=quadratic:diag=1,1; labels=1,1; A=full",
        "p=7; k=1; d=2; form=bilinear:dot; labels=1,1,2; A=random:30:36",
    };
    for (const char* s : paths) v.push_back(std::string("check=path-count; ") + s);
}

void add_tree_instances(std::vector<std::string>& v) {
    const char* trees[] = {
        "p=5; k=2; d=2; form=quadratic:diag=1,1; tree=path:2; t=1; E=full; eps=1/4",
        "p=5; k=2; d=2; form=quadratic:diag=1,a; tree=star:3; t=1; E=full; eps=1/4",
        "p=3; k=3; d=2; form=quadratic:diag=1,1; tree=path:3; t=2; E=full; eps=1/4",
        "p=7; k=1; d=2; form=bilinear:dot; tree=path:2; t=1; E=full; eps=1/4",
        "p=13; k=1; d=2; form=bilinear:dot; tree=star:3; t=3; E=full; eps=1/4",
        "p=13; k=1; d=2; form=bilinear:dot; tree=path:2; t=1; E=random:100:20; eps=1/4",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; tree=path:2; t=1; E=full; eps=1/2",
        "p=7; k=1; d=3; form=quadratic:diag=1,1,1; tree=star:2; t=1; E=full; eps=1/2",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; tree=random-tree:5:17; t=1; E=full; eps=1/2",
        "p=13; k=1; d=3; form=quadratic:diag=1,1,1; tree=star:3; t=1; E=random:1100:19; eps=1/4",
        "p=5; k=2; d=3; form=quadratic:diag=1,1,1; tree=path:3; t=1; E=full; eps=1/4",
        "p=3; k=3; d=3; form=quadratic:diag=1,1,1; tree=path:2; t=1; E=full; eps=1/4",
        "p=5; k=1; d=4; form=quadratic:diag=1,1,1,1; tree=star:3; t=1; E=full; eps=1/2",
    };
    for (const char* s : trees) v.push_back(std::string("check=tree-count; ") + s);

    const char* star[] = {
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; tree=star:3; t=1; E=full; lam=1/2",
        "p=13; k=1; d=3; form=quadratic:diag=1,1,1; tree=random-tree:6:9; t=1; E=full; lam=1/2",
        "p=5; k=2; d=2; form=quadratic:diag=1,1; tree=path:3; t=1; E=random:400:21; lam=3/4",
    };
    for (const char* s : star) v.push_back(std::string("check=tree-star; ") + s);
}

void add_cycle_instances(std::vector<std::string>& v) {
    const char* cycles[] = {
        // the only supported spaces where the hypothesis holds: d = 4, q = 25, 27
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; n=4; t=1; E=full",
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; n=5; t=1; E=full",
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; n=6; t=1; E=full",
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; n=7; t=1; E=full",
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; n=8; t=1; E=full",
        "p=3; k=3; d=4; form=quadratic:diag=1,1,1,1; n=4; t=1; E=full",
        "p=3; k=3; d=4; form=quadratic:diag=1,1,1,1; n=6; t=1; E=full",
        "p=3; k=3; d=4; form=quadratic:diag=1,1,1,a; n=6; t=1; E=full",
        // hypothesis-false coverage on the other engines
        "p=13; k=1; d=2; form=quadratic:diag=1,1; n=4; t=1; E=full",
        "p=13; k=1; d=2; form=quadratic:diag=1,1; n=6; t=1; E=random:120:22",
        "p=7; k=1; d=3; form=quadratic:diag=1,1,1; n=5; t=1; E=random:200:23",
        "p=5; k=1; d=3; form=bilinear:dot; n=4; t=1; E=full",
    };
    for (const char* s : cycles) v.push_back(std::string("check=cycle-count; ") + s);

    const char* large[] = {
        "p=13; k=1; d=2; form=quadratic:diag=1,1; n=5; t=1; E=full; delta=1/20",
        "p=13; k=1; d=2; form=quadratic:diag=1,1; n=6; t=1; E=full; delta=1/20",
        "p=5; k=2; d=2; form=quadratic:diag=1,1; n=6; t=1; E=full; delta=1/20",
        "p=5; k=2; d=2; form=quadratic:diag=1,a; n=8; t=1; E=full; delta=1/40",
        "p=3; k=3; d=2; form=quadratic:diag=1,1; n=6; t=2; E=full; delta=1/30",
        "p=5; k=2; d=3; form=quadratic:diag=1,1,1; n=6; t=1; E=full; delta=1/20",
    };
    for (const char* s : large) v.push_back(std::string("check=cycle-large; ") + s);

    const char* dist[] = {
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; n=4; t=1; E=full; delta=1/20",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; n=5; t=1; E=full; delta=1/20",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; n=6; t=1; E=random:40:24; delta=1/40",
        "p=7; k=1; d=3; form=quadratic:diag=1,1,1; n=4; t=1; E=full; delta=1/20",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1; n=4; t=1; E=random:300:24; delta=1/20",
        "p=13; k=1; d=2; form=quadratic:diag=1,1; n=4; t=1; E=full; delta=1/20",
    };
    for (const char* s : dist) v.push_back(std::string("check=cycle-distinct; ") + s);
}

void add_sphere_instances(std::vector<std::string>& v) {
    const char* spaces[] = {
        "p=3; k=1; d=2; form=quadratic:diag=1,1",
        "p=5; k=1; d=2; form=quadratic:diag=1,a",
        "p=7; k=1; d=2; form=quadratic:diag=1,1",
        "p=3; k=2; d=2; form=quadratic:diag=1,1",
        "p=13; k=1; d=2; form=quadratic:diag=1,1",
        "p=5; k=2; d=2; form=quadratic:diag=1,1",
        "p=3; k=3; d=2; form=quadratic:diag=1,a",
        "p=3; k=1; d=3; form=quadratic:diag=1,1,1",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,a",
        "p=7; k=1; d=3; form=quadratic:diag=1,1,1",
        "p=3; k=2; d=3; form=quadratic:diag=1,1,1",
        "p=13; k=1; d=3; form=quadratic:diag=1,1,1",
        "p=3; k=1; d=4; form=quadratic:diag=1,1,1,1",
        "p=5; k=1; d=4; form=quadratic:diag=1,1,1,a",
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1",
        "p=3; k=1; d=5; form=quadratic:diag=1,1,1,1,1",
        "p=5; k=1; d=6; form=quadratic:diag=1,1,1,1,1,1",
    };
    for (const char* s : spaces) {
        v.push_back(std::string("check=sphere-size; ") + s + "; t=1");
        v.push_back(std::string("check=sphere-corollary; ") + s + "; t=1");
        v.push_back(std::string("check=sphere-size; ") + s + "; t=2");
    }
    const char* fourier[] = {
        "p=3; k=1; d=2; form=quadratic:diag=1,1; t=1",
        "p=5; k=1; d=2; form=quadratic:diag=1,1; t=1",
        "p=5; k=1; d=2; form=quadratic:diag=1,a; t=2",
        "p=7; k=1; d=2; form=quadratic:diag=1,1; t=1",
        "p=3; k=2; d=2; form=quadratic:diag=1,1; t=1",
        "p=13; k=1; d=2; form=quadratic:diag=1,1; t=1",
        "p=5; k=2; d=2; form=quadratic:diag=1,1; t=1",
        "p=3; k=1; d=3; form=quadratic:diag=1,1,1; t=1",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; t=1",
        "p=5; k=2; d=3; form=quadratic:diag=1,1,1; t=1",
        "p=3; k=1; d=4; form=quadratic:diag=1,1,1,1; t=2",
        "p=5; k=1; d=4; form=quadratic:diag=1,1,1,1; t=1",
        "p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; t=1; budget=40000000",
        "p=3; k=1; d=5; form=quadratic:diag=1,1,1,1,1; t=1",
    };
    for (const char* s : fourier) v.push_back(std::string("check=sphere-fourier; ") + s);
}

void add_two_edge_instances(std::vector<std::string>& v) {
    const char* two[] = {
        "p=5; k=1; d=2; form=quadratic:diag=1,1; t=1; A=full; B=full; C=full; D=full",
        "p=3; k=2; d=2; form=quadratic:diag=1,1; t=1; A=random:30:41; B=random:44:42; "
        "C=random:30:43; D=random:44:44",
        "p=13; k=1; d=2; form=quadratic:diag=1,1; t=2; A=random:60:45; B=random:80:46; "
        "C=random:15:47; D=random:20:48",
        "p=5; k=2; d=2; form=quadratic:diag=1,a; t=1; A=random:100:49; B=random:121:50; "
        "C=random:100:51; D=random:121:52",
        "p=5; k=1; d=3; form=quadratic:diag=1,1,1; t=1; A=full; B=full; C=full; D=full",
        "p=7; k=1; d=3; form=quadratic:diag=1,1,1; t=1; A=random:90:53; B=random:40:54; "
        "C=random:40:55; D=random:90:56",
        "p=7; k=1; d=2; form=bilinear:dot; t=1; A=random:21:57; B=random:28:58; "
        "C=random:21:59; D=random:28:60",
        // sizes whose products are not perfect squares: float evaluation path
        "p=5; k=1; d=2; form=quadratic:diag=1,1; t=1; A=random:10:61; B=random:11:62; "
        "C=random:12:63; D=random:13:64",
    };
    for (const char* s : two) v.push_back(std::string("check=two-edge; ") + s);

    const char* sums[] = {
        "p=3; k=1; d=2; form=quadratic:diag=1,1; t=1; f=20:4:65; g=24:5:66",
        "p=5; k=1; d=2; form=bilinear:dot; t=1; f=40:6:67; g=36:3:68",
        "p=5; k=2; d=2; form=quadratic:diag=1,1; t=2; f=60:9:69; g=60:9:70",
    };
    for (const char* s : sums) v.push_back(std::string("check=two-edge-sums; ") + s);
}

std::vector<std::string> quick_suite() {
    return {
        "check=gauss; p=3; k=1",
        "check=gauss; p=5; k=2",
        "check=weil-kloosterman; p=7; k=1",
        "check=weil-salie; p=5; k=1",
        "check=quadratic-identity; p=3; k=1; d=2; form=quadratic:diag=1,1",
        "check=functional-distance; p=3; k=1; d=2; form=quadratic:diag=1,1; t=1; A=full; B=full",
        "check=functional-distance; p=5; k=1; d=2; form=bilinear:dot; t=1; A=random:12:3; "
        "B=random:8:4",
        "check=functional-distance-sums; p=5; k=1; d=2; form=quadratic:diag=1,1; t=1; "
        "f=10:5:21; g=12:4:22",
        "check=orthogonality; p=5; k=1; d=2; form=bilinear:dot",
        "check=orthogonality; p=3; k=1; d=3; form=bilinear:dot",
        "check=degree-embedding; p=17; k=1; d=2; form=quadratic:diag=1,1; graph=path:1; t=1; "
        "A=full",
        "check=degree-embedding; p=5; k=1; d=2; form=quadratic:diag=1,1; graph=star:2; t=1; "
        "A=random:15:32",
        "check=distinct-embedding; p=5; k=1; d=2; form=quadratic:diag=1,1; graph=path:1; t=1; "
        "A=random:12:34",
        "check=path-count; p=7; k=2; d=2; form=quadratic:diag=1,1; labels=1,1; A=full",
        "check=path-count; p=5; k=1; d=2; form=quadratic:diag=1,1; labels=1,1; A=full",
        "check=tree-count; p=5; k=2; d=2; form=quadratic:diag=1,1; tree=path:2; t=1; E=full; "
        "eps=1/4",
        "check=tree-star; p=3; k=2; d=3; form=quadratic:diag=1,1,1; tree=star:3; t=1; E=full; "
        "lam=1/2",
        "check=cycle-count; p=13; k=1; d=2; form=quadratic:diag=1,1; n=4; t=1; E=full",
        "check=cycle-count; p=5; k=2; d=4; form=quadratic:diag=1,1,1,1; n=6; t=1; E=full",
        "check=cycle-large; p=13; k=1; d=2; form=quadratic:diag=1,1; n=6; t=1; E=full; "
        "delta=1/20",
        "check=cycle-distinct; p=5; k=1; d=3; form=quadratic:diag=1,1,1; n=4; t=1; E=full; "
        "delta=1/20",
        "check=sphere-size; p=5; k=1; d=2; form=quadratic:diag=1,a; t=1",
        "check=sphere-corollary; p=7; k=1; d=3; form=quadratic:diag=1,1,1; t=1",
        "check=sphere-fourier; p=5; k=1; d=2; form=quadratic:diag=1,1; t=1",
        "check=two-edge; p=5; k=1; d=2; form=quadratic:diag=1,1; t=1; A=full; B=full; C=full; "
        "D=full",
        "check=two-edge-sums; p=3; k=1; d=2; form=quadratic:diag=1,1; t=1; f=20:4:65; "
        "g=24:5:66",
    };
}

}  // namespace

std::vector<std::string> suite_instances(const std::string& name) {
    if (name == "quick") return quick_suite();
    if (name == "default") {
        std::vector<std::string> v;
        add_char_sum_instances(v);
        add_single_edge_instances(v);
        add_embedding_instances(v);
        add_tree_instances(v);
        add_cycle_instances(v);
        add_sphere_instances(v);
        add_two_edge_instances(v);
        return v;
    }
    throw ConfigParseError("unknown suite: \"" + name + "\" (expected default or quick)");
}

// (p, k) from an explicit prime power; rejects non-prime-powers by name
std::pair<long, int> factor_prime_power(long q) {
    if (q < 3) throw ConfigParseError("q must be an odd prime power >= 3");
    long p = 0;
    for (long c = 2; c * c <= q; ++c) {
        if (q % c == 0) {
            p = c;
            break;
        }
    }
    if (p == 0) return {q, 1};
    int k = 0;
    long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) {
        throw ConfigParseError("q = " + std::to_string(q) + " is not a prime power");
    }
    return {p, k};
}

namespace {

// Expands the direct grid configuration (theorem=..., q/p/k, d, form, set,
// label, ...) into instance lines.  theorem=all covers the families that are
// fully determined by (form, label, set); the structured families are
// available by naming them and rely on the defaulted extra keys below.
std::vector<std::string> grid_instances(const Config& cfg) {
    long p = 0;
    int k = 1;
    if (cfg.has("q")) {
        auto pk = factor_prime_power(cfg.get_long("q", 0));
        p = pk.first;
        k = pk.second;
        if (cfg.has("p") || cfg.has("k")) {
            throw ConfigParseError("give either q or p (and k), not both");
        }
    } else {
        p = cfg.get_long("p", 0);
        k = static_cast<int>(cfg.get_long("k", 1));
        if (p < 3) throw ConfigParseError("grid mode needs q or p");
    }
    long q = 1;
    for (int i = 0; i < k; ++i) q *= p;

    const std::string theorem = cfg.get("theorem");
    const std::string form = cfg.get("form", "");
    const bool bilinear = form.rfind("bilinear:", 0) == 0;
    const std::string set = cfg.get("set", "full");
    const std::string set2 = cfg.get("set2", set);
    const std::string field_part = "p=" + std::to_string(p) + "; k=" + std::to_string(k);

    std::vector<uint32_t> labels;
    const std::string label = cfg.get("label", "all");
    if (label == "all") {
        for (long t = 1; t < q; ++t) labels.push_back(static_cast<uint32_t>(t));
    } else {
        labels.push_back(static_cast<uint32_t>(parse_long_str(label, "key \"label\"")));
    }

    std::vector<std::string> kinds;
    if (theorem == "all") {
        kinds = {"gauss", "weil-kloosterman", "weil-salie", "functional-distance"};
        if (bilinear) {
            kinds.push_back("orthogonality");
        } else {
            kinds.insert(kinds.end(),
                         {"quadratic-identity", "sphere-size", "sphere-corollary",
                          "sphere-fourier"});
        }
    } else {
        kinds.push_back(theorem);
    }

    std::vector<std::string> out;
    for (const std::string& kind : kinds) {
        if (kind == "gauss" || kind == "weil-kloosterman" || kind == "weil-salie") {
            out.push_back("check=" + kind + "; " + field_part);
            continue;
        }
        if (form.empty()) throw ConfigParseError("grid mode needs form for theorem " + kind);
        if (!cfg.has("d")) throw ConfigParseError("grid mode needs d for theorem " + kind);
        const std::string base = "check=" + kind + "; " + field_part +
                                 "; d=" + std::to_string(cfg.get_long("d", 0)) +
                                 "; form=" + form;
        if (kind == "orthogonality" || kind == "quadratic-identity") {
            out.push_back(base);
            continue;
        }
        if (kind == "path-count") {
            out.push_back(base + "; labels=" + cfg.get("labels", "1,1") + "; A=" + set);
            continue;
        }
        for (uint32_t t : labels) {
            const std::string ts = "; t=" + std::to_string(t);
            if (kind == "functional-distance") {
                out.push_back(base + ts + "; A=" + set + "; B=" + set2);
            } else if (kind == "degree-embedding" || kind == "distinct-embedding") {
                out.push_back(base + "; graph=" + cfg.get("graph", "path:1") + ts +
                              "; A=" + set);
            } else if (kind == "tree-count") {
                out.push_back(base + "; tree=" + cfg.get("tree", "path:2") + ts + "; E=" + set +
                              "; eps=" + cfg.get("eps", "1/2"));
            } else if (kind == "tree-star") {
                out.push_back(base + "; tree=" + cfg.get("tree", "path:2") + ts + "; E=" + set +
                              "; lam=" + cfg.get("lam", "1/2"));
            } else if (kind == "cycle-count") {
                out.push_back(base + "; n=" + cfg.get("n", "4") + ts + "; E=" + set);
            } else if (kind == "cycle-large" || kind == "cycle-distinct") {
                out.push_back(base + "; n=" + cfg.get("n", kind == "cycle-large" ? "6" : "4") +
                              ts + "; E=" + set + "; delta=" + cfg.get("delta", "1/20"));
            } else if (kind == "sphere-size" || kind == "sphere-corollary" ||
                       kind == "sphere-fourier") {
                out.push_back(base + ts);
            } else if (kind == "two-edge") {
                out.push_back(base + ts + "; A=" + set + "; B=" + set2 + "; C=" + set +
                              "; D=" + set2);
            } else {
                throw ConfigParseError("theorem \"" + kind +
                                       "\" is not supported in grid mode; use an instance file");
            }
        }
    }
    return out;
}

std::vector<CheckRecord> run_one_line(CheckRunner& runner, const std::string& line,
                                      uint64_t budget, uint64_t seed) {
    try {
        return runner.run(line, budget, seed);
    } catch (const Error& e) {
        CheckRecord rec;
        rec.spec = trim_copy(line);
        rec.check = "?";
        rec.status = "error";
        rec.error = e.what();
        return {rec};
    }
}

void emit_progress(std::ostream& out, const CheckRecord& rec) {
    if (rec.status == "ok") {
        out << (rec.result.holds ? "ok   " : "FAIL ") << rec.result.theorem_id << " q=" << rec.q
            << " d=" << rec.d << (rec.result.hypothesis_satisfied ? " [hyp]" : "") << "\n";
    } else {
        out << rec.status << " " << rec.spec << "\n";
    }
}

}  // namespace

CampaignResult run_campaign(const Config& cfg, std::ostream* progress) {
    cfg.require_known({"suite", "budget", "seed",  "only",  "instances", "jobs", "theorem",
                       "q",     "p",      "k",     "d",     "form",      "set",  "set2",
                       "label", "n",      "tree",  "graph", "labels",    "eps",  "lam",
                       "delta"});
    if (!cfg.has("theorem")) {
        for (const char* key : {"q", "p", "k", "d", "form", "set", "set2", "label", "n", "tree",
                                "graph", "labels", "eps", "lam", "delta"}) {
            if (cfg.has(key))
                throw ConfigParseError(std::string("key \"") + key +
                                       "\" selects grid instances and needs theorem=<id|all>");
        }
    }
    CampaignResult res;
    res.budget = cfg.get_u64("budget", 400000000ULL);
    res.seed = cfg.get_u64("seed", 1);

    std::vector<std::string> lines;
    if (cfg.has("instances")) {
        const std::string path = cfg.get("instances");
        std::ifstream in(path);
        if (!in) throw IoError("cannot open instance file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim_copy(line);
            if (!line.empty()) lines.push_back(line);
        }
        res.suite = "file:" + path;
    } else if (cfg.has("theorem")) {
        lines = grid_instances(cfg);
        res.suite = "grid:" + cfg.get("theorem");
    } else {
        res.suite = cfg.get("suite", "default");
        lines = suite_instances(res.suite);
    }

    const std::string only = cfg.get("only", "");
    if (!only.empty()) {
        std::vector<std::string> kept;
        for (const std::string& line : lines) {
            if (line.find(only) != std::string::npos) kept.push_back(line);
        }
        lines.swap(kept);
    }

    const long jobs = std::max(1L, cfg.get_long("jobs", 1));
    if (jobs == 1 || lines.size() < 2) {
        CheckRunner runner;
        for (const std::string& line : lines) {
            for (CheckRecord& rec : run_one_line(runner, line, res.budget, res.seed)) {
                if (progress) emit_progress(*progress, rec);
                res.records.push_back(std::move(rec));
            }
        }
        return res;
    }

    // Parallel execution: instances are independent and seeded, so any
    // assignment of lines to workers yields the same records; stitching by
    // instance index keeps the report order (and bytes) identical to a
    // serial run.
    std::vector<std::vector<CheckRecord>> slots(lines.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        CheckRunner runner;
        for (size_t i; (i = next.fetch_add(1)) < lines.size();) {
            slots[i] = run_one_line(runner, lines[i], res.budget, res.seed);
        }
    };
    std::vector<std::thread> pool;
    for (long j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    for (std::vector<CheckRecord>& slot : slots) {
        for (CheckRecord& rec : slot) {
            if (progress) emit_progress(*progress, rec);
            res.records.push_back(std::move(rec));
        }
    }
    return res;
}

CampaignSummary summarize(const CampaignResult& r) {
    CampaignSummary s;
    for (const CheckRecord& rec : r.records) {
        ++s.rows;
        if (rec.status == "budget") {
            ++s.budget_rows;
            continue;
        }
        if (rec.status == "error") {
            ++s.error_rows;
            continue;
        }
        const TheoremCheck& c = rec.result;
        s.work += c.work;
        if (c.holds) ++s.holds;
        if (c.exact) ++s.exact_rows;
        if (c.advisory) ++s.advisory_rows;
        if (c.hypothesis_satisfied) {
            ++s.hypothesis_rows;
            if (c.holds) ++s.hypothesis_holds;
            if (!c.holds && !c.advisory) ++s.hard_failures;
            if (!c.holds && c.advisory) ++s.advisory_failures;
        } else if (!c.holds) {
            ++s.unmet_failures;
        }
    }
    return s;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string margin_str(double m) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", m);
    return buf;
}

}  // namespace

void write_jsonl(const CampaignResult& r, std::ostream& out) {
    ordered_json head;
    head["schema"] = "ffdist-report/1";
    head["suite"] = r.suite;
    head["budget"] = r.budget;
    head["seed"] = r.seed;
    head["rows"] = r.records.size();
    out << head.dump() << "\n";
    for (const CheckRecord& rec : r.records) {
        ordered_json j;
        j["theorem"] = rec.result.theorem_id;
        j["check"] = rec.check;
        j["status"] = rec.status;
        j["p"] = rec.p;
        j["k"] = rec.k;
        j["d"] = rec.d;
        j["q"] = rec.q;
        j["form"] = rec.form;
        j["set"] = rec.set;
        if (rec.status == "ok") {
            j["hypothesis"] = rec.result.hypothesis_satisfied;
            j["holds"] = rec.result.holds;
            j["advisory"] = rec.result.advisory;
            j["exact"] = rec.result.exact;
            j["lhs"] = rec.result.lhs;
            j["rhs"] = rec.result.rhs;
            j["margin"] = rec.result.margin;
            j["witness"] = rec.result.witness;
            j["note"] = rec.result.note;
            j["work"] = rec.result.work;
        } else {
            j["error"] = rec.error;
        }
        j["spec"] = rec.spec;
        out << j.dump() << "\n";
    }
}

void write_csv(const CampaignResult& r, std::ostream& out) {
    out << "theorem,check,status,p,k,d,q,form,set,hypothesis,holds,advisory,exact,"
           "lhs,rhs,margin,work,error\n";
    for (const CheckRecord& rec : r.records) {
        out << csv_escape(rec.result.theorem_id) << "," << csv_escape(rec.check) << ","
            << rec.status << "," << rec.p << "," << rec.k << "," << rec.d << "," << rec.q << ","
            << csv_escape(rec.form) << "," << csv_escape(rec.set) << ",";
        if (rec.status == "ok") {
            const TheoremCheck& c = rec.result;
            out << (c.hypothesis_satisfied ? "true" : "false") << ","
                << (c.holds ? "true" : "false") << "," << (c.advisory ? "true" : "false") << ","
                << (c.exact ? "true" : "false") << "," << csv_escape(c.lhs) << ","
                << csv_escape(c.rhs) << "," << margin_str(c.margin) << "," << c.work << ",";
        } else {
            out << ",,,,,,,," << csv_escape(rec.error);
        }
        out << "\n";
    }
}

void write_summary(const CampaignResult& r, std::ostream& out) {
    CampaignSummary s = summarize(r);
    out << "verification campaign: suite=" << r.suite << " budget=" << r.budget
        << " seed=" << r.seed << "\n";
    out << "rows=" << s.rows << " (exact=" << s.exact_rows << ", advisory=" << s.advisory_rows
        << ")  work=" << s.work << "\n";
    out << "hypothesis satisfied: " << s.hypothesis_rows << "  held there: " << s.hypothesis_holds
        << "\n";
    out << "hard failures (hypothesis met, non-advisory): " << s.hard_failures << "\n";
    out << "advisory failures (hypothesis met): " << s.advisory_failures << "\n";
    out << "failures with hypothesis unmet: " << s.unmet_failures << "\n";
    out << "budget-capped: " << s.budget_rows << "  errors: " << s.error_rows << "\n";

    struct Agg {
        uint64_t rows = 0, hyp = 0, held_at_hyp = 0, exact = 0;
        bool have_margin = false;
        double min_margin = 0;
    };
    std::map<std::string, Agg> fam;
    for (const CheckRecord& rec : r.records) {
        if (rec.status != "ok") continue;
        Agg& a = fam[rec.result.theorem_id];
        ++a.rows;
        if (rec.result.exact) ++a.exact;
        if (rec.result.hypothesis_satisfied) {
            ++a.hyp;
            if (rec.result.holds) ++a.held_at_hyp;
            if (!a.have_margin || rec.result.margin < a.min_margin) {
                a.min_margin = rec.result.margin;
                a.have_margin = true;
            }
        }
    }
    out << "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-34s %5s %5s %9s %6s %12s\n", "theorem", "rows", "hyp",
                  "held@hyp", "exact", "min-margin");
    out << buf;
    for (const auto& [id, a] : fam) {
        std::string mm = a.have_margin ? margin_str(a.min_margin) : "-";
        std::snprintf(buf, sizeof(buf), "%-34s %5llu %5llu %9llu %6llu %12s\n", id.c_str(),
                      static_cast<unsigned long long>(a.rows),
                      static_cast<unsigned long long>(a.hyp),
                      static_cast<unsigned long long>(a.held_at_hyp),
                      static_cast<unsigned long long>(a.exact), mm.c_str());
        out << buf;
    }

    bool any_flag = false;
    for (const CheckRecord& rec : r.records) {
        if (rec.status == "ok" && !rec.result.holds) {
            if (!any_flag) {
                out << "\nfailing rows:\n";
                any_flag = true;
            }
            const char* kindc = rec.result.advisory ? "advisory" : "hard";
            out << "  [" << (rec.result.hypothesis_satisfied ? kindc : "hyp-unmet") << "] "
                << rec.result.theorem_id << "  lhs=" << rec.result.lhs
                << " rhs=" << rec.result.rhs << "  spec: " << rec.spec << "\n";
        }
    }
    for (const CheckRecord& rec : r.records) {
        if (rec.status != "ok") {
            out << "  [" << rec.status << "] " << rec.spec << "  " << rec.error << "\n";
        }
    }
}

}  // namespace ffdist
