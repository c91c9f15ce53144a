// command-line front end: field facts, sphere tables, one-off counts, the
// verification campaign, and replay of emitted report rows.
//
// exit codes: 0 clean (budget-capped rows are logged, not fatal),
// 1 usage or configuration error, 2 at least one hard check failure
// (hypothesis satisfied, non-advisory, conclusion false), 3 instance lines
// that could not be run at all.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffdist/campaign.hpp"
#include "ffdist/checks.hpp"
#include "ffdist/config.hpp"
#include "ffdist/counts.hpp"
#include "ffdist/error.hpp"
#include "ffdist/field.hpp"
#include "ffdist/forms.hpp"
#include "ffdist/graphs.hpp"
#include "ffdist/pointset.hpp"
#include "ffdist/vectorspace.hpp"

namespace {

using namespace ffdist;

struct SpaceOpts {
    long q = 0;
    long p = 0;
    int k = 1;
    int d = 2;
    std::string form;

    void add_to(CLI::App* cmd, bool with_space) {
        cmd->add_option("--q", q, "field size as a prime power (alternative to --p/--k)");
        cmd->add_option("--p", p, "field characteristic, an odd prime");
        cmd->add_option("--k", k, "extension degree over the prime field")->capture_default_str();
        if (with_space) {
            cmd->add_option("--d", d, "vector space dimension")->capture_default_str();
            cmd->add_option("--form", form,
                            "distance form, e.g. quadratic:diag=1,1 or bilinear:dot "
                            "(default: quadratic with an all-ones diagonal)");
        }
    }

    std::pair<long, int> field_params() const {
        if (q != 0) {
            if (p != 0) throw ConfigParseError("give either --q or --p (and --k), not both");
            return factor_prime_power(q);
        }
        if (p == 0) throw ConfigParseError("a field is required: --q or --p (and --k)");
        return {p, k};
    }

    std::string form_or_default() const {
        if (!form.empty()) return form;
        std::string f = "quadratic:diag=1";
        for (int i = 1; i < d; ++i) f += ",1";
        return f;
    }
};

struct Space {
    std::unique_ptr<FiniteField> F;
    std::unique_ptr<VectorSpace> V;
    std::unique_ptr<DistanceFn> fn;
};

Space make_space(const SpaceOpts& o) {
    auto [p, k] = o.field_params();
    Space s;
    s.F = std::make_unique<FiniteField>(p, k);
    s.V = std::make_unique<VectorSpace>(*s.F, o.d);
    s.fn = std::make_unique<DistanceFn>(parse_form(*s.V, o.form_or_default()));
    return s;
}

int run_field_info(const SpaceOpts& o) {
    auto [p, k] = o.field_params();
    FiniteField F(p, k);
    std::printf("q = %ld  (p = %ld, k = %d)\n", F.q(), F.p(), F.k());
    std::printf("modulus: %s\n", F.modulus_str().c_str());
    std::printf("least non-square: index %u\n", F.least_nonsquare());
    const uint32_t m1 = F.neg(F.from_integer(1));
    std::printf("eta(-1) = %+d  (-1 is a %s)\n", F.eta(m1),
                F.eta(m1) > 0 ? "square" : "non-square");
    std::printf("nonzero squares: %ld of %ld\n", (F.q() - 1) / 2, F.q() - 1);
    TheoremCheck g = check_gauss_modulus(F);
    std::printf("|G(chi,eta)|^2 = %s (expected q = %s, %s)\n", g.lhs.c_str(), g.rhs.c_str(),
                g.holds ? "exact" : "MISMATCH");
    return g.holds ? 0 : 2;
}

int run_sphere_table(const SpaceOpts& o) {
    Space s = make_space(o);
    if (s.fn->kind() != FormKind::quadratic)
        throw ConfigParseError("sphere-table needs a quadratic form, got: " + s.fn->spec());
    const long q = s.F->q();
    const int d = o.d;
    const double expected = std::pow(static_cast<double>(q), d - 1);
    const double bound = std::pow(static_cast<double>(q), d / 2.0);
    std::printf("spheres of %s on F_%ld^%d\n", s.fn->spec().c_str(), q, d);
    std::printf("%6s %12s %12s %12s %12s\n", "t", "|S_t|", "q^(d-1)", "deviation", "q^(d/2)");
    uint64_t total = 0;
    bool ok = true;
    for (long t = 0; t < q; ++t) {
        const std::size_t sz = s.fn->sphere(static_cast<uint32_t>(t)).points.size();
        total += sz;
        const double dev = std::abs(static_cast<double>(sz) - expected);
        if (t == 0) {
            std::printf("%6ld %12zu %12.0f %12.0f %12s\n", t, sz, expected, dev, "-");
            continue;
        }
        ok = ok && dev <= bound;
        std::printf("%6ld %12zu %12.0f %12.0f %12.2f%s\n", t, sz, expected, dev, bound,
                    dev <= bound ? "" : "  VIOLATION");
    }
    std::printf("total %12llu = q^d = %.0f\n", static_cast<unsigned long long>(total),
                std::pow(static_cast<double>(q), d));
    if (d == 2) std::printf("d = 2: every t != 0 sphere has size q-1 or q+1\n");
    return ok && total == static_cast<uint64_t>(std::llround(std::pow(static_cast<double>(q), d)))
               ? 0
               : 2;
}

int run_count(const SpaceOpts& o, const std::string& shape, const std::string& set, long label,
              bool distinct, const std::string& engine, uint64_t budget) {
    Space s = make_space(o);
    if (label < 1 || label >= s.F->q()) throw ConfigParseError("label must be in [1, q)");
    const uint32_t t = static_cast<uint32_t>(label);
    PointSet A = parse_pointset(*s.V, s.fn.get(), set);
    DistanceGraph g = make_graph(shape, t);

    CountReport rep;
    if (!distinct && shape.rfind("cycle:", 0) == 0) {
        rep = count_cycles(*s.fn, g.vertices(), t, A, budget, engine.empty() ? "auto" : engine);
    } else {
        if (!engine.empty())
            throw ConfigParseError("--engine applies only to non-distinct cycle counts");
        rep = count_graph(*s.fn, g, A, distinct, budget);
    }
    std::printf("graph = %s (%d vertices, %zu edges)%s\n", shape.c_str(), g.vertices(),
                g.edges().size(), distinct ? ", pairwise-distinct images" : "");
    std::printf("set = %s  |A| = %llu   label = %ld   form = %s\n", A.descriptor().c_str(),
                static_cast<unsigned long long>(A.size()), label, s.fn->spec().c_str());
    std::printf("count = %s (exact)\n", rep.raw.get_str().c_str());
    std::printf("normalized = %s (count * q^%ld / |A|^%d, exact)\n",
                rep.normalized.get_str().c_str(), rep.q_power, g.vertices());
    std::printf("engine = %s   work = %llu\n", rep.engine.c_str(),
                static_cast<unsigned long long>(rep.work));
    return 0;
}

void print_records(const std::vector<CheckRecord>& recs) {
    for (const CheckRecord& r : recs) {
        if (r.status != "ok") {
            std::printf("[%s] %s: %s\n", r.status.c_str(), r.spec.c_str(), r.error.c_str());
            continue;
        }
        const TheoremCheck& c = r.result;
        std::printf("[%s] %s  holds=%s hyp=%s%s%s  lhs=%s rhs=%s margin=%.6g\n",
                    c.holds ? "ok" : "FAIL", c.theorem_id.c_str(), c.holds ? "yes" : "no",
                    c.hypothesis_satisfied ? "yes" : "no", c.exact ? " exact" : "",
                    c.advisory ? " advisory" : "", c.lhs.c_str(), c.rhs.c_str(), c.margin);
        if (!c.note.empty()) std::printf("      note: %s\n", c.note.c_str());
    }
}

int exit_code_for(const CampaignSummary& s) {
    if (s.hard_failures > 0) return 2;
    if (s.error_rows > 0) return 3;
    return 0;
}

int run_verify(Config cfg, const std::string& out_dir, const std::string& formats,
               bool progress) {
    // surface bad grid forms as configuration errors instead of error records
    if (cfg.has("form") && cfg.has("d")) {
        SpaceOpts probe;
        probe.q = cfg.get_long("q", 0);
        probe.p = cfg.get_long("p", 0);
        probe.k = static_cast<int>(cfg.get_long("k", 1));
        probe.d = static_cast<int>(cfg.get_long("d", 2));
        probe.form = cfg.get("form");
        if (probe.q != 0 || probe.p != 0) {
            probe.field_params();  // field errors surface as themselves
            try {
                make_space(probe);
            } catch (const Error& e) {
                throw ConfigParseError("form " + probe.form + ": " + e.what());
            }
        }
    }

    CampaignResult res = run_campaign(cfg, progress ? &std::cerr : nullptr);
    CampaignSummary sum = summarize(res);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        auto want = [&](const char* f) { return formats.find(f) != std::string::npos; };
        auto open = [&](const std::string& name) {
            std::ofstream out(out_dir + "/" + name, std::ios::binary);
            if (!out) throw IoError("cannot write " + out_dir + "/" + name);
            return out;
        };
        if (want("jsonl")) {
            auto out = open("report.jsonl");
            write_jsonl(res, out);
        }
        if (want("csv")) {
            auto out = open("report.csv");
            write_csv(res, out);
        }
        if (want("summary")) {
            auto out = open("summary.txt");
            write_summary(res, out);
        }
    }
    write_summary(res, std::cout);
    return exit_code_for(sum);
}

int run_replay(const std::string& spec, uint64_t budget, uint64_t seed) {
    CheckRunner runner;
    CampaignResult res;
    res.suite = "replay";
    res.budget = budget;
    res.seed = seed;
    res.records = runner.run(spec, budget, seed);
    print_records(res.records);
    return exit_code_for(summarize(res));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance functions over finite fields: tables, counts, and the "
                 "inequality verification campaign"};
    app.require_subcommand(1);

    SpaceOpts fi_opts;
    CLI::App* fi = app.add_subcommand("field-info", "print GF(p^k) facts");
    fi_opts.add_to(fi, false);

    SpaceOpts sp_opts;
    CLI::App* sp = app.add_subcommand(
        "sphere-table", "per-radius sphere sizes of a quadratic form, with deviation bounds");
    sp_opts.add_to(sp, true);

    SpaceOpts ct_opts;
    std::string ct_graph = "path:1";
    std::string ct_set = "full";
    std::string ct_engine;
    long ct_label = 1;
    bool ct_distinct = false;
    uint64_t ct_budget = 0;
    CLI::App* ct = app.add_subcommand("count", "count labeled-distance graph embeddings");
    ct_opts.add_to(ct, true);
    ct->add_option("--graph", ct_graph, "shape: path:k, star:r, cycle:n, matching:m, complete:n")
        ->capture_default_str();
    ct->add_option("--set", ct_set, "point-set descriptor (full, random:count:seed, sphere:t, ...)")
        ->capture_default_str();
    ct->add_option("--label", ct_label, "edge label, a nonzero field index")->capture_default_str();
    ct->add_flag("--distinct", ct_distinct, "require pairwise-distinct vertex images");
    ct->add_option("--engine", ct_engine, "cycle engine: auto, walk, spectral");
    ct->add_option("--budget", ct_budget, "work cap (0 = unlimited)");

    std::string vf_config, vf_out, vf_formats = "jsonl,csv,summary";
    bool vf_progress = false;
    std::vector<std::string> vf_overrides;
    std::vector<std::pair<std::string, std::string>> vf_flags;
    CLI::App* vf = app.add_subcommand("verify", "run a campaign of theorem checks");
    vf->add_option("--config", vf_config, "key = value config file");
    vf->add_option("--out", vf_out, "directory for report files");
    vf->add_option("--format", vf_formats, "comma list from jsonl,csv,summary")
        ->capture_default_str();
    vf->add_flag("--progress", vf_progress, "stream per-check progress to stderr");
    vf->add_option("overrides", vf_overrides, "key=value pairs applied over the config file");
    // dedicated spellings for the common keys; equivalent to the overrides
    const std::vector<std::string> vf_keys = {
        "suite", "budget", "seed",   "jobs", "only", "instances", "theorem", "q",
        "p",     "k",      "d",      "form", "set",  "set2",      "label",   "n",
        "graph", "tree",   "labels", "eps",  "lam",  "delta"};
    vf_flags.reserve(vf_keys.size());
    for (const std::string& key : vf_keys) {
        vf_flags.emplace_back(key, "");
        vf->add_option("--" + key, vf_flags.back().second, "");
    }

    std::string rp_spec;
    uint64_t rp_budget = 400000000, rp_seed = 1;
    CLI::App* rp = app.add_subcommand(
        "replay", "re-run one instance line from a report's spec field");
    rp->add_option("spec", rp_spec, "instance line, e.g. \"check=gauss; p=5; k=1\"")->required();
    rp->add_option("--budget", rp_budget, "work budget per check")->capture_default_str();
    rp->add_option("--seed", rp_seed, "sampling seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fi->parsed()) return run_field_info(fi_opts);
        if (sp->parsed()) return run_sphere_table(sp_opts);
        if (ct->parsed())
            return run_count(ct_opts, ct_graph, ct_set, ct_label, ct_distinct, ct_engine,
                             ct_budget);
        if (vf->parsed()) {
            Config cfg;
            if (!vf_config.empty()) cfg = Config::from_file(vf_config);
            for (const auto& [key, val] : vf_flags)
                if (!val.empty()) cfg.set(key, val);
            for (const std::string& pair : vf_overrides) cfg.set_pair(pair);
            return run_verify(std::move(cfg), vf_out, vf_formats, vf_progress);
        }
        if (rp->parsed()) return run_replay(rp_spec, rp_budget, rp_seed);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
