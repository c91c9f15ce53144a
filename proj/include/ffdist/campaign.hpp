#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ffdist/checks.hpp"
#include "ffdist/config.hpp"

namespace ffdist {

// One executed inequality check, flattened for reports.  `spec` is the
// instance line that reproduces the row (see CheckRunner::run); the remaining
// columns are extracted for triage.  status: "ok" (result populated),
// "budget" (check gave up within its work budget), "error" (invalid
// instance or unsupported combination; message in `error`).
struct CheckRecord {
    std::string spec;
    std::string check;  // instance kind, e.g. "cycle-count"
    long p = 0;
    int k = 0;
    int d = 0;
    long q = 0;
    std::string form;
    std::string set;  // primary point-set descriptor ("" for field-level checks)
    TheoremCheck result;
    std::string status = "ok";
    std::string error;
};

// Parses and executes instance lines of the form
//   check=<kind>; p=<prime>; k=<ext>; d=<dim>; form=<form spec>; ...
// Key set by kind (set descriptors may nest ';' inside parentheses):
//   functional-distance        form t A B
//   functional-distance-sums   form t f=count:max:seed g=count:max:seed
//   orthogonality              form
//   degree-embedding           form graph t A
//   distinct-embedding         form graph t A
//   path-count                 form labels A
//   tree-count                 form tree t E eps=a/b
//   tree-star                  form tree t E lam=a/b
//   cycle-count                form n t E
//   cycle-large                form n t E delta=a/b
//   cycle-distinct             form n t E delta=a/b
//   sphere-size                form t
//   sphere-corollary           form t
//   sphere-fourier             form t
//   two-edge                   form t A B C D
//   two-edge-sums              form t f=count:max:seed g=count:max:seed
//   gauss                      (p, k only)
//   weil-kloosterman           (p, k only)
//   weil-salie                 (p, k only)
//   quadratic-identity         form
// An instance may set budget=<steps> to replace the global work budget for
// that instance alone (sampled checks use the budget as their sample
// allowance; counting checks that cannot finish within it report "budget").
// Fields, spaces, and forms are cached across calls.
class CheckRunner {
  public:
    CheckRunner() = default;

    // Runs one instance; returns one record per emitted inequality row.
    // Throws ConfigParseError for malformed lines; run-time failures
    // (budget, unsupported combinations) come back as records.
    std::vector<CheckRecord> run(const std::string& spec, uint64_t budget, uint64_t seed);

  private:
    struct FormEntry {
        std::unique_ptr<FiniteField> F;
        std::unique_ptr<VectorSpace> V;
        std::unique_ptr<DistanceFn> fn;
    };
    const FiniteField& field_for(long p, int k);
    const FormEntry& form_for(long p, int k, int d, const std::string& form);

    std::map<std::string, std::unique_ptr<FiniteField>> fields_;
    std::map<std::string, FormEntry> forms_;
};

// Named instance suites.  "default" is the full verification campaign:
// every inequality family, with instances chosen so each family has rows
// whose size hypotheses are genuinely satisfied where the supported space
// sizes allow it.  "quick" is a small cross-section for smoke tests.
// Throws ConfigParseError for unknown names.
std::vector<std::string> suite_instances(const std::string& name);

// (p, k) with q = p^k; throws ConfigParseError unless q is an odd prime power
std::pair<long, int> factor_prime_power(long q);

struct CampaignResult {
    std::string suite;
    uint64_t budget = 0;
    uint64_t seed = 0;
    std::vector<CheckRecord> records;
};

// A row only counts against a statement when its size hypothesis was actually
// satisfied; failures are therefore split three ways.  `hard_failures` is the
// damning bucket: hypothesis met, non-advisory, conclusion false.
struct CampaignSummary {
    uint64_t rows = 0;
    uint64_t holds = 0;
    uint64_t hypothesis_rows = 0;    // hypothesis satisfied
    uint64_t hypothesis_holds = 0;   // ... and conclusion held
    uint64_t advisory_rows = 0;
    uint64_t hard_failures = 0;      // hyp met, non-advisory, conclusion false
    uint64_t advisory_failures = 0;  // hyp met, advisory, conclusion false
    uint64_t unmet_failures = 0;     // hyp not met, conclusion false
    uint64_t exact_rows = 0;
    uint64_t budget_rows = 0;
    uint64_t error_rows = 0;
    uint64_t work = 0;
};

// Config keys: suite (default "default"), budget (per check, default
// 400000000), seed (default 1), jobs (worker threads, default 1; reports are
// byte-identical at any job count), only (substring filter applied to the
// instance line), instances (path to a file of instance lines, one per line
// with # comments, replaces the suite).
//
// Grid mode: when `theorem` is set the instance list is generated directly
// from the remaining keys instead of a suite — q (or p and k), d, form,
// set (default full), set2 (default set), label (index or "all", default
// all), and per-family extras n, tree, graph, labels, eps, lam, delta.
// theorem=all expands to the families fully determined by (form, label,
// set).  Unknown keys are rejected.
//
// `progress`, when non-null, receives one line per record as the run
// advances.  Instance-level failures become "error" records; the run itself
// only throws for configuration problems.
CampaignResult run_campaign(const Config& cfg, std::ostream* progress = nullptr);

CampaignSummary summarize(const CampaignResult& r);

// Reports are deterministic: rerunning the same campaign writes identical
// bytes.  JSONL starts with a {"schema":"ffdist-report/1", ...} header line
// followed by one object per record; CSV has a fixed header row; the summary
// is a human-readable digest with a per-family table.
void write_jsonl(const CampaignResult& r, std::ostream& out);
void write_csv(const CampaignResult& r, std::ostream& out);
void write_summary(const CampaignResult& r, std::ostream& out);

}  // namespace ffdist
