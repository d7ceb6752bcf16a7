#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqflats/incidence.hpp"
#include "fqflats/json_io.hpp"
#include "fqflats/spectral.hpp"

namespace fqflats {

struct GridEntry {
    int q = 0;
    int d = 0;
    int k = 0;
    int h = 0;
};

/// The stock parameter grid: q in {3, 5, 9} crossed with
/// (d,k,h) in {(2,0,1), (3,0,1), (3,0,2), (4,0,3), (4,1,3)},
/// with q = 9 restricted to d <= 3.
std::vector<GridEntry> default_grid();

/// Parses "q,d,k,h[;q,d,k,h...]" into grid entries. Throws ParseError.
std::vector<GridEntry> parse_grid(const std::string& text);

/// Reads FQFLATS_BUDGET if set: up to four comma-separated integers
/// overriding max_part, max_gram_entries, max_eigen_dim, max_pair_scan_part
/// in that order (missing fields keep their defaults). Throws ParseError.
SizeBudget budget_from_env();
SizeBudget parse_budget(const std::string& text);

/// Sample counts per grid entry for the randomized checks.
struct SampleCounts {
    long long mixing = 1000;
    long long deviation = 200;
    long long rich_sets = 50;
    long long relation_fuzz = 500;
};

/// Derives all four counts from a single knob n: mixing audits get n,
/// deviation checks n/5, rich sets n/20, relation fuzz n/2 (all >= 1
/// whenever n >= 1).
SampleCounts scaled_samples(long long n);

struct VerifyOptions {
    std::vector<GridEntry> grid = default_grid();
    std::uint64_t seed = 42;
    SampleCounts samples;
    double tol = kDefaultEigenTol;
    SizeBudget budget;
    bool inject_fault = false; // corrupts one edge of the first graph; the
                               // structure check must then fail
};

struct VerifySummary {
    long long pass = 0;
    long long fail = 0;
    long long skipped = 0;
    long long not_applicable = 0;

    bool ok() const { return fail == 0; }
};

/// Runs every check over the grid and returns a deterministic report: the
/// document contains no timestamps or timings, so two runs with the same
/// options produce identical bytes. Per entry the checks are
/// count-formulas, graph-structure, flat-relations, gram-classes,
/// spectral-gap, mixing, deviation-bound, and richness; each record carries
/// status pass/fail/skip/not-applicable.
Json run_verify(const VerifyOptions& opts, VerifySummary& summary);

} // namespace fqflats
