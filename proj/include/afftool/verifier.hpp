#pragma once

#include <string>
#include <vector>

#include "afftool/tables.hpp"

namespace afftool {

struct Violation {
    std::string kind;  // containment | converse | roundtrip | order_formula | cycle_formula | internal
    u64 class_index = 0;
    std::string class_invariant;
    std::string v;
    u64 order = 0;
    u64 cycle_count = 0;
    std::string line;     // catalog-pass violations
    std::string binding;  // catalog-pass violations
};

struct InformativeEntry {
    std::string line;
    std::string binding;
    u64 order = 0;
};

// Exhaustive sweep result for one (p, d) cell. violations empty iff the
// classification holds on the cell (and the catalog round-trips exactly).
struct VerificationReport {
    u32 p = 2, d = 0;
    std::string kind;  // "orders" | "cycles"
    u32 shard_index = 0, shard_count = 1;
    u64 classes_checked = 0;
    u64 elements_checked = 0;
    u64 non_examples = 0;  // swept elements below threshold / above 4 cycles
    std::vector<Violation> violations;
    std::vector<InformativeEntry> informative;  // p = 2 catalog rows below threshold
    std::vector<std::string> matched_lines;     // sorted, unique
    double wall_ms = 0;

    bool ok() const { return violations.empty(); }
};

VerificationReport verify_orders(u32 p, u32 d, u32 shard_index = 0, u32 shard_count = 1,
                                 u32 workers = 1);
VerificationReport verify_cycles(u32 p, u32 d, u32 shard_index = 0, u32 shard_count = 1,
                                 u32 workers = 1, u64 space_cap = kOrbitSpaceCap);

// Order-independent aggregation of shard reports (commutative merge); the
// result of merging a full shard partition equals the unsharded report.
VerificationReport merge_reports(std::vector<VerificationReport> parts);

std::string report_to_json(const VerificationReport& r, bool include_timing = true, int indent = 2);
VerificationReport report_from_json(const std::string& text);

// --- property/lemma suites ---

struct LemmaCheck {
    std::string name;
    u64 checks = 0;
    u64 failures = 0;
    std::string witness;  // first failing case
};

struct LemmaReport {
    u32 p = 2, d = 0;
    u64 samples = 0;
    u64 seed = 0;
    std::vector<LemmaCheck> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (c.failures) return false;
        return true;
    }
};

// Runs the order/cycle lemma suites on seeded random elements plus all
// class representatives with every translation in U. `inject_fault`
// deliberately corrupts the geometric-sum used by the order checks, as a
// sanity test that the harness can fail.
LemmaReport verify_lemmas(u32 p, u32 d, u32 samples, u64 seed, bool inject_fault = false);

std::string lemma_report_to_json(const LemmaReport& r, int indent = 2);

// Maximum element orders over the class representatives of GL_d(p) and its
// determinant-1 subgroup.
struct MeoResult {
    u64 meo_gl = 0;
    u64 meo_sl = 0;
};
MeoResult meo_scan(u32 p, u32 d);

struct GridCell {
    u32 p = 2, d = 1;
};
std::vector<GridCell> default_orders_grid();
std::vector<GridCell> default_cycles_grid();

}  // namespace afftool
