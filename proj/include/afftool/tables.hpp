#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afftool/affine.hpp"

namespace afftool {

// Classification line identifier, e.g. {3, 12} prints as "T3.L12".
// Tables 2-4 classify large orders; tables 5-7 classify <= 4 cycles.
struct LineId {
    int table = 0;
    int line = 0;
    bool operator==(const LineId& o) const { return table == o.table && line == o.line; }
    bool operator<(const LineId& o) const {
        return table != o.table ? table < o.table : line < o.line;
    }
};

std::string line_to_string(const LineId& id);
std::optional<LineId> parse_line_id(const std::string& s);

// Free parameters of a table line. dims carries the d_1..d_t column in the
// line's own layout (for the J_1 + sum line the leading 1 is included; for
// the s_{d_1}^3 line dims[0] is the even d_1).
struct Binding {
    std::optional<u64> i;
    std::vector<u32> dims;
    std::optional<u32> a, a1, a2;
    std::optional<LineId> sub_line;  // lines whose h' delegates to another line
    std::vector<u32> sub_dims;
    std::optional<u32> variant;

    bool operator==(const Binding& o) const;
};

std::string binding_to_string(const Binding& b);

enum class TableKind { orders, cycles };

struct CatalogEntry {
    LineId line;
    Binding binding;
    u64 order = 0;             // the |g| column, exact
    int delta = 0;             // 0: |g| = |h|;  1: |g| = p|h|
    std::vector<u64> cycles;   // cycle-length column (tables 5-7), ascending
};

// Every line applicable at (p, d) with every admissible parameter binding,
// in deterministic order. pre: p^d within the order cap (orders) or the
// orbit cap (cycles).
std::vector<CatalogEntry> catalog(u32 p, u32 d, TableKind kind);

// Concrete representative for a catalog line: canonical constructors plus
// the listed translation (e_1 for order-doubling lines, the table's t_{e_i}
// otherwise, zero when none is listed).
AffineMap instantiate(u32 p, u32 d, const LineId& line, const Binding& b);

std::vector<u64> predicted_cycles(u32 p, u32 d, const LineId& line, const Binding& b);

u64 order_formula(u32 p, u32 d, const LineId& line, const Binding& b);
int line_delta(const LineId& line);

struct MatchHit {
    LineId line;
    Binding binding;
};

struct MatchResult {
    std::vector<MatchHit> matched;
    bool threshold_met = false;  // 4|g| >= p^d in exact integers
    bool cycle_match = false;    // cycles kind: some line's cycle column equals the actual one
};

// Precomputed per-(p, d) catalog for repeated matching.
struct CatalogIndex {
    u32 p = 2, d = 0;
    TableKind kind = TableKind::orders;
    std::vector<CatalogEntry> entries;

    static CatalogIndex build(u32 p, u32 d, TableKind kind);
};

// Conjugacy-invariant shape of a linear part, with irreducible factors
// reduced to (degree, element order, partition); matching never privileges
// any particular Singer representative.
struct ShapeEntry {
    u32 deg = 0;
    u64 ord = 0;
    std::vector<u32> parts;  // weakly decreasing
};

struct Shape {
    u32 p = 2, d = 0;
    std::vector<u32> uni;           // (x-1) partition, weakly decreasing
    std::vector<ShapeEntry> ent;    // remaining factors, sorted by (deg, ord)
};

Shape shape_of(const ClassInvariant& inv);

bool shape_matches(const LineId& line, const Binding& b, const Shape& sh, u32 p, u32 d);

MatchResult match_shape(const CatalogIndex& idx, const Shape& sh, int delta, u64 order,
                        const std::vector<u64>* actual_cycles);

// One-shot matcher: computes invariant, order and (for cycles) the orbit
// structure of g, then consults the tables.
MatchResult match(const AffineMap& g, TableKind kind, u64 space_cap = kOrbitSpaceCap);

}  // namespace afftool
