#include <doctest.h>

#include <set>

#include "afftool/tables.hpp"

using namespace afftool;

namespace {

bool has_line(const std::vector<CatalogEntry>& entries, int table, int line) {
    for (const auto& e : entries)
        if (e.line == LineId{table, line}) return true;
    return false;
}

bool matched_line(const MatchResult& m, int table, int line) {
    for (const auto& h : m.matched)
        if (h.line == LineId{table, line}) return true;
    return false;
}

}  // namespace

TEST_CASE("line ids") {
    CHECK(line_to_string({3, 12}) == "T3.L12");
    auto id = parse_line_id("T3.L12");
    REQUIRE(id.has_value());
    CHECK(*id == LineId{3, 12});
    CHECK_FALSE(parse_line_id("T9.L1").has_value());
    CHECK_FALSE(parse_line_id("13").has_value());
}

TEST_CASE("catalog enumeration examples") {
    // (5, 1, orders): the full-order and half-order scalars plus the translation line
    auto entries = catalog(5, 1, TableKind::orders);
    std::set<u64> t2l1_is;
    for (const auto& e : entries)
        if (e.line == LineId{2, 1}) t2l1_is.insert(*e.binding.i);
    CHECK(t2l1_is == std::set<u64>{1, 2});  // i = 3 does not divide 4
    CHECK(has_line(entries, 2, 3));

    // (3, 4, orders) includes the tensor sporadic line
    CHECK(has_line(catalog(3, 4, TableKind::orders), 4, 2));

    // (2, 3, cycles)
    entries = catalog(2, 3, TableKind::cycles);
    CHECK(has_line(entries, 5, 1));
    std::set<u64> t5l4_is;
    for (const auto& e : entries)
        if (e.line == LineId{5, 4}) t5l4_is.insert(*e.binding.i);
    CHECK(t5l4_is == std::set<u64>{1, 3});
    CHECK(has_line(entries, 6, 2));
    CHECK(has_line(entries, 7, 3));
    CHECK(has_line(entries, 7, 4));
    CHECK(has_line(entries, 7, 5));
    CHECK(has_line(entries, 7, 10));
    CHECK(has_line(entries, 7, 11));
    CHECK_FALSE(has_line(entries, 6, 1));  // needs two Singer parts of dim >= 2
}

TEST_CASE("instantiation examples") {
    // t_{e_1} J_5 over F_2
    AffineMap g = instantiate(2, 5, {7, 8}, {});
    CHECK(affine_order(g).order == 8);
    CHECK(g.v == Vec{1, 0, 0, 0, 0});

    Binding b;
    b.i = 1;
    g = instantiate(2, 3, {2, 1}, b);
    CHECK(affine_order(g).order == 7);

    Binding b651;
    b651.dims = {2, 2, 3, 5};
    g = instantiate(2, 12, {3, 12}, b651);
    CHECK(affine_order(g).order == 651);
}

TEST_CASE("matching examples") {
    // s_4 over F_2 matches the Singer line with threshold met
    {
        MatchResult m = match(make_affine(singer(2, 4, 1), Vec(4, 0)), TableKind::orders);
        CHECK(matched_line(m, 2, 1));
        CHECK(m.threshold_met);
    }
    // the order-651 element in dimension 12 misses the threshold
    {
        Binding b;
        b.dims = {2, 2, 3, 5};
        AffineMap g = instantiate(2, 12, {3, 12}, b);
        MatchResult m = match(g, TableKind::orders);
        CHECK(matched_line(m, 3, 12));
        CHECK_FALSE(m.threshold_met);
    }
    // J_1 + s_2^3 = identity on 3 dims with translation: two lines at once
    {
        AffineMap g = make_affine(Matrix::identity(2, 3), Vec{1, 0, 0});
        MatchResult m = match(g, TableKind::orders);
        CHECK(matched_line(m, 4, 11));
        CHECK(matched_line(m, 2, 2));
        for (const auto& h : m.matched)
            if (h.line == LineId{2, 2}) CHECK(*h.binding.i == 3);
    }
}

TEST_CASE("predicted cycle columns") {
    Binding b;
    b.i = 3;
    CHECK(predicted_cycles(2, 4, {5, 1}, b) == std::vector<u64>{1, 5, 5, 5});
    Binding b7;
    b7.a = 1;
    b7.a1 = 2;
    b7.a2 = 3;
    CHECK(predicted_cycles(2, 6, {6, 7}, b7) == std::vector<u64>{2, 6, 14, 42});
    CHECK(predicted_cycles(3, 2, {7, 1}, {}) == std::vector<u64>{3, 3, 3});
}

TEST_CASE("order round trip on small cells") {
    for (auto [p, d] : {std::pair<u32, u32>{2, 4}, {2, 5}, {3, 3}, {3, 4}, {5, 2}, {7, 2}}) {
        CatalogIndex idx = CatalogIndex::build(p, d, TableKind::orders);
        for (const auto& e : idx.entries) {
            AffineMap g = instantiate(p, d, e.line, e.binding);
            AffineOrder ao = affine_order(g);
            CHECK(ao.order == e.order);
            CHECK(ao.profile.delta == e.delta);
            Shape sh = shape_of(class_invariant(g.h));
            MatchResult m = match_shape(idx, sh, e.delta, e.order, nullptr);
            bool found = false;
            for (const auto& hit : m.matched)
                if (hit.line == e.line) found = true;
            CHECK_MESSAGE(found, line_to_string(e.line), " ", binding_to_string(e.binding));
        }
    }
}

TEST_CASE("cycle round trip on small cells") {
    for (auto [p, d] : {std::pair<u32, u32>{2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {5, 2}}) {
        CatalogIndex idx = CatalogIndex::build(p, d, TableKind::cycles);
        for (const auto& e : idx.entries) {
            AffineMap g = instantiate(p, d, e.line, e.binding);
            AffineOrder ao = affine_order(g);
            CHECK(ao.order == e.order);
            CycleStructure cs = cycle_structure(g);
            CHECK(cs.lengths == e.cycles);
            Shape sh = shape_of(class_invariant(g.h));
            MatchResult m = match_shape(idx, sh, e.delta, e.order, &cs.lengths);
            bool found = false;
            for (const auto& hit : m.matched)
                if (hit.line == e.line) found = true;
            CHECK_MESSAGE(found, line_to_string(e.line), " ", binding_to_string(e.binding));
            CHECK(m.cycle_match);
        }
    }
}

TEST_CASE("odd characteristic catalog orders meet the threshold") {
    for (auto [p, d] : {std::pair<u32, u32>{3, 3}, {3, 4}, {3, 5}, {5, 2}, {5, 3}, {7, 2}, {13, 2}}) {
        u64 space = ipow(p, d);
        for (const auto& e : catalog(p, d, TableKind::orders)) {
            CHECK_MESSAGE(4 * e.order >= space, line_to_string(e.line), " at p=", p, " d=", d);
        }
    }
}

TEST_CASE("binding text form") {
    Binding b;
    b.dims = {2, 2, 3, 5};
    CHECK(binding_to_string(b) == "dims=2,2,3,5");
    Binding b2;
    b2.i = 3;
    CHECK(binding_to_string(b2) == "i=3");
    Binding b3;
    b3.sub_line = LineId{3, 8};
    b3.sub_dims = {2, 3};
    CHECK(binding_to_string(b3) == "h=T3.L8;h.dims=2,3");
}
