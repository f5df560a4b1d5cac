#include <doctest.h>

#include "afftool/verifier.hpp"

using namespace afftool;

TEST_CASE("order sweep holds on small cells") {
    for (auto [p, d] : {std::pair<u32, u32>{2, 5}, {3, 3}, {5, 2}}) {
        VerificationReport r = verify_orders(p, d);
        CHECK_MESSAGE(r.ok(), "p=", p, " d=", d, " violations=", r.violations.size());
        CHECK(r.classes_checked > 0);
        CHECK(r.elements_checked >= r.classes_checked);
    }
}

TEST_CASE("cycle sweep holds and reports the matched lines") {
    VerificationReport r = verify_cycles(2, 4);
    CHECK(r.ok());
    for (const char* id : {"T5.L1", "T6.L5", "T7.L6", "T7.L7", "T7.L13", "T7.L14"})
        CHECK_MESSAGE(std::count(r.matched_lines.begin(), r.matched_lines.end(), id) == 1, id);

    r = verify_cycles(3, 2);
    CHECK(r.ok());
    for (const char* id : {"T5.L1", "T7.L1", "T7.L2"})
        CHECK_MESSAGE(std::count(r.matched_lines.begin(), r.matched_lines.end(), id) == 1, id);

    CHECK(verify_cycles(5, 2).ok());
}

TEST_CASE("sharded runs aggregate to the unsharded report") {
    VerificationReport full = verify_orders(3, 3, 0, 1, 1);
    std::string full_json = report_to_json(full, false);

    for (u32 shards : {2u, 3u}) {
        std::vector<VerificationReport> parts;
        for (u32 i = 0; i < shards; ++i) parts.push_back(verify_orders(3, 3, i, shards, 2));
        VerificationReport merged = merge_reports(parts);
        CHECK(report_to_json(merged, false) == full_json);
    }
    // worker count must not affect the report
    CHECK(report_to_json(verify_orders(3, 3, 0, 1, 4), false) == full_json);

    // round trip through the JSON form
    VerificationReport back = report_from_json(report_to_json(full, true));
    CHECK(report_to_json(back, false) == full_json);
}

TEST_CASE("verifier restriction to U loses no violations") {
    // brute sweep over every translation in V, compared with the U-restricted
    // verifier on the same cell
    for (auto [p, d] : {std::pair<u32, u32>{2, 3}, {2, 4}, {3, 2}}) {
        u64 space = ipow(p, d);
        CatalogIndex idx = CatalogIndex::build(p, d, TableKind::orders);
        u64 full_violations = 0;
        for (const auto& inv : enumerate_class_invariants(p, d)) {
            Matrix h = rep_matrix(inv);
            Shape sh = shape_of(inv);
            u64 k = order_from_invariant(inv);
            Matrix hk = geometric_sum(h, k);
            for (u64 vi = 0; vi < space; ++vi) {
                Vec v(d);
                u64 t = vi;
                for (u32 c = 0; c < d; ++c) {
                    v[c] = u32(t % p);
                    t /= p;
                }
                int delta = vec_is_zero(vec_mat(v, hk)) ? 0 : 1;
                u64 order = delta ? u64(p) * k : k;
                if (4 * order >= space &&
                    match_shape(idx, sh, delta, order, nullptr).matched.empty())
                    ++full_violations;
            }
        }
        VerificationReport r = verify_orders(p, d);
        CHECK(full_violations == 0);
        CHECK(r.violations.empty());
    }
}

TEST_CASE("lemma suite passes and the harness can fail") {
    LemmaReport r = verify_lemmas(2, 4, 40, 42);
    CHECK(r.ok());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.failures == 0, c.name, ": ", c.witness);

    r = verify_lemmas(3, 3, 40, 42);
    CHECK(r.ok());

    // fault injection: a corrupted geometric sum must trip the order checks
    LemmaReport bad = verify_lemmas(2, 4, 10, 42, true);
    CHECK_FALSE(bad.ok());
    bool order_check_failed = false;
    for (const auto& c : bad.checks)
        if (c.name == "order_doubling_value" && c.failures > 0) order_check_failed = true;
    CHECK(order_check_failed);
}

TEST_CASE("maximum element orders") {
    auto r = meo_scan(2, 4);
    CHECK(r.meo_gl == 15);
    CHECK(r.meo_sl == 15);
    // at d = 2 and odd p the scalar -1 times a unipotent block has
    // determinant 1 and order 2p, which beats (p^2-1)/(p-1) = p+1; confirmed
    // against a brute-force sweep of the full group
    r = meo_scan(3, 2);
    CHECK(r.meo_gl == 8);
    CHECK(r.meo_sl == 6);
    r = meo_scan(5, 2);
    CHECK(r.meo_gl == 24);
    CHECK(r.meo_sl == 10);
    r = meo_scan(3, 3);
    CHECK(r.meo_gl == 26);
    CHECK(r.meo_sl == 13);
    r = meo_scan(3, 4);
    CHECK(r.meo_gl == 80);
    CHECK(r.meo_sl == 40);
}

TEST_CASE("sweeps stay clean beyond the default grid") {
    CHECK(verify_orders(5, 4, 0, 1, 2).ok());
    CHECK(verify_orders(17, 2).ok());
    CHECK(verify_cycles(2, 7, 0, 1, 2).ok());
    CHECK(verify_cycles(5, 3).ok());
}

TEST_CASE("default grids") {
    auto og = default_orders_grid();
    CHECK(og.size() == 24);
    CHECK(og.front().p == 2);
    auto cg = default_cycles_grid();
    CHECK(cg.size() == 12);
}
